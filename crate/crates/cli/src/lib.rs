//! Command-line front end: every decision procedure behind one binary with
//! a strict exit-code contract.
//!
//! Exit codes: 0 = affirmative verdict (or a successfully answered query),
//! 1 = negative mathematical verdict, 2 = input or usage error.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use plumblink::{
    analytic_check, brieskorn_graph, classify_topology, end_curve_multiplicities, expand_arrows,
    fiber_euler_characteristic, fundamental_cycle, h1_invariants, homology_obstruction_check,
    milnor_number, parse_plumbing, parse_splice, principal_check, semigroup_obstruction,
    semigroup_report, smoothness_obstruction, splice_from_resolution, ubiquitous_link,
    ObstructionOutcome, PlumbingGraph, PrincipalStatus, SmoothnessOutcome, SpliceDiagram,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "plumblink", version, about = "Decision procedures for links of surface singularities presented by plumbing graphs", disable_help_subcommand = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArg {
    /// Input file, or `-` for standard input.
    input: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide analyticity (negative definiteness) or principality of a
    /// plumbed multilink.
    Check {
        #[command(flatten)]
        input: InputArg,
        /// Decide principality (positive integral monodromical solution)
        /// instead of plain analyticity.
        #[arg(long)]
        principal: bool,
    },
    /// Solve the monodromical system exactly over the rationals.
    Solve {
        #[command(flatten)]
        input: InputArg,
    },
    /// Replace arrows by strings so the extended cycle solves the
    /// arrowless system; prints the expanded graph.
    Expand {
        #[command(flatten)]
        input: InputArg,
        /// Write the expanded graph to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fiber Euler characteristic of a principal multilink (plumbing
    /// file), or of a multilink on a splice diagram.
    Chi {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated arrow names forming the multilink (splice
        /// input only; default: all non-decoration arrows).
        #[arg(long, value_delimiter = ',')]
        multilink: Vec<String>,
    },
    /// First homology of the plumbed manifold; with arrows, also decides
    /// whether the multilink class vanishes (exit 1 when it does not).
    Homology {
        #[command(flatten)]
        input: InputArg,
    },
    /// Artin fundamental cycle (Laufer's algorithm).
    Cycle {
        #[command(flatten)]
        input: InputArg,
    },
    /// Classify the singularity topology: rational, minimally-elliptic,
    /// or other.
    Classify {
        #[command(flatten)]
        input: InputArg,
    },
    /// Condense a resolution tree into its splice diagram.
    Splice {
        #[command(flatten)]
        input: InputArg,
        /// Write the splice diagram to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linking value of two components/vertices of a splice diagram.
    Linking {
        #[command(flatten)]
        input: InputArg,
        /// First endpoint: vertex id, arrow name, or knot mark.
        a: String,
        /// Second endpoint: arrow name or knot mark.
        b: String,
    },
    /// Numerical semigroup gaps (--generators), or the semigroup
    /// condition plus edge-determinant positivity of a splice diagram.
    Semigroup {
        /// Comma-separated positive generators.
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        generators: Vec<u64>,
        /// Splice diagram to test for the semigroup condition.
        input: Option<String>,
    },
    /// Obstruction certificates: semigroup/Milnor-number bound on a splice
    /// diagram, or the multiplicity-1 smoothness test on a plumbing graph.
    Obstruct {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated names of the components assumed analytically
        /// realized.
        #[arg(long, value_delimiter = ',', required = true)]
        realized: Vec<String>,
        /// Name of the component whose realization is questioned.
        #[arg(long, required = true)]
        target: String,
    },
    /// Star-shaped plumbing graph of the link of x^p + y^q + z^r = 0.
    Brieskorn {
        p: u64,
        q: u64,
        r: u64,
        /// Write the graph to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit Graphviz DOT instead of the plumbing file format.
        #[arg(long)]
        dot: bool,
    },
    /// Attach a multilink that is principal in every analytic structure.
    Ubiquitous {
        #[command(flatten)]
        input: InputArg,
        /// Write the decorated graph to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-leaf least multiplicities passing the homology test (order of
    /// the transverse class in the cokernel of the intersection matrix).
    Endcurves {
        #[command(flatten)]
        input: InputArg,
    },
    /// Run the default check on every .plumb/.splice file in a directory.
    Batch {
        /// Directory of input files.
        dir: PathBuf,
        /// Number of worker threads.
        #[arg(long, default_value = "1")]
        jobs: usize,
    },
}

/// Entry point shared by the binary and the tests; never panics on
/// malformed input.
pub fn run<O: Write, E: Write>(argv: &[&str], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = write!(if code == EXIT_OK { &mut *out as &mut dyn Write } else { err }, "{e}");
            return code;
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    match dispatch(cli.command, format, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn dispatch<O: Write>(cmd: Command, format: Format, out: &mut O) -> Result<i32, String> {
    match cmd {
        Command::Check { input, principal } => {
            let g = load_plumbing(&input.input)?;
            if principal {
                cmd_check_principal(&g, format, out)
            } else {
                let ok = analytic_check(&g).map_err(|e| e.to_string())?;
                emit(format, out, json!({"analytic": ok}), &format!(
                    "analytic: {}",
                    if ok { "yes" } else { "no" }
                ));
                Ok(verdict(ok))
            }
        }
        Command::Solve { input } => {
            let g = load_plumbing(&input.input)?;
            let sys = plumblink::monodromical_system(&g);
            let neg_b: Vec<BigInt> = sys.b.iter().map(|x| -x).collect();
            match sys.matrix.solve_unique(&neg_b) {
                Ok(x) => {
                    let map: BTreeMap<String, String> = g
                        .vertices()
                        .iter()
                        .zip(&x)
                        .map(|(v, xi)| (v.id.clone(), xi.to_string()))
                        .collect();
                    let text = map
                        .iter()
                        .map(|(k, v)| format!("l[{k}] = {v}"))
                        .collect::<Vec<_>>()
                        .join("\n");
                    emit(format, out, json!({"solution": map}), &text);
                    Ok(EXIT_OK)
                }
                Err(_) => {
                    emit(
                        format,
                        out,
                        json!({"solution": serde_json::Value::Null,
                               "reason": "intersection matrix is singular"}),
                        "no unique solution: intersection matrix is singular",
                    );
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Expand { input, out: outfile } => {
            let g = load_plumbing(&input.input)?;
            let verdict = principal_check(&g).map_err(|e| e.to_string())?;
            let Some(solution) = &verdict.solution else {
                emit(
                    format,
                    out,
                    json!({"status": verdict.status.as_str(), "reason": verdict.reason}),
                    &format!("not expandable: {}", verdict.reason),
                );
                return Ok(EXIT_NEGATIVE);
            };
            let (expanded, lp) = expand_arrows(&g, solution).map_err(|e| e.to_string())?;
            let text = expanded.serialize();
            if let Some(path) = outfile {
                std::fs::write(&path, &text).map_err(|e| e.to_string())?;
            }
            let map: BTreeMap<String, String> = lp
                .coefficients
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            emit(
                format,
                out,
                json!({"graph": expanded.to_json(), "cycle": map}),
                &text,
            );
            Ok(EXIT_OK)
        }
        Command::Chi { input, multilink } => {
            let text = read_input(&input.input)?;
            if looks_like_splice(&text) {
                let d = parse_splice(&text).map_err(|e| e.to_string())?;
                let names = if multilink.is_empty() {
                    d.default_multilink()
                } else {
                    multilink
                };
                let (mults, chi) = d.chi_for_multilink(&names).map_err(|e| e.to_string())?;
                let map: BTreeMap<String, String> =
                    mults.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
                emit(
                    format,
                    out,
                    json!({"chi": chi.to_string(), "multiplicities": map}),
                    &format!("chi = {chi}"),
                );
                return Ok(EXIT_OK);
            }
            let g = parse_plumbing(&text).map_err(|e| e.to_string())?;
            match fiber_euler_characteristic(&g) {
                Ok(chi) => {
                    let mu = milnor_number(&g, &chi).ok();
                    let mut text_out = format!("chi = {chi}");
                    if let Some(mu) = &mu {
                        text_out.push_str(&format!("\nmu = {mu}"));
                    }
                    emit(
                        format,
                        out,
                        json!({"chi": chi.to_string(),
                               "mu": mu.map(|m| m.to_string())}),
                        &text_out,
                    );
                    Ok(EXIT_OK)
                }
                Err(plumblink::RealizationError::NotPrincipal) => {
                    emit(
                        format,
                        out,
                        json!({"chi": serde_json::Value::Null,
                               "reason": "multilink is not principal"}),
                        "no fiber: multilink is not principal",
                    );
                    Ok(EXIT_NEGATIVE)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Homology { input } => {
            let g = load_plumbing(&input.input)?;
            let h1 = h1_invariants(&g).map_err(|e| e.to_string())?;
            let torsion: Vec<String> = h1.torsion.iter().map(|t| t.to_string()).collect();
            let mut payload = json!({
                "free_rank": h1.free_rank,
                "torsion": torsion,
            });
            let mut text = format!(
                "H1 free rank = {}\nH1 torsion = [{}]",
                h1.free_rank,
                torsion.join(", ")
            );
            let mut code = EXIT_OK;
            if !g.arrows().is_empty() {
                let ok = homology_obstruction_check(&g).map_err(|e| e.to_string())?;
                payload["class_vanishes"] = json!(ok);
                text.push_str(&format!(
                    "\nmultilink class vanishes: {}",
                    if ok { "yes" } else { "no" }
                ));
                code = verdict(ok);
            }
            emit(format, out, payload, &text);
            Ok(code)
        }
        Command::Cycle { input } => {
            let g = load_plumbing(&input.input)?;
            let z = fundamental_cycle(&g).map_err(|e| e.to_string())?;
            let pa = plumblink::arithmetic_genus(&g).map_err(|e| e.to_string())?;
            let map: BTreeMap<String, String> = z
                .coefficients
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            let mut text = map
                .iter()
                .map(|(k, v)| format!("Z[{k}] = {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            text.push_str(&format!("\np_a(Z) = {pa}"));
            emit(
                format,
                out,
                json!({"cycle": map, "arithmetic_genus": pa.to_string()}),
                &text,
            );
            Ok(EXIT_OK)
        }
        Command::Classify { input } => {
            let g = load_plumbing(&input.input)?;
            let class = classify_topology(&g).map_err(|e| e.to_string())?;
            emit(
                format,
                out,
                json!({"class": class.as_str()}),
                class.as_str(),
            );
            Ok(EXIT_OK)
        }
        Command::Splice { input, out: outfile } => {
            let g = load_plumbing(&input.input)?;
            let d = splice_from_resolution(&g).map_err(|e| e.to_string())?;
            let text = d.serialize();
            if let Some(path) = outfile {
                std::fs::write(&path, &text).map_err(|e| e.to_string())?;
            }
            emit(format, out, d.to_json(), &text);
            Ok(EXIT_OK)
        }
        Command::Linking { input, a, b } => {
            let d = load_splice(&input.input)?;
            let v = d.linking_value(&a, &b).map_err(|e| e.to_string())?;
            emit(
                format,
                out,
                json!({"a": a, "b": b, "linking": v.to_string()}),
                &format!("linking({a}, {b}) = {v}"),
            );
            Ok(EXIT_OK)
        }
        Command::Semigroup { generators, input } => {
            if !generators.is_empty() {
                let report = semigroup_report(&generators).map_err(|e| e.to_string())?;
                return if report.cofinite {
                    let gaps = report.gaps.clone().unwrap_or_default();
                    let list = gaps
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    emit(
                        format,
                        out,
                        json!({"cofinite": true,
                               "gaps": gaps.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                               "gap_count": gaps.len()}),
                        &format!("gaps: {list}\ncount: {}", gaps.len()),
                    );
                    Ok(EXIT_OK)
                } else {
                    emit(
                        format,
                        out,
                        json!({"cofinite": false}),
                        "semigroup is not cofinite (generators not coprime)",
                    );
                    Ok(EXIT_NEGATIVE)
                };
            }
            let Some(path) = input else {
                return Err("provide --generators or a splice diagram file".into());
            };
            let d = load_splice(&path)?;
            let cond = d.semigroup_condition().map_err(|e| e.to_string())?;
            let edges_ok = d.edge_determinant_check();
            let failures: Vec<String> = cond
                .failures
                .iter()
                .map(|(a, b)| format!("{a} -> {b}"))
                .collect();
            let text = format!(
                "semigroup condition: {}\nedge determinants positive: {}{}",
                if cond.holds { "holds" } else { "fails" },
                if edges_ok { "yes" } else { "no" },
                if failures.is_empty() {
                    String::new()
                } else {
                    format!("\nfailures: {}", failures.join("; "))
                }
            );
            emit(
                format,
                out,
                json!({"semigroup_condition": cond.holds,
                       "edge_determinants_positive": edges_ok,
                       "failures": failures}),
                &text,
            );
            Ok(verdict(cond.holds && edges_ok))
        }
        Command::Obstruct { input, realized, target } => {
            let text = read_input(&input.input)?;
            if looks_like_splice(&text) {
                let d = parse_splice(&text).map_err(|e| e.to_string())?;
                let outcome =
                    semigroup_obstruction(&d, &realized, &target).map_err(|e| e.to_string())?;
                return match outcome {
                    ObstructionOutcome::Checked(cert) => {
                        let values: Vec<String> =
                            cert.values.iter().map(|v| v.to_string()).collect();
                        emit(
                            format,
                            out,
                            json!({"applicable": true,
                                   "obstructed": cert.obstructed,
                                   "values": values,
                                   "mu_bound": cert.mu_bound.to_string(),
                                   "mu_top": cert.mu_top.to_string()}),
                            &format!(
                                "obstructed: {}\nlinking values: [{}]\nmu bound: {}\nmu: {}",
                                if cert.obstructed { "yes" } else { "no" },
                                values.join(", "),
                                cert.mu_bound,
                                cert.mu_top
                            ),
                        );
                        Ok(EXIT_OK)
                    }
                    ObstructionOutcome::NotApplicable { reason } => {
                        emit(
                            format,
                            out,
                            json!({"applicable": false, "reason": reason}),
                            &format!("not applicable: {reason}"),
                        );
                        Ok(EXIT_NEGATIVE)
                    }
                };
            }
            let g = parse_plumbing(&text).map_err(|e| e.to_string())?;
            let [realized_one] = &realized[..] else {
                return Err("smoothness test takes exactly one --realized arrow".into());
            };
            let outcome = smoothness_obstruction(&g, realized_one, &target)
                .map_err(|e| e.to_string())?;
            match outcome {
                SmoothnessOutcome::Checked { obstructed, chi_target } => {
                    emit(
                        format,
                        out,
                        json!({"applicable": true,
                               "obstructed": obstructed,
                               "chi_target": chi_target.to_string()}),
                        &format!(
                            "obstructed: {}\nchi of target fiber: {chi_target} (smooth requires 1)",
                            if obstructed { "yes" } else { "no" }
                        ),
                    );
                    Ok(EXIT_OK)
                }
                SmoothnessOutcome::NotApplicable { reason } => {
                    emit(
                        format,
                        out,
                        json!({"applicable": false, "reason": reason}),
                        &format!("not applicable: {reason}"),
                    );
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Brieskorn { p, q, r, out: outfile, dot } => {
            let g = brieskorn_graph(p, q, r).map_err(|e| e.to_string())?;
            let text = if dot { g.to_dot() } else { g.serialize() };
            if let Some(path) = outfile {
                std::fs::write(&path, &text).map_err(|e| e.to_string())?;
            }
            emit(format, out, g.to_json(), &text);
            Ok(EXIT_OK)
        }
        Command::Ubiquitous { input, out: outfile } => {
            let g = load_plumbing(&input.input)?;
            let decorated = ubiquitous_link(&g).map_err(|e| e.to_string())?;
            let text = decorated.serialize();
            if let Some(path) = outfile {
                std::fs::write(&path, &text).map_err(|e| e.to_string())?;
            }
            emit(format, out, decorated.to_json(), &text);
            Ok(EXIT_OK)
        }
        Command::Endcurves { input } => {
            let g = load_plumbing(&input.input)?;
            let mults = end_curve_multiplicities(&g).map_err(|e| e.to_string())?;
            let map: BTreeMap<String, String> = mults
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            let text = map
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            emit(format, out, json!({"end_curve_multiplicities": map}), &text);
            Ok(EXIT_OK)
        }
        Command::Batch { dir, jobs } => cmd_batch(&dir, jobs, format, out),
    }
}

fn cmd_check_principal<O: Write>(
    g: &PlumbingGraph,
    format: Format,
    out: &mut O,
) -> Result<i32, String> {
    let verdict = principal_check(g).map_err(|e| e.to_string())?;
    let chi = verdict
        .solution
        .as_ref()
        .map(|l| plumblink::chi_from_solution(g, l));
    let mut text = format!("status: {}", verdict.status.as_str());
    if let Some(l) = &verdict.solution {
        for (k, v) in &l.coefficients {
            text.push_str(&format!("\nl[{k}] = {v}"));
        }
    }
    if let Some(chi) = &chi {
        text.push_str(&format!("\nchi = {chi}"));
    }
    emit(format, out, verdict.to_json(chi.as_ref()), &text);
    Ok(verdict_status(verdict.status))
}

fn cmd_batch<O: Write>(dir: &Path, jobs: usize, format: Format, out: &mut O) -> Result<i32, String> {
    if jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|x| x.to_str()),
                Some("plumb") | Some("splice")
            )
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("no .plumb or .splice files in {}", dir.display()));
    }

    let results: Mutex<Vec<Option<(String, bool)>>> = Mutex::new(vec![None; files.len()]);
    let workers = jobs.min(files.len());
    std::thread::scope(|scope| {
        for tid in 0..workers {
            let files = &files;
            let results = &results;
            scope.spawn(move || {
                for i in (tid..files.len()).step_by(workers) {
                    let line = batch_one(&files[i]);
                    results.lock().expect("no panics in batch_one")[i] = Some(line);
                }
            });
        }
    });
    let results = results.into_inner().expect("workers joined");
    let mut all_ok = true;
    let mut rows = Vec::new();
    for (path, line) in files.iter().zip(results) {
        let (summary, ok) = line.expect("every index filled");
        all_ok &= ok;
        rows.push((path.display().to_string(), summary, ok));
    }
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(f, s, ok)| json!({"file": f, "result": s, "ok": ok}))
                .collect();
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&json!({"results": items})).expect("valid json")
            );
        }
        Format::Text => {
            for (f, s, _) in &rows {
                let _ = writeln!(out, "{f}: {s}");
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_NEGATIVE })
}

/// One batch line per file: plumbing files get the analytic/principal
/// summary, splice files the semigroup condition.
fn batch_one(path: &Path) -> (String, bool) {
    let Ok(text) = std::fs::read_to_string(path) else {
        return ("unreadable".into(), false);
    };
    if path.extension().and_then(|x| x.to_str()) == Some("splice") {
        return match parse_splice(&text).map(|d| d.semigroup_condition()) {
            Ok(Ok(cond)) => (
                format!(
                    "semigroup condition {}",
                    if cond.holds { "holds" } else { "fails" }
                ),
                cond.holds,
            ),
            Ok(Err(e)) | Err(e) => (format!("error: {e}"), false),
        };
    }
    let g = match parse_plumbing(&text) {
        Ok(g) => g,
        Err(e) => return (format!("error: {e}"), false),
    };
    if g.arrows().is_empty() {
        match analytic_check(&g) {
            Ok(ok) => (
                format!("analytic: {}", if ok { "yes" } else { "no" }),
                ok,
            ),
            Err(e) => (format!("error: {e}"), false),
        }
    } else {
        match principal_check(&g) {
            Ok(v) => (
                v.status.as_str().to_string(),
                v.status == PrincipalStatus::Principal,
            ),
            Err(e) => (format!("error: {e}"), false),
        }
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn verdict_status(s: PrincipalStatus) -> i32 {
    verdict(s == PrincipalStatus::Principal)
}

fn emit<O: Write>(format: Format, out: &mut O, payload: serde_json::Value, text: &str) {
    match format {
        Format::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&payload).expect("valid json")
            );
        }
        Format::Text => {
            let _ = writeln!(out, "{}", text.trim_end());
        }
    }
}

fn read_input(source: &str) -> Result<String, String> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))
    }
}

/// Splice files use node/leaf keywords; plumbing files use vertex.
fn looks_like_splice(text: &str) -> bool {
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim_start();
        if line.starts_with("node ") || line.starts_with("leaf ") {
            return true;
        }
        if line.starts_with("vertex ") {
            return false;
        }
    }
    false
}

fn load_plumbing(source: &str) -> Result<PlumbingGraph, String> {
    parse_plumbing(&read_input(source)?).map_err(|e| e.to_string())
}

fn load_splice(source: &str) -> Result<SpliceDiagram, String> {
    parse_splice(&read_input(source)?).map_err(|e| e.to_string())
}
