//! End-to-end tests of the command dispatcher: exit-code contract, text
//! output, and JSON schema stability.

use plumblink_cli::{run, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["plumblink"];
    argv.extend_from_slice(args);
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 stdout"),
        String::from_utf8(err).expect("utf-8 stderr"),
    )
}

fn invoke_json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut argv = args.to_vec();
    argv.push("--json");
    let (code, out, _) = invoke(&argv);
    (code, serde_json::from_str(&out).expect("valid json output"))
}

#[test]
fn check_principal_prints_solution() {
    let file = data("m2313_L3.plumb");
    let (code, out, _) = invoke(&["check", "--principal", &file]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("status: principal"));
    for line in ["l[E1] = 3", "l[E2] = 2", "l[E3] = 6", "l[E4] = 1", "l[E5] = 1"] {
        assert!(out.contains(line), "missing `{line}` in: {out}");
    }
}

#[test]
fn check_principal_json_certificate() {
    let file = data("m2313_L.plumb");
    let (code, v) = invoke_json(&["check", "--principal", &file]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["status"], "principal");
    assert_eq!(v["solution"]["E1"], "6");
    assert_eq!(v["solution"]["E3"], "12");
    assert_eq!(v["chi"], -3);
}

#[test]
fn check_analytic_default() {
    let file = data("m2313_L3.plumb");
    let (code, out, _) = invoke(&["check", &file]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "analytic: yes");
}

#[test]
fn missing_file_is_exit_2() {
    let (code, _, err) = invoke(&["check", "--principal", "nosuchfile"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("nosuchfile"));
}

#[test]
fn usage_error_is_exit_2() {
    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_ERROR);
    let (code, _, _) = invoke(&["linking", data("m3419.splice").as_str()]);
    assert_eq!(code, EXIT_ERROR);
}

#[test]
fn semigroup_gaps() {
    let (code, out, _) = invoke(&["semigroup", "--generators", "2,9"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("gaps: 1,3,5,7"));
    assert!(out.contains("count: 4"));

    let (code, v) = invoke_json(&["semigroup", "--generators", "2,9"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["gap_count"], 4);
    assert_eq!(v["gaps"], serde_json::json!(["1", "3", "5", "7"]));

    // non-coprime generators: negative verdict, not an input error
    let (code, v) = invoke_json(&["semigroup", "--generators", "4,6"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["cofinite"], false);
}

#[test]
fn solve_reports_rational_solution() {
    let (code, v) = invoke_json(&["solve", &data("m2313_L3.plumb")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["solution"]["E5"], "1");
}

#[test]
fn chi_command_both_formats() {
    let (code, out, _) = invoke(&["chi", &data("m2313_L.plumb")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("chi = -3"));
    assert!(out.contains("mu = 4"));

    let (code, v) = invoke_json(&["chi", &data("m3419.splice"), "--multilink", "L"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["chi"], "-19");
    assert_eq!(v["multiplicities"]["A"], "36");
    assert_eq!(v["multiplicities"]["L2"], "9");
}

#[test]
fn linking_command() {
    let (code, out, _) = invoke(&["linking", &data("m3419.splice"), "L2", "L"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "linking(L2, L) = 9");
    let (code, v) = invoke_json(&["linking", &data("m3419.splice"), "B", "L"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["linking"], "6");
}

#[test]
fn obstruct_splice_diagram() {
    let (code, v) = invoke_json(&[
        "obstruct",
        &data("m3419.splice"),
        "--realized",
        "L2,L3",
        "--target",
        "L",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["obstructed"], true);
    assert_eq!(v["mu_bound"], "8");
    assert_eq!(v["mu_top"], "20");
}

#[test]
fn obstruct_not_applicable_is_negative_verdict() {
    let (code, v) = invoke_json(&[
        "obstruct",
        &data("m3419.splice"),
        "--realized",
        "L",
        "--target",
        "L",
    ]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["applicable"], false);
}

#[test]
fn obstruct_smoothness_on_plumbing() {
    // both singular-fiber arrows in one file
    let dir = tempdir();
    let file = dir.join("both.plumb");
    let mut text = std::fs::read_to_string(data("m2313_L3.plumb")).unwrap();
    text.push_str("arrow E4 mult=1 name=L\n");
    std::fs::write(&file, text).unwrap();
    let (code, v) = invoke_json(&[
        "obstruct",
        file.to_str().unwrap(),
        "--realized",
        "L3",
        "--target",
        "L",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["obstructed"], true);
    assert_eq!(v["chi_target"], "-3");
}

#[test]
fn classify_and_cycle() {
    let dir = tempdir();
    let e8 = dir.join("e8.plumb");
    write_brieskorn(&e8, 2, 3, 5);
    let (code, out, _) = invoke(&["classify", e8.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "rational");

    let (code, v) = invoke_json(&["cycle", e8.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["arithmetic_genus"], "0");

    let m2313 = dir.join("m2313.plumb");
    write_brieskorn(&m2313, 2, 3, 13);
    let (code, out, _) = invoke(&["classify", m2313.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "other");
}

#[test]
fn brieskorn_writes_graph() {
    let (code, out, _) = invoke(&["brieskorn", "2", "3", "13"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("vertex center euler=-1"));
    assert!(out.contains("vertex x3leg2 euler=-2"));

    let (code, out, _) = invoke(&["brieskorn", "2", "3", "13", "--dot"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("graph plumbing {"));

    let (code, _, err) = invoke(&["brieskorn", "2", "4", "6"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("coprime"));
}

#[test]
fn splice_command_round_trips() {
    let dir = tempdir();
    let m2313 = dir.join("m2313.plumb");
    write_brieskorn(&m2313, 2, 3, 13);
    let spliced = dir.join("m2313.splice");
    let (code, _, _) = invoke(&[
        "splice",
        m2313.to_str().unwrap(),
        "--out",
        spliced.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&spliced).unwrap();
    assert!(text.contains("node center"));
    assert!(text.contains("wA=13"));
}

#[test]
fn homology_expand_ubiquitous_endcurves() {
    let file = data("m2313_L3.plumb");
    let (code, v) = invoke_json(&["homology", &file]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["free_rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([]));
    assert_eq!(v["class_vanishes"], true);

    let (code, v) = invoke_json(&["expand", &file]);
    assert_eq!(code, EXIT_OK);
    assert!(v["graph"]["arrows"].as_array().unwrap().is_empty());

    let dir = tempdir();
    let e8 = dir.join("e8.plumb");
    write_brieskorn(&e8, 2, 3, 5);
    let (code, v) = invoke_json(&["ubiquitous", e8.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 8);

    let (code, v) = invoke_json(&["endcurves", e8.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    // integral homology sphere: every transverse class already vanishes
    for (_, mult) in v["end_curve_multiplicities"].as_object().unwrap() {
        assert_eq!(mult, "1");
    }
}

#[test]
fn batch_is_deterministic_and_parallel_safe() {
    let dir = tempdir();
    for (name, p, q, r) in [("a", 2, 3, 5), ("b", 2, 3, 7), ("c", 2, 3, 11)] {
        write_brieskorn(&dir.join(format!("{name}.plumb")), p, q, r);
    }
    std::fs::copy(data("m3419.splice"), dir.join("d.splice")).unwrap();

    let (code1, out1, _) = invoke(&["batch", dir.to_str().unwrap()]);
    let (code4, out4, _) = invoke(&["batch", dir.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(code1, code4);
    assert_eq!(out1, out4);
    let lines: Vec<&str> = out1.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].ends_with("analytic: yes"));
    // the splice file carries arrows, so the condition check errors out
    // with a negative overall verdict
    assert_eq!(code1, EXIT_NEGATIVE);
}

#[test]
fn identical_invocations_identical_output() {
    let args = ["chi", &data("m3419.splice"), "--json"];
    let (c1, o1, _) = invoke(&args);
    let (c2, o2, _) = invoke(&args);
    assert_eq!((c1, &o1), (c2, &o2));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "plumblink-cli-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_brieskorn(path: &std::path::Path, p: u64, q: u64, r: u64) {
    let g = plumblink::brieskorn_graph(p, q, r).unwrap();
    std::fs::write(path, g.serialize()).unwrap();
}
