//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (run with `--nocapture` to see the lines for passing
//! tests; a failing assertion reports the criterion in its panic).

mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use plumblink::{
    analytic_check, brieskorn_graph, chi_from_solution, classify_topology, expand_arrows,
    fiber_euler_characteristic, h1_invariants, homology_obstruction_check, monodromical_system,
    parse_plumbing, parse_splice, principal_check, semigroup_obstruction, semigroup_report,
    splice_from_resolution, Arrow, Definiteness, Edge, ObstructionOutcome, PlumbingGraph,
    PrincipalStatus, TopologyClass, Vertex,
};
use rand::Rng;

fn m2313_with(arrow: &str) -> PlumbingGraph {
    parse_plumbing(&format!(
        "vertex E1 euler=-2\nvertex E2 euler=-3\nvertex E3 euler=-1\n\
         vertex E4 euler=-7\nvertex E5 euler=-2\n\
         edge E1 E3\nedge E2 E3\nedge E3 E4\nedge E4 E5\n{arrow}\n"
    ))
    .expect("valid fixture")
}

fn solution_vec(g: &PlumbingGraph, ids: &[&str]) -> Vec<i64> {
    let verdict = principal_check(g).expect("well-formed input");
    let sol = verdict.solution.expect("principal instance");
    ids.iter()
        .map(|id| i64::try_from(sol.coefficients[*id].clone()).expect("small value"))
        .collect()
}

/// Exact singular-fiber solution on the (2,3,13) resolution tree.
#[test]
fn criterion_01_m2313_fiber_solution() {
    let g = m2313_with("arrow E5 mult=1 name=L3");
    let verdict = principal_check(&g).expect("valid graph");
    assert_eq!(verdict.status, PrincipalStatus::Principal, "criterion 1");
    assert_eq!(
        solution_vec(&g, &["E1", "E2", "E3", "E4", "E5"]),
        vec![3, 2, 6, 1, 1],
        "criterion 1"
    );
    println!("criterion 1 (exact (2,3,13) fiber solution): pass");
}

/// Companion knot at the -7 vertex: solution, chi, and the smoothness
/// contradiction.
#[test]
fn criterion_02_m2313_companion_knot() {
    let g = m2313_with("arrow E4 mult=1 name=L");
    assert_eq!(
        solution_vec(&g, &["E1", "E2", "E3", "E4", "E5"]),
        vec![6, 4, 12, 2, 1],
        "criterion 2"
    );
    assert_eq!(
        fiber_euler_characteristic(&g).expect("principal"),
        BigInt::from(-3),
        "criterion 2"
    );
    let both = m2313_with("arrow E5 mult=1 name=L3\narrow E4 mult=1 name=L");
    let out = plumblink::smoothness_obstruction(&both, "L3", "L").expect("valid input");
    match out {
        plumblink::SmoothnessOutcome::Checked { obstructed, .. } => {
            assert!(obstructed, "criterion 2")
        }
        other => panic!("criterion 2: expected a checked outcome, got {other:?}"),
    }
    println!("criterion 2 (companion solution, chi = -3, smoothness obstruction): pass");
}

/// The (3,4,19) semigroup contradiction: mu = 20 > 8 = 2 * gaps(<2,9>).
#[test]
fn criterion_03_m3419_semigroup_obstruction() {
    let d = parse_splice(
        "node A\nnode B\nleaf a3\n\
         edge A a3 wA=3\nedge A B wA=19 wB=2\n\
         arrow A w=4 mult=1 name=L2 decoration\n\
         arrow B w=3 mult=1 name=L3 decoration\n\
         arrow B w=1 mult=1 name=L\n",
    )
    .expect("valid fixture");
    let mut links = vec![
        d.linking_value("L2", "L").expect("known names"),
        d.linking_value("L3", "L").expect("known names"),
    ];
    links.sort();
    assert_eq!(links, vec![BigInt::from(2), BigInt::from(9)], "criterion 3");
    let report = semigroup_report(&[2, 9]).expect("valid generators");
    assert_eq!(report.gaps.as_deref(), Some(&[1u64, 3, 5, 7][..]), "criterion 3");
    let (_, chi) = d.chi_for_multilink(&["L".to_string()]).expect("known arrow");
    assert_eq!(chi, BigInt::from(-19), "criterion 3");
    let out = semigroup_obstruction(&d, &["L2".to_string(), "L3".to_string()], "L")
        .expect("valid input");
    let ObstructionOutcome::Checked(cert) = out else {
        panic!("criterion 3: expected a checked outcome");
    };
    assert!(cert.obstructed, "criterion 3");
    assert_eq!(cert.mu_bound, BigInt::from(8), "criterion 3");
    assert_eq!(cert.mu_top, BigInt::from(20), "criterion 3");
    println!("criterion 3 ((3,4,19) linking/gaps/chi/obstruction): pass");
}

/// brieskorn_graph(2,3,13) reproduces the resolution figure exactly.
#[test]
fn criterion_04_brieskorn_2313_figure() {
    let g = brieskorn_graph(2, 3, 13).expect("coprime");
    let eulers: BTreeMap<&str, i64> = g
        .vertices()
        .iter()
        .map(|v| (v.id.as_str(), v.euler))
        .collect();
    let expected: BTreeMap<&str, i64> = [
        ("center", -1),
        ("x1leg1", -2),
        ("x2leg1", -3),
        ("x3leg1", -7),
        ("x3leg2", -2),
    ]
    .into_iter()
    .collect();
    assert_eq!(eulers, expected, "criterion 4");
    assert!(g.vertices().iter().all(|v| v.genus == 0), "criterion 4");
    let det = g.intersection_matrix().determinant().expect("square");
    assert!(det.abs().is_one(), "criterion 4");
    println!("criterion 4 ((2,3,13) star graph matches the figure, |det| = 1): pass");
}

/// Topological classification of the four small Brieskorn links.
#[test]
fn criterion_05_classification() {
    let class = |p, q, r| {
        classify_topology(&brieskorn_graph(p, q, r).expect("coprime")).expect("negative definite")
    };
    assert_eq!(class(2, 3, 5), TopologyClass::Rational, "criterion 5");
    assert_eq!(class(2, 3, 7), TopologyClass::MinimallyElliptic, "criterion 5");
    assert_eq!(class(2, 3, 11), TopologyClass::MinimallyElliptic, "criterion 5");
    assert_eq!(class(2, 3, 13), TopologyClass::Other, "criterion 5");
    println!("criterion 5 (rational / minimally-elliptic / other classification): pass");
}

/// On random negative-definite graphs with arrows: the monodromical
/// solution exists, is unique and strictly positive; principality is
/// equivalent to the homology class test.
#[test]
fn criterion_06_principal_iff_homology() {
    let mut rng = common::rng(0x6001);
    let mut principal = 0usize;
    for case in 0..250 {
        let g = common::random_negdef_graph(&mut rng);
        let sys = monodromical_system(&g);
        let neg_b: Vec<BigInt> = sys.b.iter().map(|x| -x).collect();
        let x = sys
            .matrix
            .solve_unique(&neg_b)
            .unwrap_or_else(|e| panic!("criterion 6 case {case}: singular system: {e}"));
        assert!(
            x.iter().all(|xi| xi.numer().is_positive()),
            "criterion 6 case {case}: solution not strictly positive"
        );
        let verdict = principal_check(&g).expect("valid graph");
        let homology_ok = homology_obstruction_check(&g).expect("negative definite");
        assert_eq!(
            verdict.status == PrincipalStatus::Principal,
            homology_ok,
            "criterion 6 case {case}: principality and class test disagree"
        );
        if verdict.status == PrincipalStatus::Principal {
            principal += 1;
        }
    }
    assert!(principal > 10, "criterion 6: generator produced too few principal instances");
    println!("criterion 6 (250 random graphs: positive solution, (ii)<=>(iii)): pass");
}

/// Zariski direction on unfiltered random graphs: a positive integral
/// solution with b >= 0, b != 0 forces negative definiteness.
#[test]
fn criterion_07_zariski_direction() {
    let mut rng = common::rng(0x7001);
    let mut hits = 0usize;
    for case in 0..400 {
        let g = common::random_unfiltered_graph(&mut rng);
        let sys = monodromical_system(&g);
        if sys.b.iter().all(|x| x.is_zero()) {
            continue;
        }
        let neg_b: Vec<BigInt> = sys.b.iter().map(|x| -x).collect();
        let Ok(x) = sys.matrix.solve_unique(&neg_b) else {
            continue;
        };
        let positive_integral = x
            .iter()
            .all(|xi| xi.is_integer() && xi.numer().is_positive());
        if !positive_integral {
            continue;
        }
        hits += 1;
        assert!(
            analytic_check(&g).expect("connected"),
            "criterion 7 case {case}: positive integral solution on a non-negative-definite graph"
        );
    }
    assert!(hits >= 10, "criterion 7: too few solvable instances ({hits}) to be meaningful");
    println!("criterion 7 (400 unfiltered graphs, Zariski direction, {hits} hits): pass");
}

/// expand_arrows postconditions on every principal instance of the
/// criterion-6 corpus.
#[test]
fn criterion_08_expand_arrows_postconditions() {
    let mut rng = common::rng(0x6001); // same corpus as criterion 6
    let mut checked = 0usize;
    for case in 0..250 {
        let g = common::random_negdef_graph(&mut rng);
        let verdict = principal_check(&g).expect("valid graph");
        let Some(l) = &verdict.solution else {
            continue;
        };
        let (expanded, lp) = expand_arrows(&g, l).expect("principal instance");
        assert!(expanded.arrows().is_empty(), "criterion 8 case {case}");
        let m = expanded.intersection_matrix();
        let product = m.mul_vec(&lp.as_vec(&expanded));
        assert!(
            product.iter().all(|p| p.is_zero()),
            "criterion 8 case {case}: I(expanded) * l' != 0"
        );
        assert_eq!(
            m.definiteness().expect("symmetric"),
            Definiteness::NegativeSemidefinite { corank: 1 },
            "criterion 8 case {case}"
        );
        // l' restricted to the original vertices equals l
        for v in g.vertices() {
            assert_eq!(
                lp.coefficients[&v.id], l.coefficients[&v.id],
                "criterion 8 case {case}: restriction changed"
            );
        }
        checked += 1;
    }
    assert!(checked > 10, "criterion 8: too few principal instances");
    println!("criterion 8 (expanded graphs: arrowless, kernel cycle, corank 1; {checked} instances): pass");
}

/// Plumbing chi equals splice chi on unimodular star-shaped trees with one
/// leaf arrow, and the torus-knot identity 1 - chi = 2 * gap_count.
#[test]
fn criterion_09_chi_cross_module() {
    let mut rng = common::rng(0x9001);
    for case in 0..60 {
        let (p, q, r) = common::random_coprime_triple(&mut rng, 30);
        let g = brieskorn_graph(p, q, r).expect("coprime");
        // arrow at the leaf of a random leg
        let leg = rng.gen_range(1..=3usize);
        let (alpha, beta) = plumblink::brieskorn_seifert_data(p, q, r)
            .expect("coprime")
            .legs[leg - 1];
        let len = plumblink::negative_continued_fraction(alpha, beta)
            .expect("valid fraction")
            .len();
        let leaf = format!("x{leg}leg{len}");
        let arrowed = g
            .with_arrows(vec![Arrow { vertex: leaf, mult: 1, name: Some("K".into()) }])
            .expect("same vertex set");
        let chi_plumbing = fiber_euler_characteristic(&arrowed)
            .unwrap_or_else(|e| panic!("criterion 9 case {case} ({p},{q},{r}): {e}"));
        let d = splice_from_resolution(&arrowed).expect("negative-definite tree");
        let (_, chi_splice) = d.chi_for_multilink(&["K".to_string()]).expect("known arrow");
        assert_eq!(
            chi_plumbing, chi_splice,
            "criterion 9 case {case} ({p},{q},{r}) leg {leg}"
        );
    }
    // torus-knot identity on a single-node diagram
    for p in 2u64..=12 {
        for q in 2u64..=12 {
            if common_gcd(p, q) != 1 {
                continue;
            }
            let d = parse_splice(&format!(
                "node N\nleaf a\nleaf b\n\
                 edge N a wA={p}\nedge N b wA={q}\n\
                 arrow N w=1 mult=1 name=K\n"
            ))
            .expect("valid diagram");
            let (_, chi) = d.chi_for_multilink(&["K".to_string()]).expect("known arrow");
            let gaps = semigroup_report(&[p, q])
                .expect("valid generators")
                .gap_count()
                .expect("coprime, hence cofinite");
            assert_eq!(
                BigInt::one() - chi,
                BigInt::from(2 * gaps as u64),
                "criterion 9 torus knot ({p},{q})"
            );
        }
    }
    println!("criterion 9 (plumbing chi = splice chi on 60 stars; torus-knot identity): pass");
}

/// Blow-down invariance of |det|, H1, the principal verdict, and chi.
#[test]
fn criterion_10_blow_down_invariance() {
    let mut rng = common::rng(0xA001);
    for case in 0..120 {
        let g = common::random_negdef_graph(&mut rng);
        // blow up: subdivide a random edge, or sprout a new -1 vertex
        let (blown, new_id) = blow_up(&g, &mut rng);
        let down = blown.blow_down(&new_id).expect("blow-down applies");

        let det_up = blown.intersection_matrix().determinant().expect("square").abs();
        let det_down = down.intersection_matrix().determinant().expect("square").abs();
        assert_eq!(det_up, det_down, "criterion 10 case {case}: |det| changed");

        assert_eq!(
            h1_invariants(&blown).expect("connected"),
            h1_invariants(&down).expect("connected"),
            "criterion 10 case {case}: H1 changed"
        );

        let v_up = principal_check(&blown).expect("valid graph");
        let v_down = principal_check(&down).expect("valid graph");
        assert_eq!(
            v_up.status, v_down.status,
            "criterion 10 case {case}: verdict changed"
        );
        if let (Some(lu), Some(ld)) = (&v_up.solution, &v_down.solution) {
            assert_eq!(
                chi_from_solution(&blown, lu),
                chi_from_solution(&down, ld),
                "criterion 10 case {case}: chi changed"
            );
        }
    }
    println!("criterion 10 (blow-down invariance on 120 instances): pass");
}

/// Blow up `g` at a random spot, avoiding arrow placement on the new
/// vertex; returns the blown-up graph and the new vertex id.
fn blow_up(g: &PlumbingGraph, rng: &mut rand_chacha::ChaCha8Rng) -> (PlumbingGraph, String) {
    let new_id = "blow".to_string();
    let mut vertices = g.vertices().to_vec();
    let mut edges = g.edges().to_vec();
    if !edges.is_empty() && rng.gen_bool(0.6) {
        // subdivide an edge: a--b becomes a--v--b, a and b drop by 1
        let k = rng.gen_range(0..edges.len());
        let Edge { a, b } = edges.remove(k);
        for v in &mut vertices {
            if v.id == a || v.id == b {
                v.euler -= 1;
            }
        }
        vertices.push(Vertex { id: new_id.clone(), euler: -1, genus: 0 });
        edges.push(Edge { a: a.clone(), b: new_id.clone() });
        edges.push(Edge { a: new_id.clone(), b });
    } else {
        // sprout a -1 leaf at a random vertex, which drops by 1
        let k = rng.gen_range(0..vertices.len());
        let at = vertices[k].id.clone();
        vertices[k].euler -= 1;
        vertices.push(Vertex { id: new_id.clone(), euler: -1, genus: 0 });
        edges.push(Edge { a: at, b: new_id.clone() });
    }
    (
        PlumbingGraph::new(vertices, edges, g.arrows().to_vec()).expect("blow-up stays valid"),
        new_id,
    )
}

fn common_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        common_gcd(b, a % b)
    }
}
