//! Decision procedures on plumbing multilinks: the negative-definiteness
//! test for analytic realizability, the monodromical system and its
//! positive-integer solvability (principal realizability), the homology
//! class test, the arrow-to-string expansion, fiber Euler characteristics,
//! plumbing homology, fundamental cycles and the rational / minimally
//! elliptic classification, ubiquitous links and end-curve multiplicities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::graph::{Arrow, Cycle, PlumbingGraph, RationalCycle, Vertex};
use crate::linalg::{Definiteness, ExactMatrix, LinalgError};

#[derive(Debug, Error)]
pub enum RealizationError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
    #[error("graph has no arrows")]
    NoArrows,
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("multilink is not principal")]
    NotPrincipal,
    #[error("not a knot: expected a single arrow of multiplicity 1")]
    NotAKnot,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph already carries arrows")]
    ArrowsPresent,
    #[error("graph too large for subgraph enumeration ({0} vertices)")]
    TooLarge(usize),
    #[error("cycle is not a monodromical solution: {0}")]
    InvalidSolution(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The linear system `I(Delta) * l + b(Delta) = 0`.
#[derive(Debug, Clone)]
pub struct MonodromicalSystem {
    pub matrix: ExactMatrix,
    pub b: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalStatus {
    Principal,
    NotPrincipal,
    NotAnalytic,
}

impl PrincipalStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PrincipalStatus::Principal => "principal",
            PrincipalStatus::NotPrincipal => "not-principal",
            PrincipalStatus::NotAnalytic => "not-analytic",
        }
    }
}

/// Verdict with a machine-checkable certificate: the exact solution of the
/// monodromical system when it exists.
#[derive(Debug, Clone)]
pub struct PrincipalVerdict {
    pub status: PrincipalStatus,
    pub solution: Option<Cycle>,
    pub rational_solution: Option<RationalCycle>,
    pub reason: String,
}

impl PrincipalVerdict {
    /// JSON certificate; exact integers as decimal strings.
    pub fn to_json(&self, chi: Option<&BigInt>) -> serde_json::Value {
        let mut o = json!({
            "status": self.status.as_str(),
            "reason": self.reason,
        });
        if let Some(sol) = &self.solution {
            let map: BTreeMap<String, String> = sol
                .coefficients
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            o["solution"] = json!(map);
        }
        if let Some(sol) = &self.rational_solution {
            let map: BTreeMap<String, String> = sol
                .coefficients
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            o["rational_solution"] = json!(map);
        }
        if let Some(chi) = chi {
            o["chi"] = serde_json::Value::Number(
                i64::try_from(chi.clone()).expect("chi fits i64").into(),
            );
        }
        o
    }
}

/// Free rank and torsion of `H_1(M, Z)` for a plumbing manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Invariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn monodromical_system(g: &PlumbingGraph) -> MonodromicalSystem {
    let mut b = vec![BigInt::zero(); g.len()];
    for a in g.arrows() {
        let i = g.vertex_index(&a.vertex).expect("validated arrow");
        b[i] += BigInt::from(a.mult);
    }
    MonodromicalSystem {
        matrix: g.intersection_matrix(),
        b,
    }
}

/// `(M, L)` is analytic iff the intersection matrix is negative definite.
pub fn analytic_check(g: &PlumbingGraph) -> Result<bool, RealizationError> {
    require_connected(g)?;
    Ok(g.intersection_matrix().definiteness()? == Definiteness::NegativeDefinite)
}

/// Decide principal realizability: negative definiteness plus a strictly
/// positive integer solution of the monodromical system.
pub fn principal_check(g: &PlumbingGraph) -> Result<PrincipalVerdict, RealizationError> {
    require_connected(g)?;
    if g.arrows().is_empty() {
        return Err(RealizationError::NoArrows);
    }
    let sys = monodromical_system(g);
    if sys.matrix.definiteness()? != Definiteness::NegativeDefinite {
        return Ok(PrincipalVerdict {
            status: PrincipalStatus::NotAnalytic,
            solution: None,
            rational_solution: None,
            reason: "intersection matrix is not negative definite".into(),
        });
    }
    let neg_b: Vec<BigInt> = sys.b.iter().map(|x| -x).collect();
    let x = sys.matrix.solve_unique(&neg_b)?;
    let rational = RationalCycle::from_vec(g, x.clone());
    let all_positive_integers = x
        .iter()
        .all(|xi| xi.is_integer() && xi.numer().is_positive());
    if all_positive_integers {
        let ints: Vec<BigInt> = x.iter().map(|xi| xi.to_integer()).collect();
        Ok(PrincipalVerdict {
            status: PrincipalStatus::Principal,
            solution: Some(Cycle::from_vec(g, ints)),
            rational_solution: Some(rational),
            reason: "monodromical system has a positive integer solution".into(),
        })
    } else {
        Ok(PrincipalVerdict {
            status: PrincipalStatus::NotPrincipal,
            solution: None,
            rational_solution: Some(rational),
            reason: "monodromical solution is not a positive integer vector".into(),
        })
    }
}

/// Class-vanishing test: `b(Delta)` lies in the integer image of
/// `I(Delta)`, decided through the Smith normal form transforms.
pub fn homology_obstruction_check(g: &PlumbingGraph) -> Result<bool, RealizationError> {
    require_connected(g)?;
    let sys = monodromical_system(g);
    if sys.matrix.definiteness()? != Definiteness::NegativeDefinite {
        return Err(RealizationError::NotNegativeDefinite);
    }
    Ok(in_integer_image(&sys.matrix, &sys.b))
}

/// Is `b` in the integer column span of `m`?
fn in_integer_image(m: &ExactMatrix, b: &[BigInt]) -> bool {
    let snf = m.smith_normal_form();
    let ub = snf.u.mul_vec(b);
    for (i, ubi) in ub.iter().enumerate() {
        match snf.diagonal.get(i) {
            Some(d) if !d.is_zero() => {
                if !(ubi % d).is_zero() {
                    return false;
                }
            }
            _ => {
                if !ubi.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Replace each arrow by a string of genus-0 vertices so that the extended
/// cycle `l'` solves the arrowless monodromical system exactly.
///
/// For an arrow of multiplicity `m` at a vertex with solution value `l_i`,
/// the string Euler numbers are `-q_1, ..., -q_m` from the recurrence
/// `p_1 = l_i`, `d_1 = m`, `q_k = ceil(p_k / d_k)`, `r_k = q_k d_k - p_k`,
/// `p_(k+1) = d_k`, `d_(k+1) = r_k`, stopping at `r_m = 0`; the string's
/// cycle values are the `d_k`.
pub fn expand_arrows(
    g: &PlumbingGraph,
    l: &Cycle,
) -> Result<(PlumbingGraph, Cycle), RealizationError> {
    // verify l is the positive integral monodromical solution
    let sys = monodromical_system(g);
    if l.coefficients.len() != g.len()
        || g.vertices().iter().any(|v| !l.coefficients.contains_key(&v.id))
    {
        return Err(RealizationError::InvalidSolution(
            "cycle keys do not match the vertex set".into(),
        ));
    }
    let lv = l.as_vec(g);
    if lv.iter().any(|x| !x.is_positive()) {
        return Err(RealizationError::InvalidSolution(
            "cycle is not entrywise positive".into(),
        ));
    }
    let residue = sys.matrix.mul_vec(&lv);
    for (ri, bi) in residue.iter().zip(&sys.b) {
        if !(ri + bi).is_zero() {
            return Err(RealizationError::InvalidSolution(
                "I*l + b != 0".into(),
            ));
        }
    }

    let mut vertices: Vec<Vertex> = g.vertices().to_vec();
    let mut edges = g.edges().to_vec();
    let mut ext: Vec<(String, BigInt)> = vertices
        .iter()
        .map(|v| (v.id.clone(), l.coefficients[&v.id].clone()))
        .collect();

    for (k, arrow) in g.arrows().iter().enumerate() {
        let mut p = l.coefficients[&arrow.vertex].clone();
        let mut d = BigInt::from(arrow.mult);
        let mut prev = arrow.vertex.clone();
        let mut step = 0usize;
        loop {
            step += 1;
            // q = ceil(p / d), r = q*d - p, 0 <= r < d
            let q = num_integer::Integer::div_ceil(&p, &d);
            let r = &q * &d - &p;
            let id = format!("str{}_{}", k, step);
            vertices.push(Vertex {
                id: id.clone(),
                euler: -i64::try_from(q).map_err(|_| {
                    RealizationError::InvalidSolution("string weight overflows".into())
                })?,
                genus: 0,
            });
            edges.push(crate::graph::Edge { a: prev.clone(), b: id.clone() });
            ext.push((id.clone(), d.clone()));
            prev = id;
            if r.is_zero() {
                break;
            }
            p = d;
            d = r;
        }
    }
    let expanded = PlumbingGraph::new(vertices, edges, Vec::new())
        .expect("string ids are fresh");
    let cycle = Cycle {
        coefficients: ext.into_iter().collect(),
    };
    Ok((expanded, cycle))
}

/// `chi(F) = sum_i l_i * (2 - 2 g_i - valence(v_i))`, valence counting
/// edges and arrows.
pub fn fiber_euler_characteristic(g: &PlumbingGraph) -> Result<BigInt, RealizationError> {
    let verdict = principal_check(g)?;
    let Some(solution) = &verdict.solution else {
        return Err(RealizationError::NotPrincipal);
    };
    Ok(chi_from_solution(g, solution))
}

/// Same formula applied to a given solution cycle (used by property tests
/// that already hold the certificate).
pub fn chi_from_solution(g: &PlumbingGraph, l: &Cycle) -> BigInt {
    let mut chi = BigInt::zero();
    for v in g.vertices() {
        let val = g.valence(&v.id).expect("own vertex");
        let factor = BigInt::from(2i64 - 2 * i64::from(v.genus) - val as i64);
        chi += &l.coefficients[&v.id] * factor;
    }
    chi
}

/// `mu = 1 - chi` for a knot (single arrow of multiplicity 1).
pub fn milnor_number(g: &PlumbingGraph, chi: &BigInt) -> Result<BigInt, RealizationError> {
    if g.arrows().len() != 1 || g.arrows()[0].mult != 1 {
        return Err(RealizationError::NotAKnot);
    }
    Ok(BigInt::one() - chi)
}

/// `H_1(M, Z)` of the plumbing manifold: free rank
/// `2 * sum(g_i) + b_1(graph) + corank(I)`, torsion from the SNF diagonal.
pub fn h1_invariants(g: &PlumbingGraph) -> Result<H1Invariants, RealizationError> {
    require_connected(g)?;
    let m = g.intersection_matrix();
    let snf = m.smith_normal_form();
    let corank = snf.diagonal.iter().filter(|d| d.is_zero()).count();
    let genus_sum: usize = g.vertices().iter().map(|v| v.genus as usize).sum();
    let torsion: Vec<BigInt> = snf
        .diagonal
        .iter()
        .filter(|d| **d > BigInt::one())
        .cloned()
        .collect();
    Ok(H1Invariants {
        free_rank: 2 * genus_sum + g.betti_one() + corank,
        torsion,
    })
}

/// Artin's fundamental cycle by Laufer's incremental algorithm.
pub fn fundamental_cycle(g: &PlumbingGraph) -> Result<Cycle, RealizationError> {
    require_connected(g)?;
    let m = g.intersection_matrix();
    if m.definiteness()? != Definiteness::NegativeDefinite {
        return Err(RealizationError::NotNegativeDefinite);
    }
    let n = g.len();
    let mut z = vec![BigInt::one(); n];
    loop {
        let prod = m.mul_vec(&z);
        match (0..n).find(|&i| prod[i].is_positive()) {
            Some(i) => z[i] += 1,
            None => break,
        }
    }
    Ok(Cycle::from_vec(g, z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyClass {
    Rational,
    MinimallyElliptic,
    Other,
}

impl TopologyClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            TopologyClass::Rational => "rational",
            TopologyClass::MinimallyElliptic => "minimally-elliptic",
            TopologyClass::Other => "other",
        }
    }
}

/// Arithmetic genus of the fundamental cycle:
/// `p_a(Z) = 1 + (Z.Z + Z.K) / 2` with `K.E_i = -e_i - 2 + 2 g_i`.
pub fn arithmetic_genus(g: &PlumbingGraph) -> Result<BigInt, RealizationError> {
    let z = fundamental_cycle(g)?.as_vec(g);
    let m = g.intersection_matrix();
    let mz = m.mul_vec(&z);
    let z_dot_z: BigInt = z.iter().zip(&mz).map(|(a, b)| a * b).sum();
    let z_dot_k: BigInt = g
        .vertices()
        .iter()
        .zip(&z)
        .map(|(v, zi)| zi * BigInt::from(-v.euler - 2 + 2 * i64::from(v.genus)))
        .sum();
    Ok(BigInt::one() + (z_dot_z + z_dot_k) / 2)
}

/// Rational iff `p_a(Z) = 0`; minimally elliptic iff `p_a(Z) = 1` and every
/// proper connected full subgraph is rational.
pub fn classify_topology(g: &PlumbingGraph) -> Result<TopologyClass, RealizationError> {
    require_connected(g)?;
    if g.intersection_matrix().definiteness()? != Definiteness::NegativeDefinite {
        return Err(RealizationError::NotNegativeDefinite);
    }
    let pa = arithmetic_genus(g)?;
    if pa.is_zero() {
        return Ok(TopologyClass::Rational);
    }
    if !pa.is_one() {
        return Ok(TopologyClass::Other);
    }
    let n = g.len();
    if n > 24 {
        return Err(RealizationError::TooLarge(n));
    }
    for mask in 1u32..((1u32 << n) - 1) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = induced_subgraph(g, &idx);
        if !sub.is_connected() {
            continue;
        }
        if !arithmetic_genus(&sub)?.is_zero() {
            return Ok(TopologyClass::Other);
        }
    }
    Ok(TopologyClass::MinimallyElliptic)
}

fn induced_subgraph(g: &PlumbingGraph, idx: &[usize]) -> PlumbingGraph {
    let keep: Vec<&str> = idx.iter().map(|&i| g.vertices()[i].id.as_str()).collect();
    let vertices: Vec<Vertex> = idx.iter().map(|&i| g.vertices()[i].clone()).collect();
    let edges = g
        .edges()
        .iter()
        .filter(|e| keep.contains(&e.a.as_str()) && keep.contains(&e.b.as_str()))
        .cloned()
        .collect();
    PlumbingGraph::new(vertices, edges, Vec::new()).expect("subset of a valid graph")
}

/// Attach `2 g_i + 1` arrows at every vertex with multiplicities chosen so
/// that the resulting multilink is principal in every analytic structure.
///
/// Splitting rule: solve `I x = -(1,...,1)`, scale by the least `t` that
/// makes `t x` integral and `t >= 2 g_i + 1` for all `i`, then split each
/// `b_i = t` into `2 g_i + 1` positive parts, largest parts first.
pub fn ubiquitous_link(g: &PlumbingGraph) -> Result<PlumbingGraph, RealizationError> {
    require_connected(g)?;
    if !g.arrows().is_empty() {
        return Err(RealizationError::ArrowsPresent);
    }
    let m = g.intersection_matrix();
    if m.definiteness()? != Definiteness::NegativeDefinite {
        return Err(RealizationError::NotNegativeDefinite);
    }
    let neg_ones = vec![BigInt::from(-1); g.len()];
    let x = m.solve_unique(&neg_ones)?;
    let mut denom_lcm = BigInt::one();
    for xi in &x {
        denom_lcm = denom_lcm.lcm(xi.denom());
    }
    let max_parts = g
        .vertices()
        .iter()
        .map(|v| 2 * u64::from(v.genus) + 1)
        .max()
        .unwrap_or(1);
    // smallest multiple of denom_lcm that is >= max_parts
    let need = BigInt::from(max_parts);
    let mut t = denom_lcm.clone();
    if t < need {
        let q = num_integer::Integer::div_ceil(&need, &denom_lcm);
        t = denom_lcm * q;
    }
    let t_u64 = u64::try_from(t).map_err(|_| {
        RealizationError::InvalidSolution("ubiquitous scaling overflows".into())
    })?;
    let mut arrows = Vec::new();
    for v in g.vertices() {
        let parts = 2 * u64::from(v.genus) + 1;
        let base = t_u64 / parts;
        let rem = t_u64 % parts;
        for k in 0..parts {
            let mult = if k < rem { base + 1 } else { base };
            arrows.push(Arrow {
                vertex: v.id.clone(),
                mult,
                name: Some(format!("u_{}_{}", v.id, k + 1)),
            });
        }
    }
    Ok(g.with_arrows(arrows).expect("same vertex set"))
}

/// For each leaf, the least multiplicity making the single-arrow multilink
/// pass the homology test: the order of the transverse circle's class in
/// the cokernel of `I(Delta)`.
pub fn end_curve_multiplicities(
    g: &PlumbingGraph,
) -> Result<BTreeMap<String, BigInt>, RealizationError> {
    require_connected(g)?;
    if !g.is_tree() {
        return Err(RealizationError::NotATree);
    }
    let m = g.intersection_matrix();
    if m.definiteness()? != Definiteness::NegativeDefinite {
        return Err(RealizationError::NotNegativeDefinite);
    }
    let snf = m.smith_normal_form();
    let mut out = BTreeMap::new();
    for (w, v) in g.vertices().iter().enumerate() {
        // single-vertex tree: the vertex itself is a leaf
        let deg = g.edges().iter().filter(|e| e.touches(&v.id)).count();
        if deg > 1 {
            continue;
        }
        // order of [e_w] in coker(I) = lcm_i d_i / gcd(d_i, (U e_w)_i)
        let mut order = BigInt::one();
        for i in 0..g.len() {
            let d = &snf.diagonal[i];
            if d.is_one() {
                continue;
            }
            let u_iw = snf.u.get(i, w);
            let q = d / d.gcd(u_iw);
            order = order.lcm(&q);
        }
        out.insert(v.id.clone(), order);
    }
    Ok(out)
}

fn require_connected(g: &PlumbingGraph) -> Result<(), RealizationError> {
    if g.is_empty() {
        return Err(RealizationError::Empty);
    }
    if !g.is_connected() {
        return Err(RealizationError::Disconnected);
    }
    Ok(())
}
