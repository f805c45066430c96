//! Splice diagrams: parsing/serialization, construction from resolution
//! trees by branch determinants, linking values by the path-product rule,
//! fiber Euler characteristics, the semigroup condition, edge-determinant
//! positivity, and the two obstruction certificates.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::graph::PlumbingGraph;
use crate::linalg::Definiteness;
use crate::realization::{self, PrincipalStatus, RealizationError};
use crate::semigroup::{semigroup_report, SemigroupError};

#[derive(Debug, Error)]
pub enum SpliceError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("duplicate id `{id}`")]
    DuplicateId { id: String },
    #[error("unknown id `{id}`")]
    UnknownId { id: String },
    #[error("underlying graph is not a tree")]
    NotATree,
    #[error("node `{id}` has valence {valence}, need >= 3")]
    NodeValence { id: String, valence: usize },
    #[error("leaf `{id}` has {edges} edges, need exactly 1")]
    LeafEdges { id: String, edges: usize },
    #[error("edge {a}--{b}: weight near `{side}` {problem}")]
    EdgeWeight { a: String, b: String, side: String, problem: String },
    #[error("weights and multiplicities must be >= 1")]
    NonPositiveWeight,
    #[error("no multilink arrow designated")]
    NoMultilink,
    #[error("diagram has arrows; pure manifold diagram required")]
    ArrowsPresent,
    #[error("resolution graph has a genus > 0 vertex")]
    PositiveGenus,
    #[error("resolution graph has no node (degenerate string)")]
    DegenerateString,
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Node,
    Leaf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceVertex {
    pub id: String,
    pub kind: VertexKind,
}

/// Edge with near-node weights; a weight is present exactly when that side
/// is a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceEdge {
    pub a: String,
    pub b: String,
    pub weight_near_a: Option<BigInt>,
    pub weight_near_b: Option<BigInt>,
}

impl SpliceEdge {
    pub fn touches(&self, id: &str) -> bool {
        self.a == id || self.b == id
    }

    pub fn other(&self, id: &str) -> &str {
        if self.a == id {
            &self.b
        } else {
            &self.a
        }
    }

    pub fn weight_near(&self, id: &str) -> Option<&BigInt> {
        if self.a == id {
            self.weight_near_a.as_ref()
        } else {
            self.weight_near_b.as_ref()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceArrow {
    pub vertex: String,
    pub weight: BigInt,
    pub mult: u64,
    pub name: String,
    pub decoration: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceDiagram {
    vertices: Vec<SpliceVertex>,
    edges: Vec<SpliceEdge>,
    arrows: Vec<SpliceArrow>,
    /// Marks "the knot of a transverse curve" at a leaf, by name.
    knot_marks: BTreeMap<String, String>,
}

/// Endpoint selector for linking values: a diagram vertex, an arrow (by
/// name), or a marked leaf knot (by name).
#[derive(Debug, Clone, PartialEq, Eq)]
enum Site {
    Vertex(usize),
    Arrow(usize),
}

impl SpliceDiagram {
    pub fn new(
        vertices: Vec<SpliceVertex>,
        edges: Vec<SpliceEdge>,
        arrows: Vec<SpliceArrow>,
        knot_marks: BTreeMap<String, String>,
    ) -> Result<Self, SpliceError> {
        let mut ids = HashSet::new();
        for v in &vertices {
            if !ids.insert(v.id.clone()) {
                return Err(SpliceError::DuplicateId { id: v.id.clone() });
            }
        }
        for e in &edges {
            for id in [&e.a, &e.b] {
                if !ids.contains(id) {
                    return Err(SpliceError::UnknownId { id: id.clone() });
                }
            }
        }
        for a in &arrows {
            if !ids.contains(&a.vertex) {
                return Err(SpliceError::UnknownId { id: a.vertex.clone() });
            }
            if !a.weight.is_positive() || a.mult == 0 {
                return Err(SpliceError::NonPositiveWeight);
            }
        }
        for (_, leaf) in &knot_marks {
            if !ids.contains(leaf) {
                return Err(SpliceError::UnknownId { id: leaf.clone() });
            }
        }
        let d = SpliceDiagram { vertices, edges, arrows, knot_marks };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), SpliceError> {
        // tree check (connected, acyclic) over real vertices
        if !self.vertices.is_empty() {
            if self.edges.len() != self.vertices.len() - 1 {
                return Err(SpliceError::NotATree);
            }
            let mut seen = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(self.vertices[0].id.as_str());
            queue.push_back(self.vertices[0].id.as_str());
            while let Some(v) = queue.pop_front() {
                for e in &self.edges {
                    if e.touches(v) {
                        let w = e.other(v);
                        if seen.insert(w) {
                            queue.push_back(w);
                        }
                    }
                }
            }
            if seen.len() != self.vertices.len() {
                return Err(SpliceError::NotATree);
            }
        }
        for v in &self.vertices {
            let n_edges = self.edges.iter().filter(|e| e.touches(&v.id)).count();
            let n_arrows = self.arrows.iter().filter(|a| a.vertex == v.id).count();
            match v.kind {
                VertexKind::Node => {
                    if n_edges + n_arrows < 3 {
                        return Err(SpliceError::NodeValence {
                            id: v.id.clone(),
                            valence: n_edges + n_arrows,
                        });
                    }
                }
                VertexKind::Leaf => {
                    if n_edges != 1 {
                        return Err(SpliceError::LeafEdges {
                            id: v.id.clone(),
                            edges: n_edges,
                        });
                    }
                }
            }
        }
        for e in &self.edges {
            for (side, other) in [(&e.a, &e.b), (&e.b, &e.a)] {
                let kind = self.vertex(side).unwrap().kind;
                let w = e.weight_near(side);
                match (kind, w) {
                    (VertexKind::Node, None) => {
                        return Err(SpliceError::EdgeWeight {
                            a: e.a.clone(),
                            b: e.b.clone(),
                            side: side.clone(),
                            problem: "missing (side is a node)".into(),
                        })
                    }
                    (VertexKind::Leaf, Some(_)) => {
                        return Err(SpliceError::EdgeWeight {
                            a: e.a.clone(),
                            b: e.b.clone(),
                            side: side.clone(),
                            problem: "present (side is a leaf)".into(),
                        })
                    }
                    (VertexKind::Node, Some(w)) if !w.is_positive() => {
                        return Err(SpliceError::NonPositiveWeight)
                    }
                    _ => {}
                }
                let _ = other;
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[SpliceVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SpliceEdge] {
        &self.edges
    }

    pub fn arrows(&self) -> &[SpliceArrow] {
        &self.arrows
    }

    pub fn knot_marks(&self) -> &BTreeMap<String, String> {
        &self.knot_marks
    }

    pub fn vertex(&self, id: &str) -> Option<&SpliceVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    fn vertex_pos(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    fn arrow_pos(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Resolve an endpoint token: vertex id, arrow name, or knot-mark name.
    fn resolve(&self, token: &str) -> Result<Site, SpliceError> {
        if let Some(i) = self.vertex_pos(token) {
            return Ok(Site::Vertex(i));
        }
        if let Some(i) = self.arrow_pos(token) {
            return Ok(Site::Arrow(i));
        }
        if let Some(leaf) = self.knot_marks.get(token) {
            let i = self
                .vertex_pos(leaf)
                .ok_or_else(|| SpliceError::UnknownId { id: leaf.clone() })?;
            return Ok(Site::Vertex(i));
        }
        Err(SpliceError::UnknownId { id: token.to_string() })
    }

    /// Vertex path between two sites; arrowheads contribute their
    /// attachment vertex.
    fn vertex_path(&self, a: &Site, b: &Site) -> Vec<usize> {
        let start = match a {
            Site::Vertex(i) => *i,
            Site::Arrow(i) => self.vertex_pos(&self.arrows[*i].vertex).unwrap(),
        };
        let goal = match b {
            Site::Vertex(i) => *i,
            Site::Arrow(i) => self.vertex_pos(&self.arrows[*i].vertex).unwrap(),
        };
        // BFS on the tree
        let mut prev: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(start);
        let mut seen = HashSet::new();
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            if v == goal {
                break;
            }
            let vid = &self.vertices[v].id;
            for e in &self.edges {
                if e.touches(vid) {
                    let w = self.vertex_pos(e.other(vid)).unwrap();
                    if seen.insert(w) {
                        prev.insert(w, v);
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut path = vec![goal];
        let mut cur = goal;
        while cur != start {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Product of the weights adjacent to the path between `a` and `b`:
    /// at every vertex on the path, multiply the weights on its edges and
    /// arrows that are not themselves on the path (empty product = 1).
    ///
    /// Vertices listed in `exclude` contribute no weights (used for the
    /// semigroup condition's l' values).
    fn path_product(&self, a: &Site, b: &Site, exclude: Option<usize>) -> BigInt {
        let path = self.vertex_path(a, b);
        let on_path: HashSet<usize> = path.iter().copied().collect();
        let mut prod = BigInt::one();
        for (step, &z) in path.iter().enumerate() {
            if Some(z) == exclude {
                continue;
            }
            let zid = &self.vertices[z].id;
            for e in &self.edges {
                if !e.touches(zid) {
                    continue;
                }
                let w = self.vertex_pos(e.other(zid)).unwrap();
                // an edge is on the path iff it joins consecutive path vertices
                let e_on_path = on_path.contains(&w)
                    && (path.get(step + 1) == Some(&w)
                        || (step > 0 && path[step - 1] == w));
                if e_on_path {
                    continue;
                }
                if let Some(weight) = e.weight_near(zid) {
                    prod *= weight;
                }
            }
            for (k, arrow) in self.arrows.iter().enumerate() {
                if arrow.vertex != *zid {
                    continue;
                }
                // an arrow is on the path iff it is one of the endpoints
                // attached at this vertex
                let is_endpoint = matches!(a, Site::Arrow(i) if *i == k)
                    || matches!(b, Site::Arrow(i) if *i == k);
                if is_endpoint {
                    continue;
                }
                prod *= &arrow.weight;
            }
        }
        prod
    }

    /// Linking value between `a` (vertex, arrow, or knot mark) and the
    /// arrow or marked knot `b`.
    pub fn linking_value(&self, a: &str, b: &str) -> Result<BigInt, SpliceError> {
        let sa = self.resolve(a)?;
        let sb = self.resolve(b)?;
        Ok(self.path_product(&sa, &sb, None))
    }

    /// Vertex multiplicities and fiber Euler characteristic for the
    /// multilink consisting of the named arrows. Every diagram vertex and
    /// every decoration arrowhead contributes `(2 - delta_z) * m_z` where
    /// `m_z` sums `mult * linking_value` over the multilink arrows and
    /// `delta_z` counts edges plus all arrows.
    pub fn chi_for_multilink(
        &self,
        multilink: &[String],
    ) -> Result<(BTreeMap<String, BigInt>, BigInt), SpliceError> {
        if multilink.is_empty() {
            return Err(SpliceError::NoMultilink);
        }
        let mut ml_arrows = Vec::new();
        for name in multilink {
            let i = self
                .arrow_pos(name)
                .ok_or_else(|| SpliceError::UnknownId { id: name.clone() })?;
            ml_arrows.push(i);
        }
        let mut mults = BTreeMap::new();
        let mut chi = BigInt::zero();
        for (zi, z) in self.vertices.iter().enumerate() {
            let delta = self.edges.iter().filter(|e| e.touches(&z.id)).count()
                + self.arrows.iter().filter(|a| a.vertex == z.id).count();
            let mut m = BigInt::zero();
            for &ai in &ml_arrows {
                m += BigInt::from(self.arrows[ai].mult)
                    * self.path_product(&Site::Vertex(zi), &Site::Arrow(ai), None);
            }
            chi += BigInt::from(2i64 - delta as i64) * &m;
            mults.insert(z.id.clone(), m);
        }
        // decoration arrowheads: delta = 1
        for (k, arrow) in self.arrows.iter().enumerate() {
            if ml_arrows.contains(&k) {
                continue;
            }
            let mut m = BigInt::zero();
            for &ai in &ml_arrows {
                m += BigInt::from(self.arrows[ai].mult)
                    * self.path_product(&Site::Arrow(k), &Site::Arrow(ai), None);
            }
            chi += &m;
            mults.insert(arrow.name.clone(), m);
        }
        Ok((mults, chi))
    }

    /// Default multilink: all non-decoration arrows.
    pub fn default_multilink(&self) -> Vec<String> {
        self.arrows
            .iter()
            .filter(|a| !a.decoration)
            .map(|a| a.name.clone())
            .collect()
    }

    /// The semigroup condition: for every node `v` and every edge at `v`
    /// leading to another node, the near weight at `v` must lie in the
    /// semigroup generated by the l' values of the leaves beyond that
    /// edge (path products that skip the weights at `v` itself).
    pub fn semigroup_condition(&self) -> Result<SemigroupConditionReport, SpliceError> {
        if !self.arrows.is_empty() {
            return Err(SpliceError::ArrowsPresent);
        }
        let mut failures = Vec::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            if v.kind != VertexKind::Node {
                continue;
            }
            for e in &self.edges {
                if !e.touches(&v.id) {
                    continue;
                }
                let across = e.other(&v.id);
                if self.vertex(across).unwrap().kind != VertexKind::Node {
                    continue;
                }
                let weight = e.weight_near(&v.id).unwrap().clone();
                // leaves in the subtree beyond e, seen from v
                let beyond = self.subtree_beyond(&v.id, across);
                let mut gens: Vec<u64> = Vec::new();
                let mut oversized = false;
                for leaf in beyond
                    .iter()
                    .filter(|id| self.vertex(id).unwrap().kind == VertexKind::Leaf)
                {
                    let li = self.vertex_pos(leaf).unwrap();
                    let val =
                        self.path_product(&Site::Vertex(vi), &Site::Vertex(li), Some(vi));
                    match u64::try_from(val) {
                        Ok(x) => gens.push(x),
                        Err(_) => oversized = true,
                    }
                }
                if oversized || gens.is_empty() {
                    failures.push((v.id.clone(), across.to_string()));
                    continue;
                }
                if !in_semigroup(&weight, &gens)? {
                    failures.push((v.id.clone(), across.to_string()));
                }
            }
        }
        Ok(SemigroupConditionReport {
            holds: failures.is_empty(),
            failures,
        })
    }

    fn subtree_beyond(&self, from: &str, first: &str) -> Vec<String> {
        let mut seen: HashSet<&str> = HashSet::new();
        seen.insert(from);
        seen.insert(first);
        let mut out = vec![first.to_string()];
        let mut queue = VecDeque::new();
        queue.push_back(first);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                if e.touches(v) {
                    let w = e.other(v);
                    if seen.insert(w) {
                        out.push(w.to_string());
                        queue.push_back(w);
                    }
                }
            }
        }
        out
    }

    /// Edge determinant positivity on every node-node edge:
    /// `w_a * w_b - (product of other weights at a) * (same at b) > 0`.
    pub fn edge_determinant_check(&self) -> bool {
        for e in &self.edges {
            let (ka, kb) = (
                self.vertex(&e.a).unwrap().kind,
                self.vertex(&e.b).unwrap().kind,
            );
            if ka != VertexKind::Node || kb != VertexKind::Node {
                continue;
            }
            let wa = e.weight_near(&e.a).unwrap();
            let wb = e.weight_near(&e.b).unwrap();
            let other = |id: &str| -> BigInt {
                let mut p = BigInt::one();
                for f in &self.edges {
                    if f.touches(id) && !(f == e) {
                        if let Some(w) = f.weight_near(id) {
                            p *= w;
                        }
                    }
                }
                for a in &self.arrows {
                    if a.vertex == id {
                        p *= &a.weight;
                    }
                }
                p
            };
            if wa * wb - other(&e.a) * other(&e.b) <= BigInt::zero() {
                return false;
            }
        }
        true
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let marks_by_leaf: BTreeMap<&String, &String> =
            self.knot_marks.iter().map(|(k, v)| (v, k)).collect();
        for v in &self.vertices {
            match v.kind {
                VertexKind::Node => {
                    let _ = writeln!(out, "node {}", v.id);
                }
                VertexKind::Leaf => match marks_by_leaf.get(&v.id) {
                    Some(name) => {
                        let _ = writeln!(out, "leaf {} knot={}", v.id, name);
                    }
                    None => {
                        let _ = writeln!(out, "leaf {}", v.id);
                    }
                },
            }
        }
        for e in &self.edges {
            let mut line = format!("edge {} {}", e.a, e.b);
            if let Some(w) = &e.weight_near_a {
                let _ = write!(line, " wA={w}");
            }
            if let Some(w) = &e.weight_near_b {
                let _ = write!(line, " wB={w}");
            }
            let _ = writeln!(out, "{line}");
        }
        for a in &self.arrows {
            let mut line = format!(
                "arrow {} w={} mult={} name={}",
                a.vertex, a.weight, a.mult, a.name
            );
            if a.decoration {
                line.push_str(" decoration");
            }
            let _ = writeln!(out, "{line}");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertices": self.vertices.iter().map(|v| json!({
                "id": v.id,
                "kind": match v.kind { VertexKind::Node => "node", VertexKind::Leaf => "leaf" },
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "a": e.a, "b": e.b,
                "weight_near_a": e.weight_near_a.as_ref().map(|w| w.to_string()),
                "weight_near_b": e.weight_near_b.as_ref().map(|w| w.to_string()),
            })).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|a| json!({
                "vertex": a.vertex,
                "weight": a.weight.to_string(),
                "mult": a.mult,
                "name": a.name,
                "decoration": a.decoration,
            })).collect::<Vec<_>>(),
            "knot_marks": self.knot_marks,
        })
    }
}

fn in_semigroup(value: &BigInt, gens: &[u64]) -> Result<bool, SemigroupError> {
    let Ok(v) = u64::try_from(value.clone()) else {
        // huge values beyond the conductor of a cofinite semigroup are in;
        // otherwise fall back to a direct bounded check
        let report = semigroup_report(gens)?;
        return Ok(match (report.cofinite, report.gaps) {
            (true, Some(gaps)) => gaps
                .last()
                .map_or(true, |top| value > &BigInt::from(*top)),
            _ => false,
        });
    };
    if v == 0 {
        return Ok(true);
    }
    let gcd = gens.iter().fold(0u64, |acc, &g| acc.gcd(&g));
    if gcd != 1 {
        // membership in a non-cofinite semigroup: reduce by the gcd
        if v % gcd != 0 {
            return Ok(false);
        }
        let reduced: Vec<u64> = gens.iter().map(|g| g / gcd).collect();
        return in_semigroup(&BigInt::from(v / gcd), &reduced);
    }
    let report = semigroup_report(gens)?;
    let gaps = report.gaps.expect("cofinite");
    Ok(!gaps.contains(&v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupConditionReport {
    pub holds: bool,
    /// (node, first vertex across the offending edge)
    pub failures: Vec<(String, String)>,
}

/// Outcome of an obstruction query; precondition failures are reported as
/// not-applicable, never as obstructed.
#[derive(Debug, Clone)]
pub enum ObstructionOutcome {
    NotApplicable { reason: String },
    Checked(ObstructionCertificate),
}

#[derive(Debug, Clone)]
pub struct ObstructionCertificate {
    pub obstructed: bool,
    /// linking values of the realized knots with the target
    pub values: Vec<BigInt>,
    /// `2 * gap_count` of the semigroup generated by `values`
    pub mu_bound: BigInt,
    /// `1 - chi` of the target multilink
    pub mu_top: BigInt,
}

/// Semigroup/delta/mu obstruction: if knots `realized` are principal on an
/// analytic structure, the semigroup of values of a function cutting the
/// target contains their linking values with the target; the gap count
/// bounds delta, hence mu <= 2*delta, which the target's own Milnor number
/// may contradict.
pub fn semigroup_obstruction(
    d: &SpliceDiagram,
    realized: &[String],
    target: &str,
) -> Result<ObstructionOutcome, SpliceError> {
    let Some(ti) = d.arrow_pos(target) else {
        return Err(SpliceError::UnknownId { id: target.to_string() });
    };
    if d.arrows()[ti].mult != 1 {
        return Ok(ObstructionOutcome::NotApplicable {
            reason: "target multiplicity is not 1".into(),
        });
    }
    if realized.iter().any(|r| r == target) {
        return Ok(ObstructionOutcome::NotApplicable {
            reason: "target is in the realized set".into(),
        });
    }
    let mut values = Vec::new();
    for r in realized {
        values.push(d.linking_value(r, target)?);
    }
    let mut gens = Vec::new();
    for v in &values {
        match u64::try_from(v.clone()) {
            Ok(x) if x >= 1 => gens.push(x),
            _ => {
                return Ok(ObstructionOutcome::NotApplicable {
                    reason: "linking value out of range".into(),
                })
            }
        }
    }
    if gens.is_empty() {
        return Ok(ObstructionOutcome::NotApplicable {
            reason: "no realized knots given".into(),
        });
    }
    let gcd = gens.iter().fold(0u64, |acc, &g| acc.gcd(&g));
    if gcd != 1 {
        return Ok(ObstructionOutcome::NotApplicable {
            reason: "linking values are not coprime".into(),
        });
    }
    let report = semigroup_report(&gens)?;
    let gap_count = report.gap_count().expect("cofinite");
    let mu_bound = BigInt::from(2 * gap_count as u64);
    let (_, chi) = d.chi_for_multilink(&[target.to_string()])?;
    let mu_top = BigInt::one() - chi;
    Ok(ObstructionOutcome::Checked(ObstructionCertificate {
        obstructed: mu_top > mu_bound,
        values,
        mu_bound,
        mu_top,
    }))
}

#[derive(Debug, Clone)]
pub enum SmoothnessOutcome {
    NotApplicable { reason: String },
    Checked { obstructed: bool, chi_target: BigInt },
}

/// Multiplicity-1 smoothness obstruction on a plumbing graph: when a
/// realized knot's total transform has multiplicity 1 at the target's
/// attachment curve, the target curve is smooth, so the target's Milnor
/// fiber would be a disk; its fiber Euler characteristic must then be 1.
pub fn smoothness_obstruction(
    g: &PlumbingGraph,
    realized_arrow: &str,
    target_arrow: &str,
) -> Result<SmoothnessOutcome, SpliceError> {
    let find = |name: &str| {
        g.arrows()
            .iter()
            .find(|a| a.name.as_deref() == Some(name))
            .cloned()
    };
    let Some(realized) = find(realized_arrow) else {
        return Err(SpliceError::UnknownId { id: realized_arrow.to_string() });
    };
    let Some(target) = find(target_arrow) else {
        return Err(SpliceError::UnknownId { id: target_arrow.to_string() });
    };
    if realized_arrow == target_arrow {
        return Ok(SmoothnessOutcome::NotApplicable {
            reason: "realized and target arrows coincide".into(),
        });
    }
    if realized.mult != 1 || target.mult != 1 {
        return Ok(SmoothnessOutcome::NotApplicable {
            reason: "both arrows must have multiplicity 1".into(),
        });
    }
    let g_realized = g.with_arrows(vec![realized.clone()]).expect("same vertices");
    let g_target = g.with_arrows(vec![target.clone()]).expect("same vertices");
    let v_realized = realization::principal_check(&g_realized)?;
    let v_target = realization::principal_check(&g_target)?;
    if v_realized.status != PrincipalStatus::Principal
        || v_target.status != PrincipalStatus::Principal
    {
        return Ok(SmoothnessOutcome::NotApplicable {
            reason: "both multilinks must individually be principal".into(),
        });
    }
    let sol = v_realized.solution.expect("principal");
    if !sol.coefficients[&target.vertex].is_one() {
        return Ok(SmoothnessOutcome::NotApplicable {
            reason: "realized solution value at the target vertex is not 1".into(),
        });
    }
    let chi_target = realization::fiber_euler_characteristic(&g_target)?;
    Ok(SmoothnessOutcome::Checked {
        obstructed: !chi_target.is_one(),
        chi_target,
    })
}

/// Condense a negative-definite genus-0 resolution tree into its splice
/// diagram: nodes are the valence >= 3 vertices, chains are suppressed,
/// edge weights are branch determinants, and arrows are carried over with
/// the determinant of the chain beyond their attachment.
pub fn splice_from_resolution(g: &PlumbingGraph) -> Result<SpliceDiagram, SpliceError> {
    if g.is_empty() || !g.is_tree() {
        return Err(SpliceError::NotATree);
    }
    if g.vertices().iter().any(|v| v.genus > 0) {
        return Err(SpliceError::PositiveGenus);
    }
    let m = g.intersection_matrix();
    if m.definiteness().map_err(RealizationError::from)? != Definiteness::NegativeDefinite {
        return Err(SpliceError::Realization(
            RealizationError::NotNegativeDefinite,
        ));
    }

    let deg = |id: &str| g.valence(id).expect("own vertex");
    let node_ids: Vec<String> = g
        .vertices()
        .iter()
        .filter(|v| deg(&v.id) >= 3)
        .map(|v| v.id.clone())
        .collect();
    if node_ids.is_empty() {
        return Err(SpliceError::DegenerateString);
    }

    // |det| of the intersection matrix restricted to a vertex id set
    let branch_det = |ids: &[String]| -> BigInt {
        if ids.is_empty() {
            return BigInt::one();
        }
        let idx: Vec<usize> = ids.iter().map(|id| g.vertex_index(id).unwrap()).collect();
        m.principal_submatrix(&idx)
            .determinant()
            .expect("square")
            .abs()
    };
    // all vertices on the far side of the edge (v -> first)
    let component_beyond = |v: &str, first: &str| -> Vec<String> {
        let mut seen: HashSet<&str> = HashSet::new();
        seen.insert(v);
        seen.insert(first);
        let mut out = vec![first.to_string()];
        let mut queue = VecDeque::new();
        queue.push_back(first);
        while let Some(x) = queue.pop_front() {
            for e in g.edges() {
                if e.touches(x) {
                    let w = e.other(x);
                    if seen.insert(w) {
                        out.push(w.to_string());
                        queue.push_back(w);
                    }
                }
            }
        }
        out
    };

    let mut vertices: Vec<SpliceVertex> = node_ids
        .iter()
        .map(|id| SpliceVertex { id: id.clone(), kind: VertexKind::Node })
        .collect();
    let mut edges: Vec<SpliceEdge> = Vec::new();
    let mut arrows: Vec<SpliceArrow> = Vec::new();
    let mut done_node_edges: HashSet<(String, String)> = HashSet::new();

    for node in &node_ids {
        // walk every direction out of the node
        for e in g.edges().iter().filter(|e| e.touches(node)) {
            let first = e.other(node).to_string();
            // follow the chain of valence-2 vertices
            let mut prev = node.clone();
            let mut cur = first.clone();
            let mut chain: Vec<String> = Vec::new();
            let terminal;
            loop {
                if deg(&cur) >= 3 {
                    terminal = Terminal::Node(cur.clone());
                    break;
                }
                let cur_edges: Vec<&crate::graph::Edge> =
                    g.edges().iter().filter(|f| f.touches(&cur)).collect();
                let cur_arrows: Vec<&crate::graph::Arrow> =
                    g.arrows().iter().filter(|a| a.vertex == cur).collect();
                if cur_edges.len() == 1 && cur_arrows.is_empty() {
                    chain.push(cur.clone());
                    terminal = Terminal::Leaf(cur.clone());
                    break;
                }
                if cur_edges.len() == 1 && cur_arrows.len() == 1 {
                    chain.push(cur.clone());
                    terminal = Terminal::Arrowhead(cur_arrows[0].clone());
                    break;
                }
                // valence 2 through-vertex
                chain.push(cur.clone());
                let next = cur_edges
                    .iter()
                    .map(|f| f.other(&cur).to_string())
                    .find(|w| *w != prev)
                    .expect("chain continues");
                prev = cur;
                cur = next;
            }
            match terminal {
                Terminal::Node(other) => {
                    let key = if *node < other {
                        (node.clone(), other.clone())
                    } else {
                        (other.clone(), node.clone())
                    };
                    if !done_node_edges.insert(key) {
                        continue;
                    }
                    let w_near_node = branch_det(&component_beyond(node, &first));
                    let back_first = {
                        // first step back from `other` toward `node`
                        let back = if chain.is_empty() {
                            node.clone()
                        } else {
                            chain.last().unwrap().clone()
                        };
                        back
                    };
                    let w_near_other = branch_det(&component_beyond(&other, &back_first));
                    edges.push(SpliceEdge {
                        a: node.clone(),
                        b: other.clone(),
                        weight_near_a: Some(w_near_node),
                        weight_near_b: Some(w_near_other),
                    });
                }
                Terminal::Leaf(leaf) => {
                    vertices.push(SpliceVertex { id: leaf.clone(), kind: VertexKind::Leaf });
                    let w = branch_det(&component_beyond(node, &first));
                    edges.push(SpliceEdge {
                        a: node.clone(),
                        b: leaf,
                        weight_near_a: Some(w),
                        weight_near_b: None,
                    });
                }
                Terminal::Arrowhead(arrow) => {
                    let w = branch_det(&chain);
                    arrows.push(SpliceArrow {
                        vertex: node.clone(),
                        weight: w,
                        mult: arrow.mult,
                        name: arrow
                            .name
                            .clone()
                            .unwrap_or_else(|| format!("arrow_{}", arrows.len() + 1)),
                        decoration: false,
                    });
                }
            }
        }
        // arrows attached directly at the node: empty chain, weight 1
        for a in g.arrows().iter().filter(|a| a.vertex == *node) {
            arrows.push(SpliceArrow {
                vertex: node.clone(),
                weight: BigInt::one(),
                mult: a.mult,
                name: a
                    .name
                    .clone()
                    .unwrap_or_else(|| format!("arrow_{}", arrows.len() + 1)),
                decoration: false,
            });
        }
    }
    SpliceDiagram::new(vertices, edges, arrows, BTreeMap::new())
}

enum Terminal {
    Node(String),
    Leaf(String),
    Arrowhead(crate::graph::Arrow),
}

/// Parse the line-oriented splice file format.
pub fn parse_splice(text: &str) -> Result<SpliceDiagram, SpliceError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut arrows = Vec::new();
    let mut knot_marks = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let keyword = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        let syntax = |msg: String| SpliceError::Syntax { line, msg };
        match keyword {
            "node" => {
                let [id] = rest[..] else {
                    return Err(syntax("node requires exactly one id".into()));
                };
                vertices.push(SpliceVertex { id: id.to_string(), kind: VertexKind::Node });
            }
            "leaf" => {
                let (id, fields) = rest
                    .split_first()
                    .ok_or_else(|| syntax("leaf requires an id".into()))?;
                vertices.push(SpliceVertex { id: id.to_string(), kind: VertexKind::Leaf });
                for f in fields {
                    if let Some(name) = f.strip_prefix("knot=") {
                        knot_marks.insert(name.to_string(), id.to_string());
                    } else {
                        return Err(syntax(format!("unexpected field `{f}`")));
                    }
                }
            }
            "edge" => {
                if rest.len() < 2 {
                    return Err(syntax("edge requires two ids".into()));
                }
                let (a, b) = (rest[0].to_string(), rest[1].to_string());
                let mut wa = None;
                let mut wb = None;
                for f in &rest[2..] {
                    if let Some(v) = f.strip_prefix("wA=") {
                        wa = Some(v.parse::<BigInt>().map_err(|_| {
                            syntax(format!("bad weight `{v}`"))
                        })?);
                    } else if let Some(v) = f.strip_prefix("wB=") {
                        wb = Some(v.parse::<BigInt>().map_err(|_| {
                            syntax(format!("bad weight `{v}`"))
                        })?);
                    } else {
                        return Err(syntax(format!("unexpected field `{f}`")));
                    }
                }
                edges.push(SpliceEdge { a, b, weight_near_a: wa, weight_near_b: wb });
            }
            "arrow" => {
                let (id, fields) = rest
                    .split_first()
                    .ok_or_else(|| syntax("arrow requires a vertex id".into()))?;
                let mut weight = None;
                let mut mult = None;
                let mut name = None;
                let mut decoration = false;
                for f in fields {
                    if let Some(v) = f.strip_prefix("w=") {
                        weight = Some(v.parse::<BigInt>().map_err(|_| {
                            syntax(format!("bad weight `{v}`"))
                        })?);
                    } else if let Some(v) = f.strip_prefix("mult=") {
                        mult = Some(v.parse::<u64>().map_err(|_| {
                            syntax(format!("bad multiplicity `{v}`"))
                        })?);
                    } else if let Some(v) = f.strip_prefix("name=") {
                        name = Some(v.to_string());
                    } else if *f == "decoration" {
                        decoration = true;
                    } else {
                        return Err(syntax(format!("unexpected field `{f}`")));
                    }
                }
                arrows.push(SpliceArrow {
                    vertex: id.to_string(),
                    weight: weight.ok_or_else(|| syntax("arrow requires w=<uint>".into()))?,
                    mult: mult.ok_or_else(|| syntax("arrow requires mult=<uint>".into()))?,
                    name: name.ok_or_else(|| syntax("arrow requires name=<token>".into()))?,
                    decoration,
                });
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    SpliceDiagram::new(vertices, edges, arrows, knot_marks)
}
