//! Plumbing graphs decorated as multilinks: data model, validation, the
//! line-oriented file format, DOT/JSON export, the intersection matrix and
//! the blow-down move.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;
use thiserror::Error;

use crate::linalg::ExactMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("duplicate vertex id `{id}`")]
    DuplicateId { id: String },
    #[error("unknown vertex id `{id}`")]
    UnknownId { id: String },
    #[error("arrow multiplicity must be >= 1")]
    ZeroMultiplicity,
    #[error("self-loop edge at `{id}`")]
    SelfLoop { id: String },
    #[error("blow-down: vertex `{id}` has euler {euler}, expected -1")]
    BlowDownEuler { id: String, euler: i64 },
    #[error("blow-down: vertex `{id}` has genus {genus} > 0")]
    BlowDownGenus { id: String, genus: u32 },
    #[error("blow-down: vertex `{id}` carries an arrow")]
    BlowDownArrow { id: String },
    #[error("blow-down: vertex `{id}` has valence {valence} > 2")]
    BlowDownValence { id: String, valence: usize },
    #[error("blow-down: vertex `{id}` is isolated")]
    BlowDownIsolated { id: String },
    #[error("blow-down: neighbors of `{id}` coincide")]
    BlowDownNeighborsCoincide { id: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub euler: i64,
    pub genus: u32,
}

/// Unordered pair of distinct vertex ids; multi-edges are separate entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: String,
    pub b: String,
}

impl Edge {
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
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub vertex: String,
    pub mult: u64,
    pub name: Option<String>,
}

/// Dual graph of a resolution, decorated with multilink arrows. Vertex
/// order is declaration order and fixes the index order of the
/// intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    arrows: Vec<Arrow>,
    index: HashMap<String, usize>,
}

/// Integer divisor supported on the exceptional set, keyed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub coefficients: BTreeMap<String, BigInt>,
}

/// Rational variant (monodromical solutions before integrality is known).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCycle {
    pub coefficients: BTreeMap<String, BigRational>,
}

impl Cycle {
    /// Coefficients in the graph's vertex order.
    pub fn as_vec(&self, g: &PlumbingGraph) -> Vec<BigInt> {
        g.vertices()
            .iter()
            .map(|v| self.coefficients[&v.id].clone())
            .collect()
    }

    pub fn from_vec(g: &PlumbingGraph, v: Vec<BigInt>) -> Self {
        let coefficients = g
            .vertices()
            .iter()
            .zip(v)
            .map(|(vx, c)| (vx.id.clone(), c))
            .collect();
        Cycle { coefficients }
    }
}

impl RationalCycle {
    pub fn as_vec(&self, g: &PlumbingGraph) -> Vec<BigRational> {
        g.vertices()
            .iter()
            .map(|v| self.coefficients[&v.id].clone())
            .collect()
    }

    pub fn from_vec(g: &PlumbingGraph, v: Vec<BigRational>) -> Self {
        let coefficients = g
            .vertices()
            .iter()
            .zip(v)
            .map(|(vx, c)| (vx.id.clone(), c))
            .collect();
        RationalCycle { coefficients }
    }
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl PlumbingGraph {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        arrows: Vec<Arrow>,
    ) -> Result<Self, GraphError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId { id: v.id.clone() });
            }
        }
        for e in &edges {
            for id in [&e.a, &e.b] {
                if !index.contains_key(id) {
                    return Err(GraphError::UnknownId { id: id.clone() });
                }
            }
            if e.a == e.b {
                return Err(GraphError::SelfLoop { id: e.a.clone() });
            }
        }
        for a in &arrows {
            if !index.contains_key(&a.vertex) {
                return Err(GraphError::UnknownId { id: a.vertex.clone() });
            }
            if a.mult == 0 {
                return Err(GraphError::ZeroMultiplicity);
            }
        }
        Ok(PlumbingGraph { vertices, edges, arrows, index })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertex_index(id).map(|i| &self.vertices[i])
    }

    pub fn edge_count_between(&self, a: &str, b: &str) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .count()
    }

    /// Number of edge-endpoints plus arrows at `v`; each strand of a
    /// multi-edge counts.
    pub fn valence(&self, v: &str) -> Result<usize, GraphError> {
        if !self.index.contains_key(v) {
            return Err(GraphError::UnknownId { id: v.to_string() });
        }
        let from_edges = self.edges.iter().filter(|e| e.touches(v)).count();
        let from_arrows = self.arrows.iter().filter(|a| a.vertex == v).count();
        Ok(from_edges + from_arrows)
    }

    /// Symmetric intersection matrix: diagonal = euler numbers,
    /// off-diagonal (i,j) = number of edges between v_i and v_j.
    pub fn intersection_matrix(&self) -> ExactMatrix {
        let n = self.len();
        let mut m = ExactMatrix::zero(n, n);
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, BigInt::from(v.euler));
        }
        for e in &self.edges {
            let i = self.index[&e.a];
            let j = self.index[&e.b];
            let v: BigInt = m.get(i, j) + 1;
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
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
        seen.len() == self.vertices.len()
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.is_connected()
            && self.edges.len() == self.vertices.len() - 1
    }

    /// First Betti number of the underlying graph (multi-edges counted).
    pub fn betti_one(&self) -> usize {
        let components = self.component_count();
        self.edges.len() + components - self.vertices.len()
    }

    fn component_count(&self) -> usize {
        let mut seen: HashSet<&str> = HashSet::new();
        let mut count = 0;
        for v in &self.vertices {
            if seen.contains(v.id.as_str()) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::new();
            seen.insert(v.id.as_str());
            queue.push_back(v.id.as_str());
            while let Some(x) = queue.pop_front() {
                for e in &self.edges {
                    if e.touches(x) {
                        let w = e.other(x);
                        if seen.insert(w) {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        count
    }

    /// Blow down a -1 genus-0 arrowless vertex of valence <= 2 with
    /// distinct neighbors.
    pub fn blow_down(&self, v: &str) -> Result<PlumbingGraph, GraphError> {
        let vi = self
            .vertex_index(v)
            .ok_or_else(|| GraphError::UnknownId { id: v.to_string() })?;
        let vx = &self.vertices[vi];
        if vx.euler != -1 {
            return Err(GraphError::BlowDownEuler {
                id: v.to_string(),
                euler: vx.euler,
            });
        }
        if vx.genus != 0 {
            return Err(GraphError::BlowDownGenus {
                id: v.to_string(),
                genus: vx.genus,
            });
        }
        if self.arrows.iter().any(|a| a.vertex == v) {
            return Err(GraphError::BlowDownArrow { id: v.to_string() });
        }
        let neighbors: Vec<&str> = self
            .edges
            .iter()
            .filter(|e| e.touches(v))
            .map(|e| e.other(v))
            .collect();
        if neighbors.len() > 2 {
            return Err(GraphError::BlowDownValence {
                id: v.to_string(),
                valence: neighbors.len(),
            });
        }
        if neighbors.is_empty() {
            return Err(GraphError::BlowDownIsolated { id: v.to_string() });
        }
        if neighbors.len() == 2 && neighbors[0] == neighbors[1] {
            return Err(GraphError::BlowDownNeighborsCoincide { id: v.to_string() });
        }
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .filter(|w| w.id != v)
            .cloned()
            .collect();
        for w in &mut vertices {
            if neighbors.contains(&w.id.as_str()) {
                w.euler += 1;
            }
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !e.touches(v))
            .cloned()
            .collect();
        if neighbors.len() == 2 {
            edges.push(Edge {
                a: neighbors[0].to_string(),
                b: neighbors[1].to_string(),
            });
        }
        PlumbingGraph::new(vertices, edges, self.arrows.clone())
    }

    /// Same graph with a different arrow list (vertices/edges shared).
    pub fn with_arrows(&self, arrows: Vec<Arrow>) -> Result<PlumbingGraph, GraphError> {
        PlumbingGraph::new(self.vertices.clone(), self.edges.clone(), arrows)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            if v.genus == 0 {
                let _ = writeln!(out, "vertex {} euler={}", v.id, v.euler);
            } else {
                let _ = writeln!(out, "vertex {} euler={} genus={}", v.id, v.euler, v.genus);
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "edge {} {}", e.a, e.b);
        }
        for a in &self.arrows {
            let _ = match &a.name {
                Some(name) => {
                    writeln!(out, "arrow {} mult={} name={}", a.vertex, a.mult, name)
                }
                None => writeln!(out, "arrow {} mult={}", a.vertex, a.mult),
            };
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph plumbing {\n");
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "  {} [label=\"{}\\ne={},g={}\"];",
                v.id, v.id, v.euler, v.genus
            );
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {};", e.a, e.b);
        }
        for (k, a) in self.arrows.iter().enumerate() {
            let label = match &a.name {
                Some(n) => format!("{} ({})", n, a.mult),
                None => format!("({})", a.mult),
            };
            let _ = writeln!(
                out,
                "  arrowhead{} [shape=rarrow, label=\"{}\"];",
                k, label
            );
            let _ = writeln!(out, "  {} -- arrowhead{};", a.vertex, k);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertices": self.vertices.iter().map(|v| json!({
                "id": v.id, "euler": v.euler, "genus": v.genus,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!([e.a, e.b])).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|a| {
                let mut o = json!({ "vertex": a.vertex, "mult": a.mult });
                if let Some(n) = &a.name {
                    o["name"] = json!(n);
                }
                o
            }).collect::<Vec<_>>(),
        })
    }
}

/// Parse the line-oriented plumbing file format. `#` starts a comment,
/// blank lines are ignored, and vertex order is declaration order.
pub fn parse_plumbing(text: &str) -> Result<PlumbingGraph, GraphError> {
    let mut vertices = Vec::new();
    let mut edges: Vec<(Edge, usize)> = Vec::new();
    let mut arrows: Vec<(Arrow, usize)> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let col_of = |tok: &str| content.find(tok).map(|i| i + 1).unwrap_or(1);
        let mut words = content.split_whitespace();
        let keyword = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        match keyword {
            "vertex" => {
                let (id, fields) = rest.split_first().ok_or_else(|| GraphError::Syntax {
                    line,
                    col: content.len(),
                    msg: "vertex requires an id".into(),
                })?;
                if !valid_token(id) {
                    return Err(GraphError::Syntax {
                        line,
                        col: col_of(id),
                        msg: format!("invalid id `{id}`"),
                    });
                }
                if !seen.insert(id.to_string()) {
                    return Err(GraphError::DuplicateId { id: id.to_string() });
                }
                let mut euler: Option<i64> = None;
                let mut genus: u32 = 0;
                for f in fields {
                    if let Some(v) = f.strip_prefix("euler=") {
                        euler = Some(v.parse().map_err(|_| GraphError::Syntax {
                            line,
                            col: col_of(f),
                            msg: format!("bad euler number `{v}`"),
                        })?);
                    } else if let Some(v) = f.strip_prefix("genus=") {
                        genus = v.parse().map_err(|_| GraphError::Syntax {
                            line,
                            col: col_of(f),
                            msg: format!("bad genus `{v}` (must be a non-negative integer)"),
                        })?;
                    } else {
                        return Err(GraphError::Syntax {
                            line,
                            col: col_of(f),
                            msg: format!("unexpected field `{f}`"),
                        });
                    }
                }
                let euler = euler.ok_or_else(|| GraphError::Syntax {
                    line,
                    col: 1,
                    msg: "vertex requires euler=<int>".into(),
                })?;
                vertices.push(Vertex { id: id.to_string(), euler, genus });
            }
            "edge" => {
                if rest.len() != 2 {
                    return Err(GraphError::Syntax {
                        line,
                        col: 1,
                        msg: "edge requires exactly two vertex ids".into(),
                    });
                }
                edges.push((
                    Edge { a: rest[0].to_string(), b: rest[1].to_string() },
                    line,
                ));
            }
            "arrow" => {
                let (id, fields) = rest.split_first().ok_or_else(|| GraphError::Syntax {
                    line,
                    col: 1,
                    msg: "arrow requires a vertex id".into(),
                })?;
                let mut mult: Option<u64> = None;
                let mut name: Option<String> = None;
                for f in fields {
                    if let Some(v) = f.strip_prefix("mult=") {
                        mult = Some(v.parse().map_err(|_| GraphError::Syntax {
                            line,
                            col: col_of(f),
                            msg: format!("bad multiplicity `{v}`"),
                        })?);
                    } else if let Some(v) = f.strip_prefix("name=") {
                        if !valid_token(v) {
                            return Err(GraphError::Syntax {
                                line,
                                col: col_of(f),
                                msg: format!("invalid name `{v}`"),
                            });
                        }
                        name = Some(v.to_string());
                    } else {
                        return Err(GraphError::Syntax {
                            line,
                            col: col_of(f),
                            msg: format!("unexpected field `{f}`"),
                        });
                    }
                }
                let mult = mult.ok_or_else(|| GraphError::Syntax {
                    line,
                    col: 1,
                    msg: "arrow requires mult=<uint>".into(),
                })?;
                arrows.push((
                    Arrow { vertex: id.to_string(), mult, name },
                    line,
                ));
            }
            other => {
                return Err(GraphError::Syntax {
                    line,
                    col: col_of(other),
                    msg: format!("unknown keyword `{other}`"),
                });
            }
        }
    }
    PlumbingGraph::new(
        vertices,
        edges.into_iter().map(|(e, _)| e).collect(),
        arrows.into_iter().map(|(a, _)| a).collect(),
    )
}
