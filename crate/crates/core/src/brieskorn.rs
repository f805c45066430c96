//! Star-shaped plumbing graphs of the links of x^p + y^q + z^r = 0 for
//! pairwise coprime exponents, via Seifert data and negative continued
//! fractions.

use num_integer::Integer;
use thiserror::Error;

use crate::graph::{Arrow, Edge, GraphError, PlumbingGraph, Vertex};

#[derive(Debug, Error)]
pub enum BrieskornError {
    #[error("exponents must be pairwise coprime: gcd({a}, {b}) > 1")]
    NotCoprime { a: u64, b: u64 },
    #[error("exponents must be >= 2, got {0}")]
    ExponentTooSmall(u64),
    #[error("continued fraction requires 0 < beta < alpha, got {beta}/{alpha}")]
    BadFraction { alpha: u64, beta: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Seifert invariants of an integral homology sphere fibering over the
/// sphere: central Euler number and one `(alpha, beta)` pair per
/// exceptional fiber, normalized by
/// `e0 * prod(alpha) + sum_i beta_i * prod_{j != i} alpha_j = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub e0: i64,
    pub legs: Vec<(u64, u64)>,
}

/// The unique expansion `alpha/beta = q1 - 1/(q2 - 1/(...))` with all
/// quotients >= 2.
pub fn negative_continued_fraction(alpha: u64, beta: u64) -> Result<Vec<u64>, BrieskornError> {
    if beta == 0 || beta >= alpha {
        return Err(BrieskornError::BadFraction { alpha, beta });
    }
    let mut out = Vec::new();
    let (mut a, mut b) = (alpha, beta);
    while b > 0 {
        let q = a.div_ceil(b);
        out.push(q);
        (a, b) = (b, q * b - a);
    }
    Ok(out)
}

/// Seifert data of the Brieskorn sphere with the given exponents: the
/// unique solution of the `-1` normalization with `0 < beta_i < alpha_i`.
pub fn brieskorn_seifert_data(p: u64, q: u64, r: u64) -> Result<SeifertData, BrieskornError> {
    let alphas = [p, q, r];
    for &a in &alphas {
        if a < 2 {
            return Err(BrieskornError::ExponentTooSmall(a));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if alphas[i].gcd(&alphas[j]) != 1 {
                return Err(BrieskornError::NotCoprime { a: alphas[i], b: alphas[j] });
            }
        }
    }
    // beta_i * prod_{j != i} alpha_j = -1 (mod alpha_i)
    let mut legs = Vec::new();
    let mut sum: i128 = 0;
    let total: i128 = alphas.iter().map(|&a| a as i128).product();
    for i in 0..3 {
        let alpha = alphas[i] as i128;
        let others: i128 = (0..3).filter(|&j| j != i).map(|j| alphas[j] as i128).product();
        let beta = (1..alphas[i] as i128)
            .find(|&b| (b * others + 1) % alpha == 0)
            .expect("others is invertible mod alpha");
        sum += beta * others;
        legs.push((alphas[i], beta as u64));
    }
    debug_assert_eq!((-1 - sum) % total, 0);
    let e0 = i64::try_from((-1 - sum) / total).expect("small central euler");
    Ok(SeifertData { e0, legs })
}

/// Star-shaped negative-definite plumbing graph of the Brieskorn link:
/// central vertex `center` with Euler number `e0`, leg `i` named
/// `x{i}leg1`, `x{i}leg2`, ... outward, with Euler numbers given by the
/// negative continued fraction of `alpha_i / beta_i`. The leaf of leg `i`
/// is the attachment site of the corresponding singular fiber.
pub fn brieskorn_graph(p: u64, q: u64, r: u64) -> Result<PlumbingGraph, BrieskornError> {
    let data = brieskorn_seifert_data(p, q, r)?;
    let mut vertices = vec![Vertex {
        id: "center".to_string(),
        euler: data.e0,
        genus: 0,
    }];
    let mut edges = Vec::new();
    for (i, &(alpha, beta)) in data.legs.iter().enumerate() {
        let mut prev = "center".to_string();
        for (k, qk) in negative_continued_fraction(alpha, beta)?.iter().enumerate() {
            let id = format!("x{}leg{}", i + 1, k + 1);
            vertices.push(Vertex {
                id: id.clone(),
                euler: -i64::try_from(*qk).expect("small quotient"),
                genus: 0,
            });
            edges.push(Edge { a: prev, b: id.clone() });
            prev = id;
        }
    }
    Ok(PlumbingGraph::new(vertices, edges, Vec::<Arrow>::new())?)
}
