//! Shared deterministic random generators for the integration suites.

use plumblink::{Arrow, Edge, PlumbingGraph, Vertex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected negative-definite plumbing graph with arrows.
///
/// Negative definiteness is guaranteed by strict diagonal dominance: every
/// Euler number is strictly below minus the vertex's edge multiplicity.
pub fn random_negdef_graph(rng: &mut ChaCha8Rng) -> PlumbingGraph {
    let n = rng.gen_range(2..=8usize);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        edges.push((rng.gen_range(0..i), i));
    }
    // occasional extra (multi-)edge to exercise cycles and multi-edges
    if n >= 3 && rng.gen_bool(0.3) {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        edges.push((a, b));
    }
    let mut degree = vec![0i64; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let vertices: Vec<Vertex> = (0..n)
        .map(|i| Vertex {
            id: format!("v{i}"),
            euler: -(degree[i] + 1 + rng.gen_range(0..3)),
            genus: if rng.gen_bool(0.15) { rng.gen_range(1..=2) } else { 0 },
        })
        .collect();
    let edges: Vec<Edge> = edges
        .iter()
        .map(|&(a, b)| Edge { a: format!("v{a}"), b: format!("v{b}") })
        .collect();
    let arrows: Vec<Arrow> = if rng.gen_bool(0.5) {
        // principal by construction: pick an integral cycle l and read the
        // arrow multiplicities off b = -I*l (entrywise positive by strict
        // diagonal dominance when l is constant; retry otherwise)
        let bare = PlumbingGraph::new(vertices.clone(), edges.clone(), Vec::<Arrow>::new())
            .expect("generator emits valid graphs");
        let i_matrix = bare.intersection_matrix();
        let mut b = loop {
            let l: Vec<num_bigint::BigInt> = (0..n)
                .map(|_| num_bigint::BigInt::from(rng.gen_range(1..=3i64)))
                .collect();
            let b: Vec<num_bigint::BigInt> =
                i_matrix.mul_vec(&l).into_iter().map(|x| -x).collect();
            if b.iter().all(|x| x >= &num_bigint::BigInt::from(0))
                && b.iter().any(|x| x > &num_bigint::BigInt::from(0))
            {
                break b;
            }
        };
        let mut arrows = Vec::new();
        for (i, bi) in b.iter_mut().enumerate() {
            let mut total = u64::try_from(bi.clone()).expect("small multiplicity");
            while total > 0 {
                // sometimes split a vertex's multiplicity across two arrows
                let mult = if total > 1 && rng.gen_bool(0.3) {
                    rng.gen_range(1..total)
                } else {
                    total
                };
                total -= mult;
                arrows.push(Arrow {
                    vertex: format!("v{i}"),
                    mult,
                    name: Some(format!("a{}", arrows.len() + 1)),
                });
            }
        }
        arrows
    } else {
        (0..rng.gen_range(1..=3usize))
            .map(|k| Arrow {
                vertex: format!("v{}", rng.gen_range(0..n)),
                mult: rng.gen_range(1..=4),
                name: Some(format!("a{}", k + 1)),
            })
            .collect()
    };
    PlumbingGraph::new(vertices, edges, arrows).expect("generator emits valid graphs")
}

/// Random connected plumbing graph with no definiteness filtering at all.
pub fn random_unfiltered_graph(rng: &mut ChaCha8Rng) -> PlumbingGraph {
    let n = rng.gen_range(1..=7usize);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        edges.push((rng.gen_range(0..i), i));
    }
    if n >= 3 && rng.gen_bool(0.25) {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        edges.push((a, b));
    }
    let vertices: Vec<Vertex> = (0..n)
        .map(|i| Vertex {
            id: format!("v{i}"),
            euler: rng.gen_range(-6..=2),
            genus: if rng.gen_bool(0.2) { rng.gen_range(1..=2) } else { 0 },
        })
        .collect();
    let edges: Vec<Edge> = edges
        .iter()
        .map(|&(a, b)| Edge { a: format!("v{a}"), b: format!("v{b}") })
        .collect();
    let arrows: Vec<Arrow> = (0..rng.gen_range(1..=3usize))
        .map(|k| Arrow {
            vertex: format!("v{}", rng.gen_range(0..n)),
            mult: rng.gen_range(1..=4),
            name: Some(format!("a{}", k + 1)),
        })
        .collect();
    PlumbingGraph::new(vertices, edges, arrows).expect("generator emits valid graphs")
}

/// Random pairwise coprime triple with entries in `[2, max]`.
pub fn random_coprime_triple(rng: &mut ChaCha8Rng, max: u64) -> (u64, u64, u64) {
    loop {
        let p = rng.gen_range(2..=max);
        let q = rng.gen_range(2..=max);
        let r = rng.gen_range(2..=max);
        if gcd(p, q) == 1 && gcd(p, r) == 1 && gcd(q, r) == 1 {
            return (p, q, r);
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
