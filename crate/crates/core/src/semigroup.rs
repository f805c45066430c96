//! Numerical semigroups: gap enumeration (delta-invariant bound) and
//! membership, computed by a reachability sieve.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("generators must be >= 1")]
    ZeroGenerator,
    #[error("generators too large for gap enumeration")]
    TooLarge,
}

/// Gap data of the numerical semigroup generated by `generators`.
/// Gaps are finite exactly when the semigroup is cofinite (gcd = 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupReport {
    pub generators: Vec<u64>,
    pub cofinite: bool,
    /// Sorted gap list; `None` when the gap set is infinite.
    pub gaps: Option<Vec<u64>>,
}

impl SemigroupReport {
    pub fn gap_count(&self) -> Option<usize> {
        self.gaps.as_ref().map(|g| g.len())
    }
}

const SIEVE_CAP: usize = 1 << 24;

pub fn semigroup_report(generators: &[u64]) -> Result<SemigroupReport, SemigroupError> {
    if generators.is_empty() {
        return Err(SemigroupError::EmptyGenerators);
    }
    if generators.contains(&0) {
        return Err(SemigroupError::ZeroGenerator);
    }
    let mut gens: Vec<u64> = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let gcd = gens.iter().fold(0u64, |acc, &g| acc.gcd(&g));
    if gcd != 1 {
        return Ok(SemigroupReport {
            generators: gens,
            cofinite: false,
            gaps: None,
        });
    }
    let smallest = gens[0] as usize;
    // grow the sieve until `smallest` consecutive representables appear;
    // everything above that window is representable
    let mut reachable = vec![false];
    reachable[0] = true;
    let mut bound = (gens[0] as usize) * (*gens.last().unwrap() as usize) + 1;
    loop {
        if bound > SIEVE_CAP {
            return Err(SemigroupError::TooLarge);
        }
        reachable.resize(bound, false);
        for n in 1..bound {
            if !reachable[n] {
                reachable[n] = gens
                    .iter()
                    .any(|&g| n >= g as usize && reachable[n - g as usize]);
            }
        }
        let mut run = 0;
        let mut conductor = None;
        for (n, &r) in reachable.iter().enumerate() {
            if r {
                run += 1;
                if run >= smallest {
                    conductor = Some(n);
                    break;
                }
            } else {
                run = 0;
            }
        }
        if let Some(end) = conductor {
            let gaps: Vec<u64> = (1..=end)
                .filter(|&n| !reachable[n])
                .map(|n| n as u64)
                .collect();
            return Ok(SemigroupReport {
                generators: gens,
                cofinite: true,
                gaps: Some(gaps),
            });
        }
        bound *= 2;
    }
}
