//! Verdicts for every `(n, k)` in a range, optionally checked by the oracle.

use serde::Serialize;

use crate::cayley::CayleyAnalysis;
use crate::error::{Error, Result};
use crate::permgroup::{is_cayley_bruteforce, OracleConfig};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub k: usize,
    pub cayley: bool,
    pub witness: Option<String>,
    pub oracle_checked: bool,
    pub oracle_agrees: Option<bool>,
}

/// Vertex count of `PX(n, k)`, or `None` on overflow.
pub fn px_vertex_count(n: usize, k: usize) -> Option<usize> {
    1usize.checked_shl(k as u32).filter(|_| k < usize::BITS as usize)?.checked_mul(n)
}

/// Rows for `n_min <= n <= n_max`, `1 <= k < n`, in `(n, k)` order. With an
/// oracle config, every pair within its cap is also decided by brute force;
/// the first disagreement in row order is returned as an error.
pub fn census_rows(n_min: usize, n_max: usize, oracle: Option<&OracleConfig>) -> Result<Vec<CensusRow>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::domain(format!("census needs 3 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let per_n = par::map(&ns, |&n| -> Result<Vec<CensusRow>> {
        let analysis = CayleyAnalysis::new(n)?;
        (1..n)
            .map(|k| {
                let witness = analysis.divisor_of_degree(n - k)?;
                Ok(CensusRow {
                    n,
                    k,
                    cayley: witness.is_some(),
                    witness: witness.map(|w| w.to_string()),
                    oracle_checked: false,
                    oracle_agrees: None,
                })
            })
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_n {
        rows.extend(r?);
    }
    let Some(cfg) = oracle else { return Ok(rows) };

    let todo: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| px_vertex_count(r.n, r.k).is_some_and(|v| v <= cfg.cap))
        .map(|(i, _)| i)
        .collect();
    let answers = par::map(&todo, |&i| is_cayley_bruteforce(rows[i].n, rows[i].k, cfg));
    for (&i, answer) in todo.iter().zip(answers) {
        let row = &mut rows[i];
        let brute = answer?;
        row.oracle_checked = true;
        row.oracle_agrees = Some(brute == row.cayley);
        if brute != row.cayley {
            return Err(Error::Disagreement {
                n: row.n,
                k: row.k,
                detail: format!("divisor criterion says {}, brute force says {brute}", row.cayley),
            });
        }
    }
    Ok(rows)
}
