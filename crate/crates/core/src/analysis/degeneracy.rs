use serde::Serialize;

use crate::error::{Error, Result};

/// Counting condition `2N² − 1 ≤ (2N_A − 1)(2N_B − 1)` for a pair with
/// `N_A`, `N_B` distinct eigenvalues to be state-distinguishing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub n: u64,
    pub n_a: u64,
    pub n_b: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub feasible: bool,
}

pub fn degeneracy_feasible(n: u64, n_a: u64, n_b: u64) -> Result<FeasibilityReport> {
    if n == 0 || !(1..=n).contains(&n_a) || !(1..=n).contains(&n_b) {
        return Err(Error::Domain(format!(
            "need 1 <= N_A, N_B <= N, got N={n}, N_A={n_a}, N_B={n_b}"
        )));
    }
    let lhs = 2 * n * n - 1;
    let rhs = (2 * n_a - 1) * (2 * n_b - 1);
    Ok(FeasibilityReport {
        n,
        n_a,
        n_b,
        lhs,
        rhs,
        feasible: lhs <= rhs,
    })
}

/// Lower bound on a common distinct-eigenvalue count `N′ = N_A = N_B`.
pub fn min_common_distinct(n: u64) -> f64 {
    (((2 * n * n - 1) as f64).sqrt() + 1.0) / 2.0
}

/// Lower bound on `N_B` when `A` is non-degenerate (`N_A = N`).
pub fn min_distinct_with_nondegenerate(n: u64) -> f64 {
    (n * n + n - 1) as f64 / (2 * n - 1) as f64
}
