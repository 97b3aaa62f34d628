use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qjpd::{QuasiDistribution, SupportPoint};
use crate::quantum::HermitianObservable;

/// Distance within which a coordinate counts as an eigenvalue.
pub const EIGENVALUE_MATCH_TOL: f64 = 1e-9;
/// Default realness tolerance on weights.
pub const REAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct SupportReport {
    pub ok: bool,
    /// Atoms carrying weight above the tolerance at non-eigenvalue coordinates.
    pub offending: Vec<(SupportPoint, Complex64)>,
}

/// Checks that every atom with `|weight| > tol` sits at a tuple of
/// eigenvalues, coordinate by coordinate.
pub fn verify_support(
    dist: &QuasiDistribution,
    observables: &[HermitianObservable],
    tol: f64,
) -> Result<SupportReport> {
    if observables.len() != dist.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: dist.n_vars(),
            found: observables.len(),
        });
    }
    let spectra = observables
        .iter()
        .map(|o| o.eigenvalues())
        .collect::<Result<Vec<_>>>()?;
    let offending: Vec<(SupportPoint, Complex64)> = dist
        .iter()
        .filter(|(_, w)| w.norm() > tol)
        .filter(|(p, _)| {
            p.coords().iter().zip(&spectra).any(|(x, spec)| {
                !spec.iter().any(|alpha| (x - alpha).abs() <= EIGENVALUE_MATCH_TOL)
            })
        })
        .map(|(p, w)| (p.clone(), w))
        .collect();
    Ok(SupportReport {
        ok: offending.is_empty(),
        offending,
    })
}

/// True iff `max |Im P(x)| ≤ tol`.
pub fn is_real(dist: &QuasiDistribution, tol: f64) -> bool {
    dist.max_imag() <= tol
}
