use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matcore::{c, ComplexMatrix, HERMITIAN_TOL};
use crate::qjpd::{build_atoms, evaluate_distribution, SchemeSpec, UnitaryForm};
use crate::quantum::{bloch_state, expectation, spin_operators, DensityState, HermitianObservable};
use crate::random::{random_density, rng, simplex};

use super::support::{is_real, REAL_TOL};

/// Tolerance for `ĥ(s) = ĥ†(−s)` at sampled points.
pub const HASHED_SYMMETRY_TOL: f64 = 1e-9;
/// Tolerance for `ĥ₁₁(s) = ĥ₂₂(s)`.
pub const DIAG_EQUALITY_TOL: f64 = 1e-10;
/// Tolerance for `⟨J₃⟩ = 0`.
pub const Z_ZERO_TOL: f64 = 1e-10;
/// Attempts allowed when searching for a converse counterexample.
pub const COUNTEREXAMPLE_ATTEMPTS: usize = 10_000;

const SAMPLE_RANGE: f64 = 2.0 * PI;

fn sample_points(n_vars: usize, n_samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..n_samples)
        .map(|_| {
            (0..n_vars)
                .map(|_| r.random_range(-SAMPLE_RANGE..SAMPLE_RANGE))
                .collect()
        })
        .collect()
}

/// Whether every distribution of the scheme is real: all atoms Hermitian.
/// Cross-checked against `ĥ(s) = ĥ†(−s)` at `n_samples` seeded points.
pub fn scheme_is_real(
    spec: &SchemeSpec,
    observables: &[HermitianObservable],
    n_samples: usize,
    seed: u64,
) -> Result<bool> {
    let atoms = build_atoms(spec, observables)?;
    let atoms_hermitian = atoms.all_hermitian(HERMITIAN_TOL);
    let mut hashed_symmetric = true;
    for s in sample_points(spec.n_vars(), n_samples, seed) {
        let minus: Vec<f64> = s.iter().map(|x| -x).collect();
        let h = spec.hashed_operator(observables, &s)?;
        let h_dag = spec.hashed_operator(observables, &minus)?.adjoint();
        if h.max_abs_diff(&h_dag) > HASHED_SYMMETRY_TOL {
            hashed_symmetric = false;
            break;
        }
    }
    if n_samples > 0 && atoms_hermitian != hashed_symmetric {
        return Err(Error::InconsistentRealness {
            atoms_hermitian,
            hashed_symmetric,
        });
    }
    Ok(atoms_hermitian)
}

/// For two-level systems: true iff `ĥ₁₁(s) = ĥ₂₂(s)` at every sampled point,
/// i.e. the scheme cannot tell `|z+⟩` from `|z−⟩`.
pub fn diag_equality_check(
    spec: &SchemeSpec,
    observables: &[HermitianObservable],
    n_samples: usize,
    seed: u64,
) -> Result<bool> {
    if let Some(o) = observables.iter().find(|o| o.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: o.dim(),
        });
    }
    for s in sample_points(spec.n_vars(), n_samples, seed) {
        let h = spec.hashed_operator(observables, &s)?;
        if (h[(0, 0)] - h[(1, 1)]).norm() > DIAG_EQUALITY_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random alternating-word scheme with `1..=max_reps` repetitions and
/// simplex-distributed coefficients. With `palindromic`, T2/T4 words are
/// mirrored so that the word reads the same in both directions.
pub fn random_unitary_form(
    r: &mut impl Rng,
    max_reps: usize,
    palindromic: bool,
) -> Result<SchemeSpec> {
    let form = if palindromic {
        [UnitaryForm::T2, UnitaryForm::T4][r.random_range(0..2)]
    } else {
        UnitaryForm::ALL[r.random_range(0..4)]
    };
    let n = r.random_range(1..=max_reps.max(1));
    let (na, nb) = form.factor_counts(n);
    let mut a = simplex(r, na);
    let mut b = simplex(r, nb);
    if palindromic {
        a = mirror(&a);
        b = mirror(&b);
    }
    SchemeSpec::unitary_form(form, &a, &b)
}

fn mirror(v: &[f64]) -> Vec<f64> {
    v.iter().zip(v.iter().rev()).map(|(x, y)| (x + y) / 2.0).collect()
}

#[derive(Clone, Debug)]
pub struct RealnessReport {
    pub n: usize,
    pub samples: usize,
    pub real_count: usize,
    /// Samples violating the tested implication (biconditional for `N = 2`).
    pub disagreements: usize,
    /// A state with `⟨J₃⟩ = 0` whose distribution is complex (`N = 3`).
    pub counterexample: Option<DensityState>,
    pub counterexample_attempts: usize,
}

/// Kirkwood–Dirac distribution of `(J₁, J₂)` versus `⟨J₃⟩` on random states.
///
/// For `N = 2` the biconditional `real ⟺ ⟨J₃⟩ = 0` is checked on Bloch
/// states, half of them drawn with `m = 1/2`. For `N = 3` only
/// `real ⟹ ⟨J₃⟩ = 0` is checked, and a state with `⟨J₃⟩ = 0` but a complex
/// distribution is searched for.
pub fn realness_implies_z_expectation(n: usize, samples: usize, seed: u64) -> Result<RealnessReport> {
    let spin = match n {
        2 => spin_operators(1)?,
        3 => spin_operators(2)?,
        _ => return Err(Error::Domain(format!("realness scan supports N = 2 or 3, got {n}"))),
    };
    let obs = [spin.j1.clone(), spin.j2.clone()];
    let atoms = build_atoms(&SchemeSpec::kirkwood(2)?, &obs)?;
    let mut r = rng(seed);
    let flip = antidiagonal(n);

    let mut real_count = 0;
    let mut disagreements = 0;
    for i in 0..samples {
        let rho = if n == 2 {
            let theta = r.random_range(0.0..=PI);
            let phi = r.random_range(0.0..2.0 * PI);
            let m = if i % 2 == 0 { 0.5 } else { r.random_range(0.0..=1.0) };
            bloch_state(theta, phi, m)?
        } else {
            let rho = random_density(&mut r, n);
            if i % 2 == 0 {
                symmetrize(&rho, &flip, true)?
            } else {
                rho
            }
        };
        let real = is_real(&evaluate_distribution(&atoms, &rho)?, REAL_TOL);
        let z_zero = expectation(&spin.j3, &rho)?.abs() <= Z_ZERO_TOL;
        real_count += real as usize;
        let violated = if n == 2 { real != z_zero } else { real && !z_zero };
        disagreements += violated as usize;
    }

    let mut counterexample = None;
    let mut attempts = 0;
    if n == 3 {
        while attempts < COUNTEREXAMPLE_ATTEMPTS {
            attempts += 1;
            let rho = symmetrize(&random_density(&mut r, n), &flip, false)?;
            let z = expectation(&spin.j3, &rho)?;
            let dist = evaluate_distribution(&atoms, &rho)?;
            if z.abs() <= Z_ZERO_TOL && !is_real(&dist, REAL_TOL) {
                counterexample = Some(rho);
                break;
            }
        }
        if counterexample.is_none() {
            return Err(Error::SearchExhausted(attempts));
        }
    }
    Ok(RealnessReport {
        n,
        samples,
        real_count,
        disagreements,
        counterexample,
        counterexample_attempts: attempts,
    })
}

fn antidiagonal(n: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        f[(i, n - 1 - i)] = c(1.0, 0.0);
    }
    f
}

/// `(ρ + FρᵀF)/2` when `transpose`, else `(ρ + FρF)/2`.
fn symmetrize(rho: &DensityState, f: &ComplexMatrix, transpose: bool) -> Result<DensityState> {
    let inner = if transpose {
        rho.matrix().transpose()
    } else {
        rho.matrix().clone()
    };
    let mirrored = &(f * &inner) * f;
    DensityState::new((rho.matrix() + &mirrored).scale_real(0.5))
}
