//! Seeded samplers for observables, states and unitaries.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::Result;
use crate::matcore::{c, matrix_exponential_unitary, ComplexMatrix};
use crate::quantum::{DensityState, HermitianObservable};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Ginibre matrix with standard complex Gaussian entries.
pub fn ginibre(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let data = (0..n * n).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(n, n, data).expect("n*n entries")
}

/// `(G + G†)/2` with `G` Ginibre.
pub fn random_hermitian_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    (&g + &g.adjoint()).scale_real(0.5)
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianObservable {
    HermitianObservable::new(random_hermitian_matrix(rng, n), "random").expect("Hermitian by construction")
}

/// `GG†/Tr(GG†)` with `G` Ginibre.
pub fn random_density(rng: &mut impl Rng, n: usize) -> DensityState {
    let g = ginibre(rng, n);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityState::new(m.scale_real(1.0 / tr)).expect("positive by construction")
}

/// `e^{−iH}` with `H` a random Hermitian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> Result<ComplexMatrix> {
    matrix_exponential_unitary(&random_hermitian_matrix(rng, n), 1.0)
}

/// Uniform point on the probability simplex with `k` vertices.
pub fn simplex(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let gamma = Gamma::new(1.0, 1.0).expect("valid shape");
    let draws: Vec<f64> = (0..k).map(|_| gamma.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    draws.iter().map(|x| x / total).collect()
}
