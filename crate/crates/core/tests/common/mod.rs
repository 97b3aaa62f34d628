#![allow(dead_code)]

use num_complex::Complex64;
use quasiprob::qjpd::{build_atoms, evaluate_distribution, QuasiDistribution, SchemeSpec};
use quasiprob::quantum::{spin_operators, DensityState, HermitianObservable};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(J1, J2)` for spin `j_times_two / 2`.
pub fn spin_pair(j_times_two: u32) -> [HermitianObservable; 2] {
    let s = spin_operators(j_times_two).unwrap();
    [s.j1, s.j2]
}

pub fn dist(spec: &SchemeSpec, obs: &[HermitianObservable], rho: &DensityState) -> QuasiDistribution {
    evaluate_distribution(&build_atoms(spec, obs).unwrap(), rho).unwrap()
}

pub fn kd(obs: &[HermitianObservable], rho: &DensityState) -> QuasiDistribution {
    dist(&SchemeSpec::kirkwood(obs.len()).unwrap(), obs, rho)
}

pub fn pure(re_im: &[(f64, f64)]) -> DensityState {
    let psi: Vec<Complex64> = re_im.iter().map(|&(a, b)| c(a, b)).collect();
    DensityState::from_pure(&psi).unwrap()
}

pub fn z_plus() -> DensityState {
    DensityState::basis(2, 0).unwrap()
}

pub fn z_minus() -> DensityState {
    DensityState::basis(2, 1).unwrap()
}

pub fn y_plus() -> DensityState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    pure(&[(h, 0.0), (0.0, h)])
}

/// Asserts the weight at every listed point and that nothing else carries weight.
pub fn assert_weights(d: &QuasiDistribution, expected: &[(&[f64], Complex64)], tol: f64) {
    for (p, w) in expected {
        let got = d.weight_at(p, 1e-9);
        assert!((got - w).norm() <= tol, "at {p:?}: got {got}, expected {w}");
    }
    let listed: Complex64 = expected.iter().map(|(_, w)| *w).sum();
    let off: f64 = d
        .iter()
        .filter(|(p, _)| !expected.iter().any(|(q, _)| p.coords().iter().zip(*q).all(|(a, b)| (a - b).abs() <= 1e-9)))
        .map(|(_, w)| w.norm())
        .fold(0.0, f64::max);
    assert!(off <= tol, "weight {off} off the expected support");
    assert!((d.total() - listed).norm() <= 4.0 * tol);
}

/// Two-level coefficients as closed-form functions of `(a, b, c)` with
/// `ρ = [[a, b − ic], [b + ic, 1 − a]]`, keyed by `(x, y)`.
pub fn two_level_coefficients(a: f64, b: f64, cc: f64) -> [([f64; 2], Complex64); 4] {
    let i = c(0.0, 1.0);
    [
        ([0.5, 0.5], c(0.25, -0.25) + i * a / 2.0 + c((b + cc) / 2.0, 0.0)),
        ([0.5, -0.5], c(0.25, 0.25) - i * a / 2.0 + c((b - cc) / 2.0, 0.0)),
        ([-0.5, 0.5], c(0.25, 0.25) - i * a / 2.0 - c((b - cc) / 2.0, 0.0)),
        ([-0.5, -0.5], c(0.25, -0.25) + i * a / 2.0 - c((b + cc) / 2.0, 0.0)),
    ]
}

/// Three-level coefficients with
/// `ρ = [[a, b−ic, d−if], [b+ic, 1−a−g, h−ik], [d+if, h+ik, g]]`.
pub fn three_level_coefficients(p: [f64; 8]) -> Vec<([f64; 2], Complex64)> {
    let [a, g, b, cc, d, f, h, k] = p;
    let i = c(0.0, 1.0);
    let r2 = std::f64::consts::SQRT_2;
    let re = |x: f64| c(x, 0.0);
    vec![
        ([1.0, 1.0], re(0.25) - c(2.0, -1.0) / 8.0 * a - c(2.0, 1.0) / 8.0 * g + c(1.0, 1.0) / (4.0 * r2) * (b + cc) + re(f / 4.0) + c(1.0, -1.0) / (4.0 * r2) * (h + k)),
        ([1.0, 0.0], re((a + g) / 4.0) + (re(b) - i * cc) / (2.0 * r2) + re(d / 2.0) + (re(h) + i * k) / (2.0 * r2)),
        ([1.0, -1.0], re(0.25) - c(2.0, 1.0) / 8.0 * a - c(2.0, -1.0) / 8.0 * g + c(1.0, -1.0) / (4.0 * r2) * (b - cc) - re(f / 4.0) + c(1.0, 1.0) / (4.0 * r2) * (h - k)),
        ([0.0, 1.0], re((a + g) / 4.0) - i / (2.0 * r2) * (re(b) + i * cc) - re(d / 2.0) + i / (2.0 * r2) * (re(h) - i * k)),
        ([0.0, 0.0], re(0.0)),
        ([0.0, -1.0], re((a + g) / 4.0) + i / (2.0 * r2) * (re(b) + i * cc) - re(d / 2.0) - i / (2.0 * r2) * (re(h) - i * k)),
        ([-1.0, 1.0], re(0.25) - c(2.0, 1.0) / 8.0 * a - c(2.0, -1.0) / 8.0 * g - c(1.0, -1.0) / (4.0 * r2) * (b - cc) - re(f / 4.0) - c(1.0, 1.0) / (4.0 * r2) * (h - k)),
        ([-1.0, 0.0], re((a + g) / 4.0) - (re(b) - i * cc) / (2.0 * r2) + re(d / 2.0) - (re(h) + i * k) / (2.0 * r2)),
        ([-1.0, -1.0], re(0.25) - c(2.0, -1.0) / 8.0 * a - c(2.0, 1.0) / 8.0 * g - c(1.0, 1.0) / (4.0 * r2) * (b + cc) + re(f / 4.0) - c(1.0, -1.0) / (4.0 * r2) * (h + k)),
    ]
}

/// Reads `(a, g, b, c, d, f, h, k)` off a three-level density matrix.
pub fn three_level_params(rho: &DensityState) -> [f64; 8] {
    let m = rho.matrix();
    [
        m[(0, 0)].re,
        m[(2, 2)].re,
        m[(1, 0)].re,
        m[(1, 0)].im,
        m[(2, 0)].re,
        m[(2, 0)].im,
        m[(2, 1)].re,
        m[(2, 1)].im,
    ]
}
