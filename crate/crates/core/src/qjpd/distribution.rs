use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{born_distribution, DensityState, HermitianObservable};

use super::atoms::{merge_weights, AtomOptions, OperatorAtomSet, SupportPoint, PRUNE_TOL};

#[derive(Clone, Debug, PartialEq, Default)]
pub struct DistributionMeta {
    pub scheme: String,
    pub observables: Vec<String>,
    /// Set when the scheme was discretized (e.g. Born–Jordan quadrature).
    pub approximate: bool,
}

/// Complex weights on finitely many support points, sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiDistribution {
    n_vars: usize,
    atoms: Vec<(SupportPoint, Complex64)>,
    meta: DistributionMeta,
}

impl QuasiDistribution {
    pub fn new(
        n_vars: usize,
        mut atoms: Vec<(SupportPoint, Complex64)>,
        meta: DistributionMeta,
    ) -> Result<Self> {
        for (p, _) in &atoms {
            if p.dim() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    found: p.dim(),
                });
            }
        }
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Self { n_vars, atoms, meta })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[(SupportPoint, Complex64)] {
        &self.atoms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SupportPoint, Complex64)> {
        self.atoms.iter().map(|(p, w)| (p, *w))
    }

    pub fn meta(&self) -> &DistributionMeta {
        &self.meta
    }

    pub fn total(&self) -> Complex64 {
        self.atoms.iter().map(|(_, w)| *w).sum()
    }

    /// Sum of weights within `tol` of `point`; zero off support.
    pub fn weight_at(&self, point: &[f64], tol: f64) -> Complex64 {
        let p = SupportPoint::new(point.to_vec());
        self.atoms
            .iter()
            .filter(|(q, _)| q.distance(&p) <= tol)
            .map(|(_, w)| *w)
            .sum()
    }

    pub fn max_imag(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w.im.abs()).fold(0.0, f64::max)
    }

    /// One-variable marginal: sums weights over all other coordinates.
    pub fn marginal(&self, keep_var: usize) -> Result<QuasiDistribution> {
        if keep_var >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: keep_var,
                len: self.n_vars,
            });
        }
        let raw = self
            .atoms
            .iter()
            .map(|(p, w)| (vec![p.coord(keep_var)], *w))
            .collect();
        let atoms = merge_weights(1, raw, AtomOptions::default().merge_tol)
            .into_iter()
            .filter(|(_, w)| w.norm() >= PRUNE_TOL)
            .collect();
        let observables = self
            .meta
            .observables
            .get(keep_var)
            .cloned()
            .into_iter()
            .collect();
        QuasiDistribution::new(
            1,
            atoms,
            DistributionMeta {
                scheme: self.meta.scheme.clone(),
                observables,
                approximate: self.meta.approximate,
            },
        )
    }

    /// `Σ_x f(x)·P(x)`.
    pub fn quasi_expectation(&self, f: impl Fn(&[f64]) -> Complex64) -> Complex64 {
        self.atoms.iter().map(|(p, w)| f(p.coords()) * w).sum()
    }

    /// `Σ_x P(x)·e^{−i s·x}`.
    pub fn fourier(&self, s: &[f64]) -> Complex64 {
        self.atoms
            .iter()
            .map(|(p, w)| {
                let phase: f64 = p.coords().iter().zip(s).map(|(x, si)| x * si).sum();
                w * Complex64::from_polar(1.0, -phase)
            })
            .sum()
    }
}

/// Free-function form of [`QuasiDistribution::marginal`].
pub fn marginal(dist: &QuasiDistribution, keep_var: usize) -> Result<QuasiDistribution> {
    dist.marginal(keep_var)
}

/// Free-function form of [`QuasiDistribution::quasi_expectation`].
pub fn quasi_expectation(f: impl Fn(&[f64]) -> Complex64, dist: &QuasiDistribution) -> Complex64 {
    dist.quasi_expectation(f)
}

pub fn evaluate_distribution(atoms: &OperatorAtomSet, rho: &DensityState) -> Result<QuasiDistribution> {
    evaluate_distribution_with(atoms, rho, PRUNE_TOL)
}

/// `P(x) = Tr[#(x)·ρ]`, dropping weights with `|P(x)| < prune_tol`.
pub fn evaluate_distribution_with(
    atoms: &OperatorAtomSet,
    rho: &DensityState,
    prune_tol: f64,
) -> Result<QuasiDistribution> {
    if rho.dim() != atoms.dim() {
        return Err(Error::DimensionMismatch {
            expected: atoms.dim(),
            found: rho.dim(),
        });
    }
    let weights = atoms
        .iter()
        .map(|(p, m)| (p.clone(), m.trace_product(rho.matrix())))
        .filter(|(_, w)| w.norm() >= prune_tol)
        .collect();
    QuasiDistribution::new(
        atoms.n_vars(),
        weights,
        DistributionMeta {
            scheme: atoms.scheme_label().to_string(),
            observables: atoms.observable_labels().to_vec(),
            approximate: atoms.is_approximate(),
        },
    )
}

/// Largest deviation between each marginal of `dist` and the Born
/// distribution of the matching observable.
pub fn max_marginal_deviation(
    dist: &QuasiDistribution,
    observables: &[HermitianObservable],
    rho: &DensityState,
) -> Result<f64> {
    if observables.len() != dist.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: dist.n_vars(),
            found: observables.len(),
        });
    }
    let mut worst = 0.0f64;
    for (v, obs) in observables.iter().enumerate() {
        worst = worst.max(max_deviation(&dist.marginal(v)?, &born_distribution(obs, rho)?));
    }
    Ok(worst)
}

/// Max over the union of supports of `|P(x) − Q(x)|`.
pub fn max_deviation(p: &QuasiDistribution, q: &QuasiDistribution) -> f64 {
    let tol = AtomOptions::default().merge_tol;
    let one_side = |a: &QuasiDistribution, b: &QuasiDistribution| {
        a.iter()
            .map(|(x, w)| (w - b.weight_at(x.coords(), tol)).norm())
            .fold(0.0, f64::max)
    };
    one_side(p, q).max(one_side(q, p))
}
