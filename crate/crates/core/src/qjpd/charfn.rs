use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{eigensystem, exp_from_eigensystem, ComplexMatrix};
use crate::quantum::{DensityState, HermitianObservable};

use super::atoms::{build_atoms_with, AtomOptions, OperatorAtomSet};
use super::distribution::QuasiDistribution;
use super::scheme::{check_observables, SchemeSpec};

/// Hashed-operator kernel: a product-form scheme, or the Weyl/Wigner kernel
/// `e^{−iΣ s_k A_k}` which has no finite atomic form.
#[derive(Clone, Debug, PartialEq)]
pub enum Kernel {
    Product(SchemeSpec),
    Wigner(usize),
}

impl Kernel {
    pub fn n_vars(&self) -> usize {
        match self {
            Kernel::Product(s) => s.n_vars(),
            Kernel::Wigner(n) => *n,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Kernel::Product(s) => s.label(),
            Kernel::Wigner(_) => "wigner",
        }
    }

    pub fn hashed_operator(
        &self,
        observables: &[HermitianObservable],
        s: &[f64],
    ) -> Result<ComplexMatrix> {
        match self {
            Kernel::Product(spec) => spec.hashed_operator(observables, s),
            Kernel::Wigner(n) => {
                let dim = check_observables(*n, observables)?;
                if s.len() != *n {
                    return Err(Error::LengthMismatch {
                        expected: *n,
                        found: s.len(),
                    });
                }
                let mut gen = ComplexMatrix::zeros(dim, dim);
                for (o, &sk) in observables.iter().zip(s) {
                    gen += &o.matrix().scale_real(sk);
                }
                // No grouping: the exponential only needs a complete eigenbasis.
                Ok(exp_from_eigensystem(&eigensystem(&gen, 1e-14)?, 1.0))
            }
        }
    }

    pub fn build_atoms(
        &self,
        observables: &[HermitianObservable],
        opts: AtomOptions,
    ) -> Result<OperatorAtomSet> {
        match self {
            Kernel::Product(spec) => build_atoms_with(spec, observables, opts),
            Kernel::Wigner(_) => Err(Error::NoAtomicForm(
                "the Wigner kernel e^{-i(sA+tB)} has a divergent density; use the characteristic function".into(),
            )),
        }
    }
}

impl From<SchemeSpec> for Kernel {
    fn from(s: SchemeSpec) -> Self {
        Kernel::Product(s)
    }
}

/// `Tr[ρ·ĥ(s)]` at each point.
pub fn characteristic_function(
    kernel: &Kernel,
    observables: &[HermitianObservable],
    rho: &DensityState,
    s_points: &[Vec<f64>],
) -> Result<Vec<Complex64>> {
    let dim = check_observables(kernel.n_vars(), observables)?;
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    s_points
        .iter()
        .map(|s| Ok(rho.matrix().trace_product(&kernel.hashed_operator(observables, s)?)))
        .collect()
}

/// `Σ_x P(x)·e^{−i s·x}` at each point.
pub fn atom_fourier(dist: &QuasiDistribution, s_points: &[Vec<f64>]) -> Vec<Complex64> {
    s_points.iter().map(|s| dist.fourier(s)).collect()
}

/// Inclusive uniform axis with `steps` samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if steps == 0 || !min.is_finite() || !max.is_finite() || max < min {
            return Err(Error::Domain(format!("grid axis {min}:{max}:{steps}")));
        }
        Ok(Self { min, max, steps })
    }

    pub fn spacing(&self) -> f64 {
        if self.steps == 1 {
            0.0
        } else {
            (self.max - self.min) / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps && i > 0 {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect()
    }
}

impl FromStr for GridAxis {
    type Err = Error;

    /// Parses `min:max:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Domain(format!("grid axis `{s}` is not min:max:steps"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let min = parts[0].trim().parse().map_err(|_| bad())?;
        let max = parts[1].trim().parse().map_err(|_| bad())?;
        let steps = parts[2].trim().parse().map_err(|_| bad())?;
        GridAxis::new(min, max, steps)
    }
}

/// Parses a comma-separated list of axes, e.g. `-10:10:21,-10:10:21`.
pub fn parse_grid(s: &str) -> Result<Vec<GridAxis>> {
    s.split(',').map(str::parse).collect()
}

/// Cartesian product of the axes, last axis fastest.
pub fn grid_points(axes: &[GridAxis]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in axes {
        let vals = axis.values();
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Density estimate from a windowed Fourier inversion of the characteristic
/// function. Always approximate; for the Wigner kernel the true density may
/// not exist as a function.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowedDensity {
    pub points: Vec<Vec<f64>>,
    pub values: Vec<Complex64>,
    pub approximate: bool,
    pub possibly_divergent: bool,
}

/// `P(x) ≈ Π(Δs/2π) Σ_s w(s) χ(s) e^{i s·x}` with a Hann window `w` over the
/// sampled `s` grid, evaluated at every point of the `x` grid.
pub fn windowed_density(
    kernel: &Kernel,
    observables: &[HermitianObservable],
    rho: &DensityState,
    s_axes: &[GridAxis],
    x_axes: &[GridAxis],
) -> Result<WindowedDensity> {
    let n = kernel.n_vars();
    for axes in [s_axes, x_axes] {
        if axes.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: axes.len(),
            });
        }
    }
    let s_points = grid_points(s_axes);
    let chi = characteristic_function(kernel, observables, rho, &s_points)?;
    let window: Vec<f64> = s_points
        .iter()
        .map(|s| s.iter().zip(s_axes).map(|(&v, a)| hann(v, a)).product())
        .collect();
    let measure: f64 = s_axes
        .iter()
        .map(|a| if a.steps > 1 { a.spacing() / (2.0 * PI) } else { 1.0 })
        .product();
    let x_points = grid_points(x_axes);
    let values = x_points
        .iter()
        .map(|x| {
            let sum: Complex64 = s_points
                .iter()
                .zip(&chi)
                .zip(&window)
                .map(|((s, &ch), &w)| {
                    let phase: f64 = s.iter().zip(x).map(|(a, b)| a * b).sum();
                    ch * Complex64::from_polar(w, phase)
                })
                .sum();
            sum * measure
        })
        .collect();
    Ok(WindowedDensity {
        points: x_points,
        values,
        approximate: true,
        possibly_divergent: matches!(kernel, Kernel::Wigner(_)),
    })
}

fn hann(v: f64, axis: &GridAxis) -> f64 {
    let width = axis.max - axis.min;
    if width == 0.0 {
        return 1.0;
    }
    let u = (v - axis.min) / width;
    0.5 - 0.5 * (2.0 * PI * u).cos()
}
