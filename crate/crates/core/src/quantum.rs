//! Observables, density states, spin representations and the Born rule.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{
    c, eigensystem, exp_from_eigensystem, ComplexMatrix, EigenSystem, DEGENERACY_TOL,
    HERMITIAN_TOL,
};
use crate::qjpd::{snap, DistributionMeta, QuasiDistribution, SupportPoint};

/// Tolerance on `Tr ρ = 1`.
pub const TRACE_TOL: f64 = 1e-10;
/// Slack allowed below zero for the smallest eigenvalue of a density matrix.
pub const PSD_SLACK: f64 = 1e-9;

/// A Hermitian matrix with a lazily computed, cached eigensystem.
#[derive(Clone, Debug)]
pub struct HermitianObservable {
    matrix: ComplexMatrix,
    label: String,
    eig: OnceLock<EigenSystem>,
}

impl HermitianObservable {
    pub fn new(matrix: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        matrix.check_hermitian(HERMITIAN_TOL)?;
        Ok(Self {
            matrix,
            label: label.into(),
            eig: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Spectral decomposition, computed on first use. Concurrent first calls
    /// may both diagonalize; the first stored result wins.
    pub fn eigensystem(&self) -> Result<&EigenSystem> {
        if let Some(eig) = self.eig.get() {
            return Ok(eig);
        }
        let eig = eigensystem(&self.matrix, DEGENERACY_TOL)?;
        Ok(self.eig.get_or_init(|| eig))
    }

    /// Distinct eigenvalues, descending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigensystem()?.eigenvalues.clone())
    }

    pub fn distinct_eigenvalue_count(&self) -> Result<usize> {
        Ok(self.eigensystem()?.len())
    }

    /// `e^{−i·scale·A}`.
    pub fn exp_unitary(&self, scale: f64) -> Result<ComplexMatrix> {
        Ok(exp_from_eigensystem(self.eigensystem()?, scale))
    }

    /// `factor · A`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.matrix.scale_real(factor),
            format!("{factor}*{}", self.label),
        )
    }

    /// `A + offset · I`.
    pub fn shifted(&self, offset: f64) -> Result<Self> {
        let shift = ComplexMatrix::identity(self.dim()).scale_real(offset);
        Self::new(&self.matrix + &shift, format!("{}+{offset}", self.label))
    }

    /// `U A U†`.
    pub fn conjugated(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let m = &(unitary * &self.matrix) * &unitary.adjoint();
        let m = hermitize(&m);
        Self::new(m, format!("U{}U*", self.label))
    }

    /// `Σ c_k A_k` for observables of equal dimension.
    pub fn linear_combination(
        terms: &[(f64, &HermitianObservable)],
        label: impl Into<String>,
    ) -> Result<Self> {
        let dim = terms
            .first()
            .map(|(_, a)| a.dim())
            .ok_or_else(|| Error::Domain("empty linear combination".into()))?;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (coeff, obs) in terms {
            if obs.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: obs.dim(),
                });
            }
            m += &obs.matrix.scale_real(*coeff);
        }
        Self::new(m, label)
    }
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale_real(0.5)
}

/// A density matrix: Hermitian, unit trace, positive semidefinite up to
/// [`PSD_SLACK`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    matrix: ComplexMatrix,
}

impl DensityState {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.check_hermitian(HERMITIAN_TOL)?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let eig = eigensystem(&matrix, DEGENERACY_TOL)?;
        let min_eigenvalue = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min_eigenvalue < -PSD_SLACK {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    /// `|ψ⟩⟨ψ|` for the normalized input vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if psi.is_empty() || norm == 0.0 {
            return Err(Error::Domain("state vector must be non-zero".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v, &v))
    }

    /// Basis state `|k⟩⟨k|`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        let mut v = vec![Complex64::default(); n];
        v[k] = c(1.0, 0.0);
        Self::from_pure(&v)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `λ·self + (1−λ)·other`.
    pub fn mix(&self, other: &DensityState, lambda: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Domain(format!("mixing weight {lambda} not in [0, 1]")));
        }
        Self::new(&self.matrix.scale_real(lambda) + &other.matrix.scale_real(1.0 - lambda))
    }

    /// `U ρ U†`.
    pub fn conjugated(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let m = &(unitary * &self.matrix) * &unitary.adjoint();
        Self::new(hermitize(&m))
    }
}

/// Real coordinates of a unit-trace Hermitian matrix: the first `N−1`
/// diagonal entries, then `(Re ρ_ji, Im ρ_ji)` for every `i < j` in row-major
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct StateParamVector {
    pub values: Vec<f64>,
}

impl StateParamVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Number of real parameters of an `N`-level state.
pub fn param_count(n: usize) -> usize {
    n * n - 1
}

fn parametrize_matrix(m: &ComplexMatrix) -> StateParamVector {
    let n = m.rows();
    let mut values = Vec::with_capacity(param_count(n));
    values.extend((0..n - 1).map(|i| m[(i, i)].re));
    for i in 0..n {
        for j in i + 1..n {
            values.push(m[(j, i)].re);
            values.push(m[(j, i)].im);
        }
    }
    StateParamVector { values }
}

pub fn parametrize(rho: &DensityState) -> StateParamVector {
    parametrize_matrix(rho.matrix())
}

/// Inverse of [`parametrize`] without positivity checks: returns the unit-trace
/// Hermitian matrix with the given coordinates.
pub fn embed_matrix(v: &StateParamVector, n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if v.len() != param_count(n) {
        return Err(Error::LengthMismatch {
            expected: param_count(n),
            found: v.len(),
        });
    }
    let mut m = ComplexMatrix::zeros(n, n);
    let mut last = 1.0;
    for i in 0..n - 1 {
        m[(i, i)] = c(v.values[i], 0.0);
        last -= v.values[i];
    }
    m[(n - 1, n - 1)] = c(last, 0.0);
    let mut idx = n - 1;
    for i in 0..n {
        for j in i + 1..n {
            let z = c(v.values[idx], v.values[idx + 1]);
            m[(j, i)] = z;
            m[(i, j)] = z.conj();
            idx += 2;
        }
    }
    Ok(m)
}

pub fn embed(v: &StateParamVector, n: usize) -> Result<DensityState> {
    DensityState::new(embed_matrix(v, n)?)
}

/// Spin components `J_1, J_2, J_3` of the spin-`j` irreducible representation.
#[derive(Clone, Debug)]
pub struct SpinTriple {
    pub j_times_two: u32,
    pub j1: HermitianObservable,
    pub j2: HermitianObservable,
    pub j3: HermitianObservable,
}

impl SpinTriple {
    pub fn j(&self) -> f64 {
        self.j_times_two as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.j_times_two as usize + 1
    }

    /// Component 1, 2 or 3.
    pub fn component(&self, k: usize) -> Result<&HermitianObservable> {
        match k {
            1 => Ok(&self.j1),
            2 => Ok(&self.j2),
            3 => Ok(&self.j3),
            _ => Err(Error::Domain(format!("spin component must be 1, 2 or 3, got {k}"))),
        }
    }

    pub fn components(&self) -> [&HermitianObservable; 3] {
        [&self.j1, &self.j2, &self.j3]
    }
}

fn spin_label(j_times_two: u32) -> String {
    if j_times_two.is_multiple_of(2) {
        format!("{}", j_times_two / 2)
    } else {
        format!("{j_times_two}/2")
    }
}

/// Standard ladder construction in the `|j, m⟩` basis with `m` descending,
/// so `J_3 = diag(j, j−1, …, −j)`.
pub fn spin_operators(j_times_two: u32) -> Result<SpinTriple> {
    if j_times_two == 0 {
        return Err(Error::Domain("spin representation needs j_times_two >= 1".into()));
    }
    let n = j_times_two as usize + 1;
    let j = j_times_two as f64 / 2.0;
    let m_of = |row: usize| j - row as f64;

    // J+ |m⟩ = sqrt(j(j+1) − m(m+1)) |m+1⟩; row r−1 holds m+1 when row r holds m.
    let mut raise = ComplexMatrix::zeros(n, n);
    for col in 1..n {
        let m = m_of(col);
        raise[(col - 1, col)] = c((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();
    let j1 = (&raise + &lower).scale_real(0.5);
    let j2 = (&raise - &lower).scale(c(0.0, -0.5));
    let j3 = ComplexMatrix::from_diagonal(&(0..n).map(|r| c(m_of(r), 0.0)).collect::<Vec<_>>());

    let name = spin_label(j_times_two);
    Ok(SpinTriple {
        j_times_two,
        j1: HermitianObservable::new(j1, format!("J1[spin {name}]"))?,
        j2: HermitianObservable::new(j2, format!("J2[spin {name}]"))?,
        j3: HermitianObservable::new(j3, format!("J3[spin {name}]"))?,
    })
}

/// Two-level state on the vertical chord through the Bloch direction
/// `(θ, φ)`: `m·|ψ(θ,φ)⟩⟨ψ(θ,φ)| + (1−m)·|ψ(π−θ,φ)⟩⟨ψ(π−θ,φ)|`.
pub fn bloch_state(theta: f64, phi: f64, m: f64) -> Result<DensityState> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, pi]")));
    }
    if !(0.0..2.0 * PI).contains(&phi) {
        return Err(Error::Domain(format!("phi = {phi} outside [0, 2pi)")));
    }
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("m = {m} outside [0, 1]")));
    }
    let z = (2.0 * m - 1.0) * theta.cos();
    let off = Complex64::from_polar(theta.sin(), -phi);
    let rho = ComplexMatrix::from_rows(&[
        vec![c(0.5 * (1.0 + z), 0.0), off * 0.5],
        vec![off.conj() * 0.5, c(0.5 * (1.0 - z), 0.0)],
    ])?;
    DensityState::new(rho)
}

fn check_dims(a: &HermitianObservable, rho: &DensityState) -> Result<()> {
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Born-rule distribution of `A`: weight `Tr[E_A(α) ρ]` at each distinct
/// eigenvalue `α`.
pub fn born_distribution(a: &HermitianObservable, rho: &DensityState) -> Result<QuasiDistribution> {
    check_dims(a, rho)?;
    let atoms = a
        .eigensystem()?
        .iter()
        .map(|(alpha, p)| {
            let w = p.trace_product(rho.matrix());
            (SupportPoint::new(vec![snap(alpha)]), c(w.re, 0.0))
        })
        .collect();
    QuasiDistribution::new(
        1,
        atoms,
        DistributionMeta {
            scheme: "born".into(),
            observables: vec![a.label().to_string()],
            approximate: false,
        },
    )
}

/// `Tr[A ρ]`, rejecting imaginary parts above `1e-10`.
pub fn expectation(a: &HermitianObservable, rho: &DensityState) -> Result<f64> {
    check_dims(a, rho)?;
    let z = a.matrix().trace_product(rho.matrix());
    if z.im.abs() > 1e-10 {
        return Err(Error::NonRealExpectation(z.im));
    }
    Ok(z.re)
}
