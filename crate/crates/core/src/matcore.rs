//! Small dense complex linear algebra.
//!
//! Everything here works on matrices of dimension at most a few dozen, so the
//! storage is a flat row-major `Vec` and products are computed naively. The
//! Hermitian eigensolver and the real SVD are delegated to `nalgebra`; this
//! module owns degeneracy grouping, projector construction and rank decisions.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SVD, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Real dense matrix used for reconstruction maps and pseudo-inverses.
pub type RealMatrix = DMatrix<f64>;

/// Absolute tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Default tolerance for merging nearly equal eigenvalues.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Default relative cut-off for singular values.
pub const RANK_THRESHOLD_RATIO: f64 = 1e-8;

const EIGEN_MAX_ITER: usize = 10_000;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of rows, all of which must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::LengthMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n_rows, n_cols, data)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Rank-one matrix `u v†`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `Tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.cols, other.rows, "trace_product: inner dimensions");
        assert_eq!(self.rows, other.cols, "trace_product: outer dimensions");
        let mut acc = Complex64::default();
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(c(factor, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "max_abs_diff: shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Elementwise comparison within an explicit absolute tolerance.
    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.max_abs_diff(other) <= tol
    }

    /// Position and size of the worst violation of `H = H†`.
    pub fn hermitian_violation(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst.2 {
                    worst = (i, j, d);
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_violation().2 <= tol
    }

    /// Fails with [`Error::NotHermitian`] naming the worst entry.
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (row, col, asymmetry) = self.hermitian_violation();
        if asymmetry > tol {
            return Err(Error::NotHermitian {
                row,
                col,
                asymmetry,
            });
        }
        Ok(())
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        &(a * b) - &(b * a)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product: inner dimensions");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::default() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum: shape mismatch"
        );
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference: shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Spectral decomposition with eigenvalues grouped into distinct values.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    /// Distinct eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Orthogonal projector onto each eigenspace.
    pub projectors: Vec<ComplexMatrix>,
    pub multiplicities: Vec<usize>,
}

impl EigenSystem {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.eigenvalues.iter().copied().zip(&self.projectors)
    }

    /// `Σ_k f(α_k) P_k`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (alpha, p) in self.iter() {
            out += &p.scale(f(alpha));
        }
        out
    }

    /// `Σ_k α_k P_k`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|a| c(a, 0.0))
    }
}

/// Diagonalizes a Hermitian matrix, merging eigenvalues closer than
/// `degeneracy_tol` (scaled by the spectral radius when that exceeds one).
pub fn eigensystem(h: &ComplexMatrix, degeneracy_tol: f64) -> Result<EigenSystem> {
    if degeneracy_tol <= 0.0 || !degeneracy_tol.is_finite() {
        return Err(Error::Domain(format!(
            "degeneracy tolerance must be positive, got {degeneracy_tol}"
        )));
    }
    h.check_hermitian(HERMITIAN_TOL)?;
    let n = h.rows();
    let sym = (&h.to_nalgebra() + h.to_nalgebra().adjoint()) * c(0.5, 0.0);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, EIGEN_MAX_ITER)
        .ok_or(Error::ConvergenceFailure { dim: n })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let radius = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let tol = degeneracy_tol * radius.max(1.0);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        let value = eig.eigenvalues[idx];
        match groups.last_mut() {
            Some(group) if eig.eigenvalues[*group.last().unwrap()] - value <= tol => {
                group.push(idx)
            }
            _ => groups.push(vec![idx]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    let mut multiplicities = Vec::with_capacity(groups.len());
    for group in &groups {
        let mean = group.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / group.len() as f64;
        let mut p = ComplexMatrix::zeros(n, n);
        for &i in group {
            let v: Vec<Complex64> = eig.eigenvectors.column(i).iter().copied().collect();
            p += &ComplexMatrix::outer(&v, &v);
        }
        eigenvalues.push(mean);
        projectors.push(p);
        multiplicities.push(group.len());
    }
    Ok(EigenSystem {
        eigenvalues,
        projectors,
        multiplicities,
    })
}

/// `e^{−i·scale·H}` built from the spectral decomposition of `H`.
pub fn matrix_exponential_unitary(h: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    let eig = eigensystem(h, DEGENERACY_TOL)?;
    Ok(exp_from_eigensystem(&eig, scale))
}

pub(crate) fn exp_from_eigensystem(eig: &EigenSystem, scale: f64) -> ComplexMatrix {
    eig.apply(|alpha| Complex64::from_polar(1.0, -scale * alpha))
}

/// Numerical rank and Moore–Penrose pseudo-inverse of a real matrix.
#[derive(Clone, Debug)]
pub struct RankAndPinv {
    pub rank: usize,
    pub pseudo_inverse: RealMatrix,
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
}

/// Counts singular values above `threshold_ratio` times the largest and
/// inverts only those.
pub fn real_rank_and_pinv(m: &RealMatrix, threshold_ratio: f64) -> Result<RankAndPinv> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if !(threshold_ratio > 0.0 && threshold_ratio < 1.0) {
        return Err(Error::Domain(format!(
            "threshold ratio must lie in (0, 1), got {threshold_ratio}"
        )));
    }
    let svd = SVD::try_new(m.clone(), true, true, f64::EPSILON, EIGEN_MAX_ITER).ok_or(
        Error::ConvergenceFailure {
            dim: m.nrows().max(m.ncols()),
        },
    )?;
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let largest = singular_values.first().copied().unwrap_or(0.0);

    let mut pinv = RealMatrix::zeros(m.ncols(), m.nrows());
    let mut rank = 0;
    if largest > 0.0 {
        for &i in &order {
            let sigma = svd.singular_values[i];
            if sigma <= threshold_ratio * largest {
                continue;
            }
            rank += 1;
            let v_col = v_t.row(i).transpose();
            let u_col = u.column(i);
            pinv += (v_col * u_col.transpose()) / sigma;
        }
    }
    Ok(RankAndPinv {
        rank,
        pseudo_inverse: pinv,
        singular_values,
    })
}
