use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::Result;
use crate::matcore::{ComplexMatrix, EigenSystem};
use crate::quantum::HermitianObservable;

use super::scheme::{check_observables, SchemeSpec};

/// Default identification distance for support coordinates.
pub const MERGE_TOL: f64 = 1e-9;
/// Default max-norm below which an atom (or weight) is dropped.
pub const PRUNE_TOL: f64 = 1e-12;

const GRID: f64 = 1e12;

/// A point of `Rⁿ`, totally ordered lexicographically.
#[derive(Clone, PartialEq)]
pub struct SupportPoint(Vec<f64>);

impl SupportPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// Max-norm distance; `∞` for points of different dimension.
    pub fn distance(&self, other: &SupportPoint) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Eq for SupportPoint {}

impl PartialOrd for SupportPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SupportPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl fmt::Debug for SupportPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<f64>> for SupportPoint {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomOptions {
    pub merge_tol: f64,
    pub prune_tol: f64,
}

impl Default for AtomOptions {
    fn default() -> Self {
        Self {
            merge_tol: MERGE_TOL,
            prune_tol: PRUNE_TOL,
        }
    }
}

/// Operator-valued atoms `#(x)`, sorted by support point.
#[derive(Clone, Debug)]
pub struct OperatorAtomSet {
    n_vars: usize,
    dim: usize,
    atoms: Vec<(SupportPoint, ComplexMatrix)>,
    scheme: String,
    observables: Vec<String>,
    approximate: bool,
}

impl OperatorAtomSet {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[(SupportPoint, ComplexMatrix)] {
        &self.atoms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SupportPoint, &ComplexMatrix)> {
        self.atoms.iter().map(|(p, m)| (p, m))
    }

    pub fn support(&self) -> Vec<SupportPoint> {
        self.atoms.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Atom at `point`, matched within `tol` in every coordinate.
    pub fn atom_at(&self, point: &[f64], tol: f64) -> Option<&ComplexMatrix> {
        let p = SupportPoint::new(point.to_vec());
        self.atoms
            .iter()
            .find(|(q, _)| q.distance(&p) <= tol)
            .map(|(_, m)| m)
    }

    pub fn scheme_label(&self) -> &str {
        &self.scheme
    }

    pub fn observable_labels(&self) -> &[String] {
        &self.observables
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    /// `Σ_x #(x)`; equals the identity for any valid scheme.
    pub fn total(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (_, m) in &self.atoms {
            out += m;
        }
        out
    }

    /// `f(A) = Σ_x f(x)·#(x)`.
    pub fn quantize(&self, f: impl Fn(&[f64]) -> Complex64) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (p, m) in &self.atoms {
            out += &m.scale(f(p.coords()));
        }
        out
    }

    /// Marginal operator of variable `var` at coordinate `value`.
    pub fn marginal_operator(&self, var: usize, value: f64, tol: f64) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for (p, m) in &self.atoms {
            if (p.coord(var) - value).abs() <= tol {
                out += m;
            }
        }
        out
    }

    /// True when every atom matrix is Hermitian within `tol`.
    pub fn all_hermitian(&self, tol: f64) -> bool {
        self.atoms.iter().all(|(_, m)| m.is_hermitian(tol))
    }
}

/// Free-function form of [`OperatorAtomSet::quantize`].
pub fn quantize(f: impl Fn(&[f64]) -> Complex64, atoms: &OperatorAtomSet) -> ComplexMatrix {
    atoms.quantize(f)
}

pub fn build_atoms(spec: &SchemeSpec, observables: &[HermitianObservable]) -> Result<OperatorAtomSet> {
    build_atoms_with(spec, observables, AtomOptions::default())
}

/// Expands every word spectrally: each choice of one eigenvalue per factor
/// contributes `w·P₁P₂⋯` at `x_v = Σ_{factors of v} c·α`.
pub fn build_atoms_with(
    spec: &SchemeSpec,
    observables: &[HermitianObservable],
    opts: AtomOptions,
) -> Result<OperatorAtomSet> {
    let dim = check_observables(spec.n_vars(), observables)?;
    let eigs = observables
        .iter()
        .map(|o| o.eigensystem())
        .collect::<Result<Vec<_>>>()?;
    let n_vars = spec.n_vars();

    let mut raw: Vec<(Vec<f64>, ComplexMatrix)> = Vec::new();
    for term in spec.terms() {
        let factors: Vec<(usize, f64, &EigenSystem)> = term
            .word
            .iter()
            .map(|f| (f.var, f.coeff, eigs[f.obs]))
            .collect();
        let start = ComplexMatrix::identity(dim).scale(term.weight);
        expand(&factors, 0, vec![0.0; n_vars], start, &mut raw);
    }

    let merged = merge_points(n_vars, raw, opts.merge_tol);
    let atoms = merged
        .into_iter()
        .filter(|(_, m)| m.max_norm() >= opts.prune_tol)
        .collect();
    Ok(OperatorAtomSet {
        n_vars,
        dim,
        atoms,
        scheme: spec.label().to_string(),
        observables: observables.iter().map(|o| o.label().to_string()).collect(),
        approximate: spec.is_approximate(),
    })
}

fn expand(
    factors: &[(usize, f64, &EigenSystem)],
    depth: usize,
    coords: Vec<f64>,
    partial: ComplexMatrix,
    out: &mut Vec<(Vec<f64>, ComplexMatrix)>,
) {
    if depth == factors.len() {
        out.push((coords, partial));
        return;
    }
    let (var, coeff, eig) = factors[depth];
    for (alpha, proj) in eig.iter() {
        let next = &partial * proj;
        // Projectors have unit operator norm, so a vanishing prefix stays zero.
        if next.max_norm() < 1e-15 {
            continue;
        }
        let mut x = coords.clone();
        x[var] += coeff * alpha;
        expand(factors, depth + 1, x, next, out);
    }
}

/// Snaps coordinates per axis by chain clustering and sums the matrices of
/// identified points.
fn merge_points<T>(n_vars: usize, raw: Vec<(Vec<f64>, T)>, tol: f64) -> Vec<(SupportPoint, T)>
where
    T: for<'a> std::ops::AddAssign<&'a T>,
{
    let snaps: Vec<Vec<(f64, f64)>> = (0..n_vars)
        .map(|v| axis_clusters(raw.iter().map(|(x, _)| x[v]), tol))
        .collect();
    let mut merged: BTreeMap<SupportPoint, T> = BTreeMap::new();
    for (x, m) in raw {
        let key: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(v, &xv)| lookup(&snaps[v], xv))
            .collect();
        match merged.entry(SupportPoint(key)) {
            std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += &m,
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(m);
            }
        }
    }
    merged.into_iter().collect()
}

/// Sorted `(value, representative)` pairs for one axis.
fn axis_clusters(values: impl Iterator<Item = f64>, tol: f64) -> Vec<(f64, f64)> {
    let mut vals: Vec<f64> = values.collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut out = Vec::with_capacity(vals.len());
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > tol {
            let group = &vals[start..i];
            let rep = snap(group.iter().sum::<f64>() / group.len() as f64);
            out.extend(group.iter().map(|&v| (v, rep)));
            start = i;
        }
    }
    out
}

fn lookup(table: &[(f64, f64)], v: f64) -> f64 {
    let i = table
        .binary_search_by(|probe| probe.0.total_cmp(&v))
        .expect("value was clustered");
    table[i].1
}

pub(crate) fn snap(x: f64) -> f64 {
    (x * GRID).round() / GRID + 0.0
}

/// Merges complex weights the same way atoms are merged.
pub(crate) fn merge_weights(
    n_vars: usize,
    raw: Vec<(Vec<f64>, Complex64)>,
    tol: f64,
) -> Vec<(SupportPoint, Complex64)> {
    merge_points(n_vars, raw, tol)
}
