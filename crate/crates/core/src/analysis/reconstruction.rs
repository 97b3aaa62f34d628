use crate::error::{Error, Result};
use crate::matcore::{real_rank_and_pinv, ComplexMatrix, RealMatrix, RANK_THRESHOLD_RATIO};
use crate::qjpd::{build_atoms, check_observables, QuasiDistribution, SchemeSpec, SupportPoint, MERGE_TOL};
use crate::quantum::{embed, embed_matrix, param_count, parametrize, DensityState, HermitianObservable, StateParamVector};

/// Weight magnitude tolerated off the map support.
pub const SUPPORT_MISMATCH_TOL: f64 = 1e-9;

/// Affine map from the canonical state parameters to the stacked
/// `(Re P(x₁), Im P(x₁), Re P(x₂), …)` coefficient vector.
#[derive(Clone, Debug)]
pub struct ReconstructionMap {
    pub observables: Vec<HermitianObservable>,
    pub scheme: SchemeSpec,
    pub support: Vec<SupportPoint>,
    pub map_matrix: RealMatrix,
    pub offset: Vec<f64>,
    pub rank: usize,
    pub pinv: RealMatrix,
    pub singular_values: Vec<f64>,
    dim: usize,
    atoms: Vec<ComplexMatrix>,
}

impl ReconstructionMap {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N² − 1`.
    pub fn required_rank(&self) -> usize {
        param_count(self.dim)
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.required_rank()
    }

    /// Coefficients of any unit-trace Hermitian matrix.
    pub fn coefficients_of_matrix(&self, m: &ComplexMatrix) -> Vec<f64> {
        self.atoms
            .iter()
            .flat_map(|a| {
                let w = a.trace_product(m);
                [w.re, w.im]
            })
            .collect()
    }

    pub fn coefficients_of(&self, rho: &DensityState) -> Vec<f64> {
        self.coefficients_of_matrix(rho.matrix())
    }

    /// `map_matrix · v + offset`.
    pub fn predict(&self, v: &StateParamVector) -> Vec<f64> {
        let x = nalgebra::DVector::from_column_slice(&v.values);
        let y = &self.map_matrix * x;
        y.iter().zip(&self.offset).map(|(a, b)| a + b).collect()
    }

    /// Aligns `dist` with the map support; missing points count as zero.
    pub fn coefficient_vector(&self, dist: &QuasiDistribution) -> Result<Vec<f64>> {
        if dist.n_vars() != self.observables.len() {
            return Err(Error::DimensionMismatch {
                expected: self.observables.len(),
                found: dist.n_vars(),
            });
        }
        let mut out = vec![0.0; 2 * self.support.len()];
        for (p, w) in dist.iter() {
            match self.support.iter().position(|q| q.distance(p) <= MERGE_TOL) {
                Some(k) => {
                    out[2 * k] += w.re;
                    out[2 * k + 1] += w.im;
                }
                None if w.norm() > SUPPORT_MISMATCH_TOL => {
                    return Err(Error::SupportMismatch {
                        point: p.coords().to_vec(),
                        weight: w.norm(),
                    })
                }
                None => {}
            }
        }
        Ok(out)
    }

    /// Linear inversion `embed(pinv · (c − offset))`.
    pub fn reconstruct(&self, dist: &QuasiDistribution) -> Result<DensityState> {
        if !self.is_full_rank() {
            return Err(Error::RankDeficient {
                rank: self.rank,
                required: self.required_rank(),
            });
        }
        let coeffs = self.coefficient_vector(dist)?;
        let centered: Vec<f64> = coeffs.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        let v = &self.pinv * nalgebra::DVector::from_vec(centered);
        embed(
            &StateParamVector {
                values: v.iter().copied().collect(),
            },
            self.dim,
        )
    }

    /// Max-norm difference between `dist` and the prediction for `rho`.
    pub fn residual(&self, dist: &QuasiDistribution, rho: &DensityState) -> Result<f64> {
        let measured = self.coefficient_vector(dist)?;
        let predicted = self.predict(&parametrize(rho));
        Ok(measured
            .iter()
            .zip(&predicted)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Builds the affine map column by column:
/// `offset = c(embed(0))`, `column_k = c(embed(e_k)) − offset`.
pub fn reconstruction_map(
    observables: &[HermitianObservable],
    spec: &SchemeSpec,
) -> Result<ReconstructionMap> {
    let dim = check_observables(spec.n_vars(), observables)?;
    let atom_set = build_atoms(spec, observables)?;
    let support = atom_set.support();
    let atoms: Vec<ComplexMatrix> = atom_set.iter().map(|(_, m)| m.clone()).collect();
    let k = param_count(dim);
    let mut map = ReconstructionMap {
        observables: observables.to_vec(),
        scheme: spec.clone(),
        support,
        map_matrix: RealMatrix::zeros(0, 0),
        offset: Vec::new(),
        rank: 0,
        pinv: RealMatrix::zeros(0, 0),
        singular_values: Vec::new(),
        dim,
        atoms,
    };
    let basis = |i: Option<usize>| {
        let mut values = vec![0.0; k];
        if let Some(i) = i {
            values[i] = 1.0;
        }
        embed_matrix(&StateParamVector { values }, dim)
    };
    let offset = map.coefficients_of_matrix(&basis(None)?);
    let rows = offset.len();
    let mut m = RealMatrix::zeros(rows, k);
    for col in 0..k {
        let c = map.coefficients_of_matrix(&basis(Some(col))?);
        for (r, (a, b)) in c.iter().zip(&offset).enumerate() {
            m[(r, col)] = a - b;
        }
    }
    if rows > 0 && k > 0 {
        let rp = real_rank_and_pinv(&m, RANK_THRESHOLD_RATIO)?;
        map.rank = rp.rank;
        map.pinv = rp.pseudo_inverse;
        map.singular_values = rp.singular_values;
    }
    map.map_matrix = m;
    map.offset = offset;
    Ok(map)
}

/// Free-function form of [`ReconstructionMap::reconstruct`].
pub fn reconstruct_state(map: &ReconstructionMap, dist: &QuasiDistribution) -> Result<DensityState> {
    map.reconstruct(dist)
}
