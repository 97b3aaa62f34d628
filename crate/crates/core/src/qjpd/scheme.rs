//! Hashed-operator specifications.
//!
//! A scheme is a finite mixture of words; each word is an ordered product of
//! one-parameter unitaries `e^{−i·s_v·c·A_o}`. Every scheme whose hashed
//! operator has that product form can be expanded exactly into finitely many
//! operator atoms (see [`super::build_atoms`]).

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{c, exp_from_eigensystem, ComplexMatrix};
use crate::quantum::HermitianObservable;

const NORMALIZATION_TOL: f64 = 1e-12;

/// One exponential `e^{−i·s_var·coeff·A_obs}` in a word.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Factor {
    pub var: usize,
    pub coeff: f64,
    pub obs: usize,
}

impl Factor {
    pub fn new(var: usize, coeff: f64, obs: usize) -> Self {
        Self { var, coeff, obs }
    }

    /// Factor whose variable and observable slot coincide.
    pub fn on(slot: usize, coeff: f64) -> Self {
        Self::new(slot, coeff, slot)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub weight: Complex64,
    pub word: Vec<Factor>,
}

/// A convex (complex-weighted) mixture of product-form words.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeSpec {
    n_vars: usize,
    terms: Vec<Term>,
    label: String,
    approximate: bool,
}

impl SchemeSpec {
    /// Validates normalization (`Σ weights = 1`) and, for every word and
    /// variable, that the coefficients of that variable sum to one. Each
    /// variable must be paired with a single observable slot.
    pub fn new(n_vars: usize, terms: Vec<Term>, label: impl Into<String>) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidScheme("scheme needs at least one variable".into()));
        }
        if terms.is_empty() {
            return Err(Error::InvalidScheme("scheme has no terms".into()));
        }
        let total: Complex64 = terms.iter().map(|t| t.weight).sum();
        if (total - c(1.0, 0.0)).norm() > NORMALIZATION_TOL {
            return Err(Error::InvalidScheme(format!(
                "term weights sum to {total}, expected 1"
            )));
        }
        let mut slot_of_var: Vec<Option<usize>> = vec![None; n_vars];
        for (t_idx, term) in terms.iter().enumerate() {
            let mut sums = vec![0.0; n_vars];
            for f in &term.word {
                if f.var >= n_vars || f.obs >= n_vars {
                    return Err(Error::InvalidScheme(format!(
                        "term {t_idx}: factor {f:?} references a slot beyond {n_vars} variables"
                    )));
                }
                if !f.coeff.is_finite() {
                    return Err(Error::InvalidScheme(format!(
                        "term {t_idx}: non-finite coefficient"
                    )));
                }
                match slot_of_var[f.var] {
                    Some(o) if o != f.obs => {
                        return Err(Error::InvalidScheme(format!(
                            "variable {} is paired with observables {o} and {}",
                            f.var, f.obs
                        )))
                    }
                    _ => slot_of_var[f.var] = Some(f.obs),
                }
                sums[f.var] += f.coeff;
            }
            for (v, s) in sums.iter().enumerate() {
                if (s - 1.0).abs() > NORMALIZATION_TOL {
                    return Err(Error::InvalidScheme(format!(
                        "term {t_idx}: coefficients of variable {v} sum to {s}, expected 1"
                    )));
                }
            }
        }
        Ok(Self {
            n_vars,
            terms,
            label: label.into(),
            approximate: false,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when the scheme discretizes a continuous mixture.
    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    /// Observable slot attached to variable `var`.
    pub fn observable_for_var(&self, var: usize) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|t| &t.word)
            .find(|f| f.var == var)
            .map(|f| f.obs)
    }

    /// Kirkwood–Dirac: `e^{−is_1A_1} e^{−is_2A_2} ⋯ e^{−is_nA_n}`.
    pub fn kirkwood(n_vars: usize) -> Result<Self> {
        let word = (0..n_vars).map(|v| Factor::on(v, 1.0)).collect();
        Self::new(
            n_vars,
            vec![Term {
                weight: c(1.0, 0.0),
                word,
            }],
            "kirkwood",
        )
    }

    /// `e^{−iαsA} e^{−itB} e^{−i(1−α)sA}`.
    pub fn s_alpha(alpha: f64) -> Result<Self> {
        Self::new(
            2,
            vec![Term {
                weight: c(1.0, 0.0),
                word: vec![
                    Factor::on(0, alpha),
                    Factor::on(1, 1.0),
                    Factor::on(0, 1.0 - alpha),
                ],
            }],
            format!("s_alpha({alpha})"),
        )
    }

    /// `((1+α)/2) e^{−isA}e^{−itB} + ((1−α)/2) e^{−itB}e^{−isA}`.
    pub fn margenau_hill(alpha: f64) -> Result<Self> {
        Self::new(
            2,
            vec![
                Term {
                    weight: c((1.0 + alpha) / 2.0, 0.0),
                    word: vec![Factor::on(0, 1.0), Factor::on(1, 1.0)],
                },
                Term {
                    weight: c((1.0 - alpha) / 2.0, 0.0),
                    word: vec![Factor::on(1, 1.0), Factor::on(0, 1.0)],
                },
            ],
            format!("margenau_hill({alpha})"),
        )
    }

    /// Born–Jordan, `½∫_{−1}^{1} e^{−i((1−k)/2)sA} e^{−itB} e^{−i((1+k)/2)sA} dk`,
    /// discretized with a Gauss–Legendre rule in `k`. A single node collapses
    /// to the midpoint `k = 0`.
    pub fn born_jordan(nodes: usize) -> Result<Self> {
        let pairs: Vec<(f64, f64)> = match nodes {
            0 => return Err(Error::InvalidScheme("Born-Jordan needs at least one node".into())),
            1 => vec![(0.0, 2.0)],
            n => {
                let rule = GaussLegendre::new(n)
                    .map_err(|e| Error::InvalidScheme(format!("Gauss-Legendre rule: {e}")))?;
                let mut pairs = rule.into_node_weight_pairs();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
                pairs
            }
        };
        let weight_sum: f64 = pairs.iter().map(|p| p.1).sum();
        let terms = pairs
            .iter()
            .map(|&(k, w)| Term {
                weight: c(w / weight_sum, 0.0),
                word: vec![
                    Factor::on(0, (1.0 - k) / 2.0),
                    Factor::on(1, 1.0),
                    Factor::on(0, (1.0 + k) / 2.0),
                ],
            })
            .collect();
        let mut spec = Self::new(2, terms, format!("born_jordan({nodes})"))?;
        spec.approximate = true;
        Ok(spec)
    }

    /// Single unitary word alternating the two observables, with per-factor
    /// coefficients `a` (first observable) and `b` (second observable).
    pub fn unitary_form(form: UnitaryForm, a: &[f64], b: &[f64]) -> Result<Self> {
        let (na, nb) = (a.len(), b.len());
        let n = match form {
            UnitaryForm::T1 | UnitaryForm::T2 => nb,
            UnitaryForm::T3 | UnitaryForm::T4 => na,
        };
        let (want_a, want_b) = match form {
            UnitaryForm::T1 | UnitaryForm::T3 => (n, n),
            UnitaryForm::T2 => (n + 1, n),
            UnitaryForm::T4 => (n, n + 1),
        };
        if n == 0 || na != want_a || nb != want_b {
            return Err(Error::InvalidScheme(format!(
                "{form:?} with {na} A-coefficients and {nb} B-coefficients"
            )));
        }
        let fa: Vec<Factor> = a.iter().map(|&x| Factor::on(0, x)).collect();
        let fb: Vec<Factor> = b.iter().map(|&x| Factor::on(1, x)).collect();
        let (first, second) = match form {
            UnitaryForm::T1 | UnitaryForm::T2 => (fa, fb),
            UnitaryForm::T3 | UnitaryForm::T4 => (fb, fa),
        };
        let mut word = Vec::with_capacity(na + nb);
        for i in 0..first.len().max(second.len()) {
            word.extend(first.get(i));
            word.extend(second.get(i));
        }
        Self::new(
            2,
            vec![Term {
                weight: c(1.0, 0.0),
                word,
            }],
            format!("{form:?}"),
        )
    }

    /// `ĥ(s) = Σ_terms w ∏ e^{−i s_var coeff A_obs}`.
    pub fn hashed_operator(
        &self,
        observables: &[HermitianObservable],
        s: &[f64],
    ) -> Result<ComplexMatrix> {
        let dim = check_observables(self.n_vars, observables)?;
        if s.len() != self.n_vars {
            return Err(Error::LengthMismatch {
                expected: self.n_vars,
                found: s.len(),
            });
        }
        let eigs = observables
            .iter()
            .map(|o| o.eigensystem())
            .collect::<Result<Vec<_>>>()?;
        let mut out = ComplexMatrix::zeros(dim, dim);
        for term in &self.terms {
            let mut prod = ComplexMatrix::identity(dim).scale(term.weight);
            for f in &term.word {
                prod = &prod * &exp_from_eigensystem(eigs[f.obs], s[f.var] * f.coeff);
            }
            out += &prod;
        }
        Ok(out)
    }
}

/// Alternating-word families for two observables `A`, `B`:
/// `T1 = A B A B ⋯ A B`, `T2 = A B ⋯ B A`, `T3 = B A ⋯ B A`, `T4 = B A ⋯ A B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitaryForm {
    T1,
    T2,
    T3,
    T4,
}

impl UnitaryForm {
    pub const ALL: [UnitaryForm; 4] = [Self::T1, Self::T2, Self::T3, Self::T4];

    /// Numbers of `A` and `B` factors for `n` repetitions.
    pub fn factor_counts(self, n: usize) -> (usize, usize) {
        match self {
            Self::T1 | Self::T3 => (n, n),
            Self::T2 => (n + 1, n),
            Self::T4 => (n, n + 1),
        }
    }
}

/// Returns the common dimension after checking slot count and dimensions.
pub(crate) fn check_observables(n_vars: usize, observables: &[HermitianObservable]) -> Result<usize> {
    if observables.len() != n_vars {
        return Err(Error::DimensionMismatch {
            expected: n_vars,
            found: observables.len(),
        });
    }
    let dim = observables[0].dim();
    for o in observables {
        if o.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: o.dim(),
            });
        }
    }
    Ok(dim)
}
