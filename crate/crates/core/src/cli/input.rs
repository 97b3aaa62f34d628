//! JSON input formats and their validation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matcore::{c, ComplexMatrix};
use crate::qjpd::{Factor, Kernel, SchemeSpec, Term, UnitaryForm};
use crate::quantum::{bloch_state, spin_operators, DensityState, HermitianObservable};

use super::CliError;

/// A complex entry written as `[re, im]`.
pub type Entry = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObservableInput {
    Matrix { dim: usize, matrix: Vec<Vec<Entry>> },
    Builtin { builtin: String, component: u8 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochInput {
    pub theta: f64,
    pub phi: f64,
    pub m: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    Density { density: Vec<Vec<Entry>> },
    Bloch { bloch: BlochInput },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorInput {
    pub var: usize,
    pub coeff: f64,
    pub obs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermInput {
    pub weight: Entry,
    pub word: Vec<FactorInput>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeInput {
    Explicit {
        terms: Vec<TermInput>,
    },
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nodes: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<Vec<f64>>,
    },
}

impl SchemeInput {
    pub fn named(name: &str) -> Self {
        SchemeInput::Named {
            name: name.into(),
            alpha: None,
            nodes: None,
            a: None,
            b: None,
        }
    }

    /// Short forms: `kirkwood`, `s_alpha:0.5`, `margenau_hill:0`,
    /// `born_jordan:201`, `wigner`.
    fn from_token(token: &str) -> Option<Self> {
        let (name, arg) = match token.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (token, None),
        };
        let mut out = SchemeInput::named(name);
        if let (SchemeInput::Named { alpha, nodes, .. }, Some(arg)) = (&mut out, arg) {
            match name {
                "s_alpha" | "margenau_hill" => *alpha = Some(arg.parse().ok()?),
                "born_jordan" => *nodes = Some(arg.parse().ok()?),
                _ => return None,
            }
        }
        match name {
            "kirkwood" | "s_alpha" | "margenau_hill" | "born_jordan" | "wigner" => Some(out),
            _ => None,
        }
    }

    /// Resolves to a kernel over `n_vars` observables.
    pub fn to_kernel(&self, n_vars: usize) -> Result<Kernel, CliError> {
        match self {
            SchemeInput::Explicit { terms } => {
                let terms = terms
                    .iter()
                    .map(|t| Term {
                        weight: c(t.weight[0], t.weight[1]),
                        word: t.word.iter().map(|f| Factor::new(f.var, f.coeff, f.obs)).collect(),
                    })
                    .collect();
                let spec = SchemeSpec::new(n_vars, terms, "explicit")
                    .map_err(|e| CliError::validation("scheme.terms", e))?;
                Ok(Kernel::Product(spec))
            }
            SchemeInput::Named {
                name,
                alpha,
                nodes,
                a,
                b,
            } => {
                let need_two = || {
                    if n_vars == 2 {
                        Ok(())
                    } else {
                        Err(CliError::validation(
                            "scheme.name",
                            format!("{name} needs exactly two observables, got {n_vars}"),
                        ))
                    }
                };
                let alpha_or = |default: Option<f64>| {
                    alpha
                        .or(default)
                        .ok_or_else(|| CliError::validation("scheme.alpha", "missing"))
                };
                let spec = match name.as_str() {
                    "kirkwood" => SchemeSpec::kirkwood(n_vars),
                    "s_alpha" => {
                        need_two()?;
                        SchemeSpec::s_alpha(alpha_or(Some(0.5))?)
                    }
                    "margenau_hill" => {
                        need_two()?;
                        SchemeSpec::margenau_hill(alpha_or(Some(0.0))?)
                    }
                    "born_jordan" => {
                        need_two()?;
                        SchemeSpec::born_jordan(nodes.unwrap_or(201))
                    }
                    "wigner" => return Ok(Kernel::Wigner(n_vars)),
                    "t1" | "t2" | "t3" | "t4" => {
                        need_two()?;
                        let form = UnitaryForm::ALL[(name.as_bytes()[1] - b'1') as usize];
                        let a = a.as_ref().ok_or_else(|| CliError::validation("scheme.a", "missing"))?;
                        let b = b.as_ref().ok_or_else(|| CliError::validation("scheme.b", "missing"))?;
                        SchemeSpec::unitary_form(form, a, b)
                    }
                    other => {
                        return Err(CliError::validation(
                            "scheme.name",
                            format!("unknown scheme `{other}`"),
                        ))
                    }
                }
                .map_err(|e| CliError::validation("scheme", e))?;
                Ok(Kernel::Product(spec))
            }
        }
    }
}

/// Reads `arg` as inline JSON (leading `{`), a file path, or `None` for the
/// caller to treat as a token.
fn load_json(arg: &str) -> Result<Option<serde_json::Value>, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        trimmed.to_string()
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("{arg}: {e}")))?
    } else {
        return Ok(None);
    };
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| CliError::Parse(format!("{arg}: {e}")))
}

fn typed<T: for<'de> Deserialize<'de>>(v: serde_json::Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

/// `spin:j:k`, with `j` an integer or half-integer fraction.
fn parse_spin_token(token: &str) -> Option<(u32, Option<u8>)> {
    let mut parts = token.split(':');
    if parts.next()? != "spin" {
        return None;
    }
    let j = parts.next()?;
    let j_times_two = match j.split_once('/') {
        Some((num, "2")) => num.parse::<u32>().ok()?,
        Some(_) => return None,
        None => 2 * j.parse::<u32>().ok()?,
    };
    let component = match parts.next() {
        Some(k) => Some(k.parse().ok()?),
        None => None,
    };
    if parts.next().is_some() {
        return None;
    }
    Some((j_times_two, component))
}

fn builtin(token: &str, component: u8, path: &str) -> Result<HermitianObservable, CliError> {
    let (j2, _) = parse_spin_token(token)
        .ok_or_else(|| CliError::validation(format!("{path}builtin"), format!("unknown builtin `{token}`")))?;
    if j2 == 0 {
        return Err(CliError::validation(format!("{path}builtin"), "spin must be positive"));
    }
    let triple = spin_operators(j2).map_err(|e| CliError::validation(format!("{path}builtin"), e))?;
    triple
        .component(component as usize)
        .cloned()
        .map_err(|e| CliError::validation(format!("{path}component"), e))
}

fn matrix_from_entries(rows: &[Vec<Entry>], field: &str) -> Result<ComplexMatrix, CliError> {
    let n = rows.len();
    if n == 0 {
        return Err(CliError::validation(field, "matrix is empty"));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(CliError::validation(
                format!("{field}[{i}]"),
                format!("row has {} entries, expected {n}", r.len()),
            ));
        }
    }
    let complex_rows: Vec<Vec<_>> = rows
        .iter()
        .map(|r| r.iter().map(|e| c(e[0], e[1])).collect())
        .collect();
    ComplexMatrix::from_rows(&complex_rows).map_err(|e| CliError::validation(field, e))
}

fn entry_error(field: &str, e: Error) -> CliError {
    match e {
        Error::NotHermitian { row, col, .. } => CliError::validation(format!("{field}[{row}][{col}]"), e),
        other => CliError::validation(field, other),
    }
}

pub fn parse_observable(arg: &str) -> Result<HermitianObservable, CliError> {
    let Some(json) = load_json(arg)? else {
        let (_, component) = parse_spin_token(arg)
            .ok_or_else(|| CliError::Parse(format!("`{arg}` is neither JSON, a file, nor a spin:j:k token")))?;
        let component =
            component.ok_or_else(|| CliError::validation("component", format!("`{arg}` needs a component, e.g. {arg}:1")))?;
        return builtin(arg, component, "");
    };
    match typed::<ObservableInput>(json, "observable")? {
        ObservableInput::Builtin { builtin: token, component } => builtin(&token, component, ""),
        ObservableInput::Matrix { dim, matrix } => {
            if matrix.len() != dim {
                return Err(CliError::validation(
                    "matrix",
                    format!("{} rows for dim {dim}", matrix.len()),
                ));
            }
            let m = matrix_from_entries(&matrix, "matrix")?;
            HermitianObservable::new(m, arg_label(arg)).map_err(|e| entry_error("matrix", e))
        }
    }
}

fn arg_label(arg: &str) -> String {
    if arg.trim_start().starts_with('{') {
        "inline".into()
    } else {
        Path::new(arg)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string())
    }
}

pub fn parse_state(arg: &str) -> Result<DensityState, CliError> {
    let json = load_json(arg)?.ok_or_else(|| CliError::Parse(format!("`{arg}` is neither JSON nor a file")))?;
    match typed::<StateInput>(json, "state")? {
        StateInput::Density { density } => {
            let m = matrix_from_entries(&density, "density")?;
            DensityState::new(m).map_err(|e| entry_error("density", e))
        }
        StateInput::Bloch { bloch } => bloch_state(bloch.theta, bloch.phi, bloch.m).map_err(|e| {
            let field = match &e {
                Error::Domain(msg) if msg.starts_with("phi") => "bloch.phi",
                Error::Domain(msg) if msg.starts_with("m ") => "bloch.m",
                _ => "bloch.theta",
            };
            CliError::validation(field, e)
        }),
    }
}

pub fn parse_scheme(arg: &str) -> Result<SchemeInput, CliError> {
    match load_json(arg)? {
        Some(json) => typed(json, "scheme"),
        None => SchemeInput::from_token(arg)
            .ok_or_else(|| CliError::Parse(format!("unknown scheme `{arg}`"))),
    }
}
