//! Command-line front end.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 unparseable input,
//! 3 input that parses but fails validation.

mod args;
mod input;
mod output;

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::analysis::{
    diag_equality_check, is_real, reconstruction_map, scheme_is_real, verify_support,
    degeneracy_feasible, min_common_distinct, min_distinct_with_nondegenerate, REAL_TOL,
};
use crate::error::Error;
use crate::matcore::c;
use crate::qjpd::{
    characteristic_function, evaluate_distribution, grid_points, parse_grid, AtomOptions, DistributionMeta,
    Kernel, QuasiDistribution, SupportPoint,
};
use crate::quantum::{
    bloch_state, born_distribution, expectation, spin_operators, DensityState, HermitianObservable,
};

pub use args::{main_with_args, Cli};
pub use input::{
    parse_observable, parse_scheme, parse_state, BlochInput, Entry, FactorInput, ObservableInput,
    SchemeInput, StateInput, TermInput,
};
pub use output::{fmt_f64, Table};

/// Default weight threshold for support verification.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-10;
const SCHEME_SAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Parse(String),
    Validation { field: String, message: String },
    Numerical(Error),
    Io(String),
}

impl CliError {
    pub fn validation(field: impl Into<String>, message: impl fmt::Display) -> Self {
        CliError::Validation {
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation { .. } => 3,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation { field, message } => write!(f, "invalid {field}: {message}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numerical(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Compute,
    Marginals,
    Tomography,
    Rank,
    Verify,
    Charfunc,
    Degeneracy,
    ScanRealness,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    #[serde(default)]
    pub observables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegeneracyParams {
    pub n: u64,
    pub n_a: u64,
    pub n_b: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanParams {
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub m_steps: usize,
}

impl Default for ScanParams {
    fn default() -> Self {
        Self {
            theta_steps: 5,
            phi_steps: 4,
            m_steps: 3,
        }
    }
}

/// One invocation, as parsed from flags or a job file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Command,
    #[serde(default)]
    pub inputs: Inputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeInput>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<DegeneracyParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanParams>,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            inputs: Inputs::default(),
            scheme: None,
            output: OutputSpec::default(),
            tolerances: Tolerances::default(),
            grid: None,
            degeneracy: None,
            scan: None,
        }
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("job: {e}")))
    }
}

/// Rendered output and the exit code it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub body: String,
    pub exit_code: i32,
}

impl Report {
    fn ok(body: String) -> Self {
        Self { body, exit_code: 0 }
    }
}

struct Loaded {
    observables: Vec<HermitianObservable>,
    kernel: Kernel,
}

fn load_common(job: &JobConfig, default_scheme: &str) -> Result<Loaded, CliError> {
    if job.inputs.observables.is_empty() {
        return Err(CliError::validation("inputs.observables", "at least one --obs is required"));
    }
    let observables = job
        .inputs
        .observables
        .iter()
        .map(|o| parse_observable(o))
        .collect::<Result<Vec<_>, _>>()?;
    let dim = observables[0].dim();
    if let Some(i) = observables.iter().position(|o| o.dim() != dim) {
        return Err(CliError::validation(
            format!("inputs.observables[{i}]"),
            format!("dimension {} differs from {dim}", observables[i].dim()),
        ));
    }
    let scheme = match &job.scheme {
        Some(s) => s.clone(),
        None => SchemeInput::named(default_scheme),
    };
    let kernel = scheme.to_kernel(observables.len())?;
    Ok(Loaded { observables, kernel })
}

fn load_state(job: &JobConfig, dim: usize) -> Result<DensityState, CliError> {
    let arg = job
        .inputs
        .state
        .as_deref()
        .ok_or_else(|| CliError::validation("inputs.state", "--state is required"))?;
    let rho = parse_state(arg)?;
    if rho.dim() != dim {
        return Err(CliError::validation(
            "inputs.state",
            format!("dimension {} differs from observables ({dim})", rho.dim()),
        ));
    }
    Ok(rho)
}

fn distribution(loaded: &Loaded, rho: &DensityState) -> Result<QuasiDistribution, CliError> {
    let atoms = loaded.kernel.build_atoms(&loaded.observables, AtomOptions::default())?;
    Ok(evaluate_distribution(&atoms, rho)?)
}

fn product_spec(loaded: &Loaded) -> Result<&crate::qjpd::SchemeSpec, CliError> {
    match &loaded.kernel {
        Kernel::Product(s) => Ok(s),
        Kernel::Wigner(_) => Err(CliError::Numerical(Error::NoAtomicForm(
            "the Wigner kernel has no finite atoms; use charfunc".into(),
        ))),
    }
}

/// Executes a job and renders its output.
pub fn run(job: &JobConfig) -> Result<Report, CliError> {
    let format = job.output.format;
    match job.command {
        Command::Compute => {
            let loaded = load_common(job, "kirkwood")?;
            let rho = load_state(job, loaded.observables[0].dim())?;
            let dist = distribution(&loaded, &rho)?;
            render_distribution(&dist, format)
        }
        Command::Marginals => {
            let loaded = load_common(job, "kirkwood")?;
            let rho = load_state(job, loaded.observables[0].dim())?;
            let dist = distribution(&loaded, &rho)?;
            render_marginals(&dist, &loaded.observables, &rho, format)
        }
        Command::Tomography => {
            let loaded = load_common(job, "kirkwood")?;
            let spec = product_spec(&loaded)?;
            let map = reconstruction_map(&loaded.observables, spec)?;
            let dist = match (&job.inputs.dist, &job.inputs.state) {
                (Some(path), _) => read_distribution_csv(path, loaded.observables.len())?,
                (None, Some(_)) => distribution(&loaded, &load_state(job, map.dim())?)?,
                (None, None) => {
                    return Err(CliError::validation("inputs.dist", "--dist or --state is required"))
                }
            };
            let rho = map.reconstruct(&dist)?;
            let residual = map.residual(&dist, &rho)?;
            render_density(&rho, residual, map.rank, format)
        }
        Command::Rank => {
            let loaded = load_common(job, "kirkwood")?;
            let map = reconstruction_map(&loaded.observables, product_spec(&loaded)?)?;
            let (rank, required, support) = (map.rank, map.required_rank(), map.support.len());
            let body = match format {
                Format::Csv => {
                    let mut t = Table::new(["rank", "required", "support_size", "dim", "full_rank"]);
                    t.push(vec![
                        rank.to_string(),
                        required.to_string(),
                        support.to_string(),
                        map.dim().to_string(),
                        map.is_full_rank().to_string(),
                    ]);
                    t.to_csv()?
                }
                Format::Json => output::to_json(&json!({
                    "rank": rank,
                    "required": required,
                    "support_size": support,
                    "dim": map.dim(),
                    "full_rank": map.is_full_rank(),
                    "singular_values": map.singular_values.iter().map(|&x| output::num(x)).collect::<Vec<_>>(),
                })),
            };
            Ok(Report::ok(body))
        }
        Command::Verify => {
            let loaded = load_common(job, "kirkwood")?;
            let rho = load_state(job, loaded.observables[0].dim())?;
            let spec = product_spec(&loaded)?;
            let dist = distribution(&loaded, &rho)?;
            let support_tol = job.tolerances.support.unwrap_or(DEFAULT_SUPPORT_TOL);
            let real_tol = job.tolerances.real.unwrap_or(REAL_TOL);
            let support = verify_support(&dist, &loaded.observables, support_tol)?;
            let real = is_real(&dist, real_tol);
            let scheme_real = scheme_is_real(spec, &loaded.observables, SCHEME_SAMPLES, 0)?;
            let diag = if loaded.observables[0].dim() == 2 {
                Some(diag_equality_check(spec, &loaded.observables, SCHEME_SAMPLES, 0)?)
            } else {
                None
            };
            let offending: Vec<String> = support
                .offending
                .iter()
                .map(|(p, _)| p.coords().iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(" "))
                .collect();
            let body = match format {
                Format::Csv => {
                    let mut t = Table::new(["check", "result", "detail"]);
                    t.push(vec!["support".into(), support.ok.to_string(), offending.join(";")]);
                    t.push(vec!["real".into(), real.to_string(), fmt_f64(dist.max_imag())]);
                    t.push(vec!["scheme_real".into(), scheme_real.to_string(), String::new()]);
                    if let Some(d) = diag {
                        t.push(vec!["diag_equality".into(), d.to_string(), String::new()]);
                    }
                    t.to_csv()?
                }
                Format::Json => output::to_json(&json!({
                    "support": {
                        "ok": support.ok,
                        "offending": support.offending.iter().map(|(p, w)| json!({
                            "x": p.coords().iter().map(|&x| output::num(x)).collect::<Vec<_>>(),
                            "weight": output::complex(*w),
                        })).collect::<Vec<_>>(),
                    },
                    "real": real,
                    "max_imag": output::num(dist.max_imag()),
                    "scheme_real": scheme_real,
                    "diag_equality": diag,
                })),
            };
            Ok(Report::ok(body))
        }
        Command::Charfunc => {
            let loaded = load_common(job, "kirkwood")?;
            let rho = load_state(job, loaded.observables[0].dim())?;
            let grid = job
                .grid
                .as_deref()
                .ok_or_else(|| CliError::validation("grid", "--grid is required"))?;
            let axes = parse_grid(grid).map_err(|e| CliError::validation("grid", e))?;
            if axes.len() != loaded.observables.len() {
                return Err(CliError::validation(
                    "grid",
                    format!("{} axes for {} observables", axes.len(), loaded.observables.len()),
                ));
            }
            let points = grid_points(&axes);
            let values = characteristic_function(&loaded.kernel, &loaded.observables, &rho, &points)?;
            let body = match format {
                Format::Csv => {
                    let n = axes.len();
                    let mut t = Table::new((1..=n).map(|i| format!("s{i}")).chain(["re".into(), "im".into()]));
                    for (p, v) in points.iter().zip(&values) {
                        let mut row: Vec<String> = p.iter().map(|&x| fmt_f64(x)).collect();
                        row.push(fmt_f64(v.re));
                        row.push(fmt_f64(v.im));
                        t.push(row);
                    }
                    t.note(format!("kernel={}", loaded.kernel.label()));
                    t.to_csv()?
                }
                Format::Json => output::to_json(&json!({
                    "kernel": loaded.kernel.label(),
                    "points": points.iter().zip(&values).map(|(p, v)| json!({
                        "s": p.iter().map(|&x| output::num(x)).collect::<Vec<_>>(),
                        "value": output::complex(*v),
                    })).collect::<Vec<_>>(),
                })),
            };
            Ok(Report::ok(body))
        }
        Command::Degeneracy => {
            let p = job
                .degeneracy
                .ok_or_else(|| CliError::validation("degeneracy", "--n, --na and --nb are required"))?;
            let r = degeneracy_feasible(p.n, p.n_a, p.n_b).map_err(|e| CliError::validation("degeneracy", e))?;
            let common = min_common_distinct(p.n);
            let one_sided = min_distinct_with_nondegenerate(p.n);
            let body = match format {
                Format::Csv => {
                    let mut t = Table::new(["n", "n_a", "n_b", "lhs", "rhs", "feasible"]);
                    t.push(vec![
                        r.n.to_string(),
                        r.n_a.to_string(),
                        r.n_b.to_string(),
                        r.lhs.to_string(),
                        r.rhs.to_string(),
                        r.feasible.to_string(),
                    ]);
                    t.note(format!("min_common_distinct={}", fmt_f64(common)));
                    t.note(format!("min_distinct_with_nondegenerate={}", fmt_f64(one_sided)));
                    t.to_csv()?
                }
                Format::Json => output::to_json(&json!({
                    "report": r,
                    "min_common_distinct": common,
                    "min_distinct_with_nondegenerate": one_sided,
                })),
            };
            Ok(Report::ok(body))
        }
        Command::ScanRealness => {
            let mut job = job.clone();
            if job.inputs.observables.is_empty() {
                job.inputs.observables = vec!["spin:1/2:1".into(), "spin:1/2:2".into()];
            }
            let loaded = load_common(&job, "kirkwood")?;
            if loaded.observables[0].dim() != 2 {
                return Err(CliError::validation("inputs.observables", "scan-realness needs two-level observables"));
            }
            let atoms = loaded.kernel.build_atoms(&loaded.observables, AtomOptions::default())?;
            let j3 = spin_operators(1)?.j3;
            let p = job.scan.unwrap_or_default();
            if p.theta_steps == 0 || p.phi_steps == 0 || p.m_steps == 0 {
                return Err(CliError::validation("scan", "step counts must be positive"));
            }
            let inclusive = |k: usize, steps: usize, hi: f64| {
                if steps == 1 {
                    0.0
                } else {
                    hi * k as f64 / (steps - 1) as f64
                }
            };
            let mut rows = Vec::new();
            for i in 0..p.theta_steps {
                let theta = inclusive(i, p.theta_steps, PI);
                for j in 0..p.phi_steps {
                    let phi = 2.0 * PI * j as f64 / p.phi_steps as f64;
                    for k in 0..p.m_steps {
                        let m = inclusive(k, p.m_steps, 1.0);
                        let rho = bloch_state(theta, phi, m)?;
                        let dist = evaluate_distribution(&atoms, &rho)?;
                        rows.push([theta, phi, m, dist.max_imag(), expectation(&j3, &rho)?]);
                    }
                }
            }
            let body = match format {
                Format::Csv => {
                    let mut t = Table::new(["theta", "phi", "m", "max_im", "z_expectation"]);
                    for r in &rows {
                        t.push(r.iter().map(|&x| fmt_f64(x)).collect());
                    }
                    t.to_csv()?
                }
                Format::Json => output::to_json(&json!({
                    "rows": rows.iter().map(|r| json!({
                        "theta": output::num(r[0]),
                        "phi": output::num(r[1]),
                        "m": output::num(r[2]),
                        "max_im": output::num(r[3]),
                        "z_expectation": output::num(r[4]),
                    })).collect::<Vec<_>>(),
                })),
            };
            Ok(Report::ok(body))
        }
    }
}

fn render_distribution(dist: &QuasiDistribution, format: Format) -> Result<Report, CliError> {
    let total = dist.total();
    let body = match format {
        Format::Csv => {
            let n = dist.n_vars();
            let mut t = Table::new(
                (1..=n)
                    .map(|i| format!("x{i}"))
                    .chain(["weight_re".into(), "weight_im".into()]),
            );
            for (p, w) in dist.iter() {
                let mut row: Vec<String> = p.coords().iter().map(|&x| fmt_f64(x)).collect();
                row.push(fmt_f64(w.re));
                row.push(fmt_f64(w.im));
                t.push(row);
            }
            t.note(format!("sum_re={},sum_im={}", fmt_f64(total.re), fmt_f64(total.im)));
            if dist.meta().approximate {
                t.note("approximate=true");
            }
            t.to_csv()?
        }
        Format::Json => output::to_json(&distribution_json(dist)),
    };
    Ok(Report::ok(body))
}

fn distribution_json(dist: &QuasiDistribution) -> serde_json::Value {
    let meta: &DistributionMeta = dist.meta();
    json!({
        "scheme": meta.scheme,
        "observables": meta.observables,
        "approximate": meta.approximate,
        "atoms": dist.iter().map(|(p, w)| json!({
            "x": p.coords().iter().map(|&x| output::num(x)).collect::<Vec<_>>(),
            "weight": output::complex(w),
        })).collect::<Vec<_>>(),
        "sum": output::complex(dist.total()),
    })
}

fn render_marginals(
    dist: &QuasiDistribution,
    observables: &[HermitianObservable],
    rho: &DensityState,
    format: Format,
) -> Result<Report, CliError> {
    let tol = AtomOptions::default().merge_tol;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for (v, obs) in observables.iter().enumerate() {
        let marg = dist.marginal(v)?;
        let born = born_distribution(obs, rho)?;
        let mut xs: Vec<SupportPoint> = marg.iter().map(|(p, _)| p.clone()).collect();
        for (p, _) in born.iter() {
            if !xs.iter().any(|q| q.distance(p) <= tol) {
                xs.push(p.clone());
            }
        }
        xs.sort();
        for x in xs {
            let w = marg.weight_at(x.coords(), tol);
            let b = born.weight_at(x.coords(), tol).re;
            worst = worst.max((w - c(b, 0.0)).norm());
            rows.push((v, x.coord(0), w, b));
        }
    }
    let body = match format {
        Format::Csv => {
            let mut t = Table::new(["var", "x", "weight_re", "weight_im", "born"]);
            for (v, x, w, b) in &rows {
                t.push(vec![(v + 1).to_string(), fmt_f64(*x), fmt_f64(w.re), fmt_f64(w.im), fmt_f64(*b)]);
            }
            t.note(format!("max_deviation={}", fmt_f64(worst)));
            t.to_csv()?
        }
        Format::Json => output::to_json(&json!({
            "rows": rows.iter().map(|(v, x, w, b)| json!({
                "var": v + 1,
                "x": output::num(*x),
                "weight": output::complex(*w),
                "born": output::num(*b),
            })).collect::<Vec<_>>(),
            "max_deviation": output::num(worst),
        })),
    };
    Ok(Report::ok(body))
}

fn render_density(rho: &DensityState, residual: f64, rank: usize, format: Format) -> Result<Report, CliError> {
    let m = rho.matrix();
    let body = match format {
        Format::Csv => {
            let mut t = Table::new(["row", "col", "re", "im"]);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    t.push(vec![(i + 1).to_string(), (j + 1).to_string(), fmt_f64(m[(i, j)].re), fmt_f64(m[(i, j)].im)]);
                }
            }
            t.note(format!("residual={}", fmt_f64(residual)));
            t.note(format!("rank={rank}"));
            t.to_csv()?
        }
        Format::Json => output::to_json(&json!({
            "density": (0..m.rows()).map(|i| (0..m.cols()).map(|j| output::complex(m[(i, j)])).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "residual": output::num(residual),
            "rank": rank,
        })),
    };
    Ok(Report::ok(body))
}

/// Reads an atom table written by `compute`.
pub fn read_distribution_csv(path: &str, n_vars: usize) -> Result<QuasiDistribution, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    let headers = reader.headers().map_err(|e| CliError::Parse(format!("{path}: {e}")))?.clone();
    if headers.len() != n_vars + 2 {
        return Err(CliError::validation(
            "dist",
            format!("{} columns, expected {}", headers.len(), n_vars + 2),
        ));
    }
    let mut atoms = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
        let vals = rec
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Parse(format!("{path} row {}: {e}", i + 1)))?;
        atoms.push((
            SupportPoint::new(vals[..n_vars].to_vec()),
            c(vals[n_vars], vals[n_vars + 1]),
        ));
    }
    QuasiDistribution::new(n_vars, atoms, DistributionMeta::default()).map_err(CliError::from)
}
