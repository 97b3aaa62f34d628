use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use super::{
    parse_scheme, run, CliError, Command, DegeneracyParams, Format, Inputs, JobConfig, OutputSpec,
    ScanParams, Tolerances,
};

#[derive(Debug, Parser)]
#[command(name = "quasiprob", version, about = "Quasi-joint-probability distributions of non-commuting observables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scheme name (`kirkwood`, `s_alpha:0.5`, `margenau_hill:0`,
    /// `born_jordan:201`, `wigner`), inline JSON, or a JSON file.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Observable: `spin:j:k`, inline JSON, or a JSON file. Repeat per slot.
    #[arg(long = "obs")]
    pub obs: Vec<String>,
    /// State as inline JSON or a JSON file.
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long)]
    pub tol_support: Option<f64>,
    #[arg(long)]
    pub tol_real: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Atom table of the distribution.
    Compute(Common),
    /// One-variable marginals against the Born rule.
    Marginals(Common),
    /// Linear-inversion reconstruction of the state.
    Tomography {
        #[command(flatten)]
        common: Common,
        /// Atom table CSV as written by `compute`.
        #[arg(long)]
        dist: Option<String>,
    },
    /// Rank of the reconstruction map.
    Rank(Common),
    /// Support, realness and scheme-realness verdicts.
    Verify(Common),
    /// Characteristic function Tr[rho h(s)] on a grid.
    Charfunc {
        #[command(flatten)]
        common: Common,
        /// `smin:smax:steps,tmin:tmax:steps`.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Counting bound 2N^2-1 <= (2N_A-1)(2N_B-1).
    Degeneracy {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        na: u64,
        #[arg(long)]
        nb: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep Bloch states and tabulate max |Im P| against <J3>.
    ScanRealness {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        theta_steps: usize,
        #[arg(long, default_value_t = 4)]
        phi_steps: usize,
        #[arg(long, default_value_t = 3)]
        m_steps: usize,
    },
    /// Run a job described by a JSON file.
    Job {
        path: String,
        /// Print the canonical job JSON instead of running it.
        #[arg(long)]
        print: bool,
    },
}

fn from_common(command: Command, c: Common) -> Result<JobConfig, CliError> {
    Ok(JobConfig {
        command,
        inputs: Inputs {
            observables: c.obs,
            state: c.state,
            dist: None,
        },
        scheme: c.scheme.as_deref().map(parse_scheme).transpose()?,
        output: OutputSpec {
            path: c.output.out,
            format: c.output.format,
        },
        tolerances: Tolerances {
            support: c.tol_support,
            real: c.tol_real,
        },
        grid: None,
        degeneracy: None,
        scan: None,
    })
}

impl Sub {
    /// The job this invocation describes.
    pub fn into_job(self) -> Result<JobConfig, CliError> {
        Ok(match self {
            Sub::Compute(c) => from_common(Command::Compute, c)?,
            Sub::Marginals(c) => from_common(Command::Marginals, c)?,
            Sub::Rank(c) => from_common(Command::Rank, c)?,
            Sub::Verify(c) => from_common(Command::Verify, c)?,
            Sub::Tomography { common, dist } => {
                let mut job = from_common(Command::Tomography, common)?;
                job.inputs.dist = dist;
                job
            }
            Sub::Charfunc { common, grid } => {
                let mut job = from_common(Command::Charfunc, common)?;
                job.grid = Some(grid);
                job
            }
            Sub::Degeneracy { n, na, nb, output } => {
                let mut job = JobConfig::new(Command::Degeneracy);
                job.degeneracy = Some(DegeneracyParams { n, n_a: na, n_b: nb });
                job.output = OutputSpec {
                    path: output.out,
                    format: output.format,
                };
                job
            }
            Sub::ScanRealness {
                common,
                theta_steps,
                phi_steps,
                m_steps,
            } => {
                let mut job = from_common(Command::ScanRealness, common)?;
                job.scan = Some(ScanParams {
                    theta_steps,
                    phi_steps,
                    m_steps,
                });
                job
            }
            Sub::Job { path, .. } => {
                let text = std::fs::read_to_string(&path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
                JobConfig::from_json(&text)?
            }
        })
    }
}

fn execute(job: &JobConfig) -> Result<i32, CliError> {
    let report = run(job)?;
    match &job.output.path {
        Some(path) => std::fs::write(path, &report.body).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(report.exit_code)
}

/// Parses `args` (including the program name), runs the job, and returns
/// the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let print_only = matches!(cli.command, Sub::Job { print: true, .. });
    let result = cli.command.into_job().and_then(|job| {
        if print_only {
            println!("{}", job.to_canonical_json());
            Ok(0)
        } else {
            execute(&job)
        }
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("quasiprob: {e}");
            e.exit_code()
        }
    }
}
