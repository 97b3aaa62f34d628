//! Building a job in code, printing its canonical JSON, and running it.

use quasiprob::cli::{run, Command, JobConfig, SchemeInput};

fn main() {
    let mut job = JobConfig::new(Command::Marginals);
    job.inputs.observables = vec!["spin:1:1".into(), "spin:1:3".into()];
    job.inputs.state = Some(r#"{"density": [[[0.5,0],[0,0],[0.5,0]],[[0,0],[0,0],[0,0]],[[0.5,0],[0,0],[0.5,0]]]}"#.into());
    job.scheme = Some(SchemeInput::named("kirkwood"));
    println!("{}", job.to_canonical_json());
    match run(&job) {
        Ok(report) => print!("{}", report.body),
        Err(e) => eprintln!("error: {e} (exit {})", e.exit_code()),
    }
}
