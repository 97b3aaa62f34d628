//! Realness of the Kirkwood–Dirac distribution of (J1, J2) against <J3>.

use quasiprob::analysis::realness_implies_z_expectation;
use quasiprob::quantum::parametrize;

fn main() -> quasiprob::Result<()> {
    for n in [2, 3] {
        let report = realness_implies_z_expectation(n, 1000, 42)?;
        println!(
            "N={n}: {} samples, {} real, {} disagreements",
            report.samples, report.real_count, report.disagreements
        );
        if let Some(rho) = &report.counterexample {
            println!(
                "  <J3> = 0 but complex after {} tries; params {:.4?}",
                report.counterexample_attempts,
                parametrize(rho).values
            );
        }
    }
    Ok(())
}
