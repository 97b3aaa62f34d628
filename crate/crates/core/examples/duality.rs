//! Averaging a function over the distribution versus quantizing it first.

use num_complex::Complex64;
use quasiprob::qjpd::{build_atoms, evaluate_distribution, quantize, SchemeSpec};
use quasiprob::quantum::spin_operators;
use quasiprob::random::{random_density, rng};

fn main() -> quasiprob::Result<()> {
    let s = spin_operators(2)?;
    let obs = [s.j1, s.j2];
    let rho = random_density(&mut rng(3), 3);
    let f = |x: &[f64]| Complex64::new(x[0] * x[1] + x[1].powi(2), 0.0);
    for spec in [SchemeSpec::kirkwood(2)?, SchemeSpec::margenau_hill(0.0)?] {
        let atoms = build_atoms(&spec, &obs)?;
        let classical = evaluate_distribution(&atoms, &rho)?.quasi_expectation(f);
        let quantum = rho.matrix().trace_product(&quantize(f, &atoms));
        println!("{:<16} sum={:.12} trace={:.12}", spec.label(), classical, quantum);
    }
    Ok(())
}
