//! Atoms off the joint spectrum.

use quasiprob::analysis::{verify_support, REAL_TOL};
use quasiprob::qjpd::{build_atoms, evaluate_distribution, SchemeSpec};
use quasiprob::quantum::{bloch_state, spin_operators};

fn main() -> quasiprob::Result<()> {
    let s = spin_operators(1)?;
    let obs = [s.j1, s.j2];
    let half = std::f64::consts::FRAC_PI_2;
    let rho = bloch_state(half, half, 1.0)?;
    for spec in [SchemeSpec::kirkwood(2)?, SchemeSpec::s_alpha(0.5)?] {
        let d = evaluate_distribution(&build_atoms(&spec, &obs)?, &rho)?;
        let report = verify_support(&d, &obs, REAL_TOL)?;
        println!("{}: ok={}", spec.label(), report.ok);
        for (p, w) in &report.offending {
            println!("  ({:+.2}, {:+.2}) weight {:+.3}", p.coord(0), p.coord(1), w.re);
        }
    }
    Ok(())
}
