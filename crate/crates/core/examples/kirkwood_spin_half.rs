//! Kirkwood–Dirac distribution of (J1, J2) for spin 1/2 on a few states.

use quasiprob::qjpd::{build_atoms, evaluate_distribution, SchemeSpec};
use quasiprob::quantum::{bloch_state, spin_operators};

fn main() -> quasiprob::Result<()> {
    let s = spin_operators(1)?;
    let atoms = build_atoms(&SchemeSpec::kirkwood(2)?, &[s.j1, s.j2])?;
    let half = std::f64::consts::FRAC_PI_2;
    for (name, theta, phi) in [("z+", 0.0, 0.0), ("z-", std::f64::consts::PI, 0.0), ("y+", half, half)] {
        let d = evaluate_distribution(&atoms, &bloch_state(theta, phi, 1.0)?)?;
        println!("|{name}>");
        for (p, w) in d.iter() {
            println!("  ({:+.1}, {:+.1})  {:+.4} {:+.4}i", p.coord(0), p.coord(1), w.re, w.im);
        }
    }
    Ok(())
}
