//! The same state under several orderings of the exponentials.

use quasiprob::analysis::{is_real, verify_support, REAL_TOL};
use quasiprob::qjpd::{build_atoms, evaluate_distribution, SchemeSpec};
use quasiprob::quantum::{bloch_state, spin_operators};

fn main() -> quasiprob::Result<()> {
    let s = spin_operators(1)?;
    let obs = [s.j1, s.j2];
    let rho = bloch_state(1.0, 0.4, 0.9)?;
    let schemes = [
        SchemeSpec::kirkwood(2)?,
        SchemeSpec::s_alpha(0.5)?,
        SchemeSpec::margenau_hill(0.0)?,
        SchemeSpec::born_jordan(201)?,
    ];
    for spec in &schemes {
        let d = evaluate_distribution(&build_atoms(spec, &obs)?, &rho)?;
        let support = verify_support(&d, &obs, REAL_TOL)?;
        println!(
            "{:<22} atoms={:<4} real={:<5} on-spectrum={:<5} max|Im|={:.3e}",
            spec.label(),
            d.len(),
            is_real(&d, REAL_TOL),
            support.ok,
            d.max_imag()
        );
    }
    Ok(())
}
