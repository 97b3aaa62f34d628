//! Born–Jordan quadrature against its closed-form hashed operator.

use quasiprob::qjpd::{build_atoms, SchemeSpec};
use quasiprob::quantum::spin_operators;

fn main() -> quasiprob::Result<()> {
    let s = spin_operators(1)?;
    let obs = [s.j1, s.j2];
    let (sv, tv) = (2.5, -1.5);
    let sinc = (sv / 2.0_f64).sin() / (sv / 2.0);
    let exact = sinc * (tv / 2.0_f64).sin();
    for nodes in [1, 3, 11, 51, 201] {
        let spec = SchemeSpec::born_jordan(nodes)?;
        let h = spec.hashed_operator(&obs, &[sv, tv])?;
        let atoms = build_atoms(&spec, &obs)?;
        println!(
            "nodes={nodes:<4} atoms={:<4} |Re h21 - exact|={:.2e}",
            atoms.len(),
            (h[(1, 0)].re - exact).abs()
        );
    }
    Ok(())
}
