//! Recovering a spin-1 state from its Kirkwood–Dirac distribution.

use quasiprob::analysis::reconstruction_map;
use quasiprob::qjpd::{build_atoms, evaluate_distribution, SchemeSpec};
use quasiprob::quantum::spin_operators;
use quasiprob::random::{random_density, rng};

fn main() -> quasiprob::Result<()> {
    let s = spin_operators(2)?;
    let obs = [s.j1, s.j2];
    let spec = SchemeSpec::kirkwood(2)?;
    let map = reconstruction_map(&obs, &spec)?;
    println!("rank {} of {}, {} support points", map.rank, map.required_rank(), map.support.len());

    let atoms = build_atoms(&spec, &obs)?;
    let mut r = rng(7);
    for _ in 0..3 {
        let rho = random_density(&mut r, 3);
        let back = map.reconstruct(&evaluate_distribution(&atoms, &rho)?)?;
        println!("max error {:.2e}", back.matrix().max_abs_diff(rho.matrix()));
    }

    let half = spin_operators(1)?;
    let sym = reconstruction_map(&[half.j1, half.j2], &SchemeSpec::s_alpha(0.5)?)?;
    println!("symmetric ordering, spin 1/2: rank {} of {}", sym.rank, sym.required_rank());
    Ok(())
}
