//! Wigner characteristic function for spin 1/2 and a windowed inversion.

use quasiprob::qjpd::{characteristic_function, windowed_density, GridAxis, Kernel};
use quasiprob::quantum::{spin_operators, DensityState};

fn main() -> quasiprob::Result<()> {
    let s = spin_operators(1)?;
    let obs = [s.j1, s.j2];
    let rho = DensityState::basis(2, 0)?;
    let kernel = Kernel::Wigner(2);

    let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![2.0 * i as f64, 1.0]).collect();
    for (p, v) in pts.iter().zip(characteristic_function(&kernel, &obs, &rho, &pts)?) {
        let r = ((p[0] / 2.0).powi(2) + (p[1] / 2.0).powi(2)).sqrt();
        println!("s={:>4.1} t={:>4.1}  {:+.6}  cos r = {:+.6}", p[0], p[1], v.re, r.cos());
    }

    let s_axes = [GridAxis::new(-20.0, 20.0, 81)?, GridAxis::new(-20.0, 20.0, 81)?];
    let x_axes = [GridAxis::new(-1.0, 1.0, 5)?, GridAxis::new(0.0, 0.0, 1)?];
    let w = windowed_density(&kernel, &obs, &rho, &s_axes, &x_axes)?;
    println!("windowed estimate (approximate={}, possibly_divergent={})", w.approximate, w.possibly_divergent);
    for (x, v) in w.points.iter().zip(&w.values) {
        println!("  x={:+.1} y={:+.1}  {:+.4}", x[0], x[1], v.re);
    }
    Ok(())
}
