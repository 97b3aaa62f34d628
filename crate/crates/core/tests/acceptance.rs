mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::process::Command;

use common::*;
use num_complex::Complex64;
use quasiprob::analysis::{
    degeneracy_feasible, diag_equality_check, is_real, min_distinct_with_nondegenerate,
    random_unitary_form, realness_implies_z_expectation, reconstruction_map, scheme_is_real,
    verify_support, REAL_TOL,
};
use quasiprob::matcore::ComplexMatrix;
use quasiprob::qjpd::{
    build_atoms, characteristic_function, evaluate_distribution, max_marginal_deviation, quantize,
    Kernel, SchemeSpec,
};
use quasiprob::quantum::{spin_operators, HermitianObservable};
use quasiprob::random::{random_density, random_hermitian, rng};
use quasiprob::Error;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn max_weight_error(d: &quasiprob::QuasiDistribution, expected: &[([f64; 2], Complex64)]) -> f64 {
    let listed = expected.iter().map(|(p, w)| (d.weight_at(p, 1e-9) - w).norm()).fold(0.0, f64::max);
    let extra = d
        .iter()
        .filter(|(p, _)| !expected.iter().any(|(q, _)| p.distance(&q.to_vec().into()) <= 1e-9))
        .map(|(_, w)| w.norm())
        .fold(0.0, f64::max);
    listed.max(extra)
}

fn golden_distributions() -> Outcome {
    let obs = spin_pair(1);
    let s_half = SchemeSpec::s_alpha(0.5).unwrap();
    let (p, m, q, h) = (c(0.25, 0.25), c(0.25, -0.25), c(0.25, 0.0), c(0.5, 0.0));
    let corners = |pp: Complex64, pm: Complex64| {
        vec![([0.5, 0.5], pp), ([-0.5, -0.5], pp), ([0.5, -0.5], pm), ([-0.5, 0.5], pm)]
    };
    let mut sy = corners(q, q);
    sy.push(([0.0, 0.5], h));
    sy.push(([0.0, -0.5], -h));
    let cases = [
        ("KD z+", kd(&obs, &z_plus()), corners(p, m)),
        ("KD z-", kd(&obs, &z_minus()), corners(m, p)),
        ("S z+", dist(&s_half, &obs, &z_plus()), corners(q, q)),
        ("S z-", dist(&s_half, &obs, &z_minus()), corners(q, q)),
        ("S y+", dist(&s_half, &obs, &y_plus()), sy),
        ("KD y+", kd(&obs, &y_plus()), vec![([0.5, 0.5], h), ([-0.5, 0.5], h)]),
    ];
    let mut worst = 0.0f64;
    for (name, d, expected) in cases {
        let e = max_weight_error(&d, &expected);
        check(e <= 1e-12, format!("{name}: error {e:e}"))?;
        worst = worst.max(e);
    }
    Ok(format!("max error {worst:.1e}"))
}

fn coefficient_formulas() -> Outcome {
    let mut r = rng(101);
    let (obs2, obs3) = (spin_pair(1), spin_pair(2));
    let (mut e2, mut e3, mut e00) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let rho = random_density(&mut r, 2);
        let m = rho.matrix();
        let d = kd(&obs2, &rho);
        for (p, w) in two_level_coefficients(m[(0, 0)].re, m[(1, 0)].re, m[(1, 0)].im) {
            e2 = e2.max((d.weight_at(&p, 1e-9) - w).norm());
        }
        let rho = random_density(&mut r, 3);
        let d = kd(&obs3, &rho);
        for (p, w) in three_level_coefficients(three_level_params(&rho)) {
            e3 = e3.max((d.weight_at(&p, 1e-9) - w).norm());
        }
        e00 = e00.max(d.weight_at(&[0.0, 0.0], 1e-9).norm());
    }
    check(e2 <= 1e-12, format!("N=2 error {e2:e}"))?;
    check(e3 <= 1e-11, format!("N=3 error {e3:e}"))?;
    check(e00 <= 1e-12, format!("K00 = {e00:e}"))?;
    Ok(format!("N=2 {e2:.1e}, N=3 {e3:.1e}, K00 {e00:.1e}"))
}

fn support_theorem() -> Outcome {
    let mut r = rng(102);
    let kd2 = SchemeSpec::kirkwood(2).unwrap();
    for n in 2..=6 {
        let obs = [random_hermitian(&mut r, n), random_hermitian(&mut r, n)];
        let atoms = build_atoms(&kd2, &obs).unwrap();
        for _ in 0..100 {
            let d = evaluate_distribution(&atoms, &random_density(&mut r, n)).unwrap();
            check(verify_support(&d, &obs, REAL_TOL).unwrap().ok, format!("off-spectrum atom at N={n}"))?;
        }
    }
    let obs = spin_pair(1);
    let d = dist(&SchemeSpec::s_alpha(0.5).unwrap(), &obs, &y_plus());
    let report = verify_support(&d, &obs, REAL_TOL).unwrap();
    let mut ys: Vec<f64> = report.offending.iter().map(|(p, _)| p.coord(1)).collect();
    ys.sort_by(f64::total_cmp);
    let at_zero = report.offending.iter().all(|(p, _)| p.coord(0).abs() <= 1e-12);
    check(!report.ok && at_zero && ys == [-0.5, 0.5], format!("S y+ offending {:?}", report.offending))?;
    Ok("500 KD instances on eigenvalue grid; S y+ flagged at (0, ±1/2)".into())
}

fn marginal_born() -> Outcome {
    let mut r = rng(103);
    let alphas = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut schemes = vec![SchemeSpec::kirkwood(2).unwrap()];
    schemes.extend(alphas.iter().map(|&a| SchemeSpec::s_alpha((a + 1.0) / 2.0).unwrap()));
    schemes.extend(alphas.iter().map(|&a| SchemeSpec::margenau_hill(a).unwrap()));
    schemes.push(SchemeSpec::born_jordan(201).unwrap());
    let mut worst = 0.0f64;
    for n in 2..=4 {
        let obs = [random_hermitian(&mut r, n), random_hermitian(&mut r, n)];
        for spec in &schemes {
            let atoms = build_atoms(spec, &obs).unwrap();
            for _ in 0..50 {
                let rho = random_density(&mut r, n);
                let d = evaluate_distribution(&atoms, &rho).unwrap();
                worst = worst.max(max_marginal_deviation(&d, &obs, &rho).unwrap());
            }
        }
    }
    check(worst <= 1e-9, format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn rotated(j_times_two: u32, phi: f64) -> [HermitianObservable; 2] {
    let s = spin_operators(j_times_two).unwrap();
    let a = HermitianObservable::linear_combination(&[(phi.cos(), &s.j3), (phi.sin(), &s.j1)], "A").unwrap();
    [a, s.j3]
}

fn tomography() -> Outcome {
    let kd2 = SchemeSpec::kirkwood(2).unwrap();
    let rank = |obs: &[HermitianObservable], spec: &SchemeSpec| reconstruction_map(obs, spec).unwrap().rank;
    check(rank(&spin_pair(2), &kd2) == 8, "KD spin 1 rank")?;
    check(rank(&spin_pair(1), &kd2) == 3, "KD spin 1/2 rank")?;
    check(rank(&spin_pair(1), &SchemeSpec::s_alpha(0.5).unwrap()) == 2, "S spin 1/2 rank")?;
    let re = |x: f64| c(x, 0.0);
    let z = re(0.0);
    let a = ComplexMatrix::from_rows(&[vec![z, re(1.0), z], vec![re(1.0), z, z], vec![z, z, z]]).unwrap();
    let b = ComplexMatrix::from_rows(&[vec![z, c(0.0, -1.0), z], vec![c(0.0, 1.0), z, z], vec![z, z, z]]).unwrap();
    let reducible = [HermitianObservable::new(a, "A").unwrap(), HermitianObservable::new(b, "B").unwrap()];
    let red = rank(&reducible, &kd2);
    check(red < 8, format!("reducible pair rank {red}"))?;
    for phi in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, 2.0] {
        let k = rank(&rotated(2, phi), &kd2);
        check(k == 8, format!("rank {k} at phi={phi}"))?;
    }
    let k_pi = rank(&rotated(2, PI), &kd2);
    check(k_pi < 8, format!("rank {k_pi} at phi=pi"))?;
    let mut r = rng(104);
    let mut worst = 0.0f64;
    for n in [2, 3] {
        let obs = spin_pair(n as u32 - 1);
        let map = reconstruction_map(&obs, &kd2).unwrap();
        for _ in 0..500 {
            let rho = random_density(&mut r, n);
            let back = map.reconstruct(&kd(&obs, &rho)).map_err(|e| e.to_string())?;
            worst = worst.max(back.matrix().max_abs_diff(rho.matrix()));
        }
    }
    check(worst <= 1e-9, format!("round-trip error {worst:e}"))?;
    Ok(format!("ranks 8/3/2/{red}, phi=pi rank {k_pi}, round trip {worst:.1e}"))
}

fn realness_biconditional() -> Outcome {
    let two = realness_implies_z_expectation(2, 1000, 105).map_err(|e| e.to_string())?;
    check(two.disagreements == 0, format!("N=2 disagreements {}", two.disagreements))?;
    let three = realness_implies_z_expectation(3, 1000, 106).map_err(|e| e.to_string())?;
    check(three.disagreements == 0, format!("N=3 violations {}", three.disagreements))?;
    let rho = three.counterexample.ok_or("no counterexample")?;
    let z = quasiprob::quantum::expectation(&spin_operators(2).unwrap().j3, &rho).unwrap();
    let complex = !is_real(&kd(&spin_pair(2), &rho), REAL_TOL);
    check(z.abs() <= 1e-10 && complex, "counterexample does not hold up")?;
    Ok(format!(
        "N=2 {} real of 1000; N=3 counterexample after {} attempt(s)",
        two.real_count, three.counterexample_attempts
    ))
}

fn unitary_form_equivalence() -> Outcome {
    let obs = spin_pair(1);
    let mut r = rng(107);
    let mut real = 0;
    for i in 0..200u64 {
        let spec = random_unitary_form(&mut r, 4, i % 2 == 0).unwrap();
        let diag = diag_equality_check(&spec, &obs, 16, i).map_err(|e| e.to_string())?;
        let herm = scheme_is_real(&spec, &obs, 16, i).map_err(|e| e.to_string())?;
        let deficient = reconstruction_map(&obs, &spec).unwrap().rank < 3;
        check(diag == herm && herm == deficient, format!("{}: {diag}/{herm}/{deficient}", spec.label()))?;
        real += herm as usize;
    }
    Ok(format!("200 schemes agree ({real} real)"))
}

fn degeneracy() -> Outcome {
    for n in 1..=6u64 {
        for na in 1..=n {
            for nb in 1..=n {
                let rep = degeneracy_feasible(n, na, nb).map_err(|e| e.to_string())?;
                let by_hand = 2 * n * n - 1 <= (2 * na - 1) * (2 * nb - 1);
                check(rep.feasible == by_hand, format!("({n},{na},{nb})"))?;
            }
        }
    }
    let (two, three) = (min_distinct_with_nondegenerate(2), min_distinct_with_nondegenerate(3));
    check((two - 5.0 / 3.0).abs() < 1e-15 && (three - 11.0 / 5.0).abs() < 1e-15, format!("{two}, {three}"))?;
    Ok("91 triples; thresholds 5/3 and 11/5".into())
}

fn duality() -> Outcome {
    let mut r = rng(108);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = 2 + i % 3;
        let spec = match i % 4 {
            0 => SchemeSpec::kirkwood(2).unwrap(),
            1 => SchemeSpec::s_alpha(r.random_range(0.0..=1.0)).unwrap(),
            2 => SchemeSpec::margenau_hill(r.random_range(-1.0..=1.0)).unwrap(),
            _ => SchemeSpec::born_jordan(7).unwrap(),
        };
        let obs = [random_hermitian(&mut r, n), random_hermitian(&mut r, n)];
        let rho = random_density(&mut r, n);
        let atoms = build_atoms(&spec, &obs).unwrap();
        let d = evaluate_distribution(&atoms, &rho).unwrap();
        let k: Vec<Complex64> = (0..10).map(|_| c(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect();
        let f = |x: &[f64]| {
            let (u, v) = (x[0], x[1]);
            [1.0, u, v, u * u, u * v, v * v, u * u * u, u * u * v, u * v * v, v * v * v]
                .iter()
                .zip(&k)
                .map(|(m, k)| k * m)
                .sum::<Complex64>()
        };
        let e = (d.quasi_expectation(f) - rho.matrix().trace_product(&quantize(f, &atoms))).norm();
        worst = worst.max(e);
    }
    check(worst <= 1e-10, format!("max gap {worst:e}"))?;
    Ok(format!("max gap {worst:.1e}"))
}

fn wigner() -> Outcome {
    let obs = spin_pair(1);
    let axis: Vec<f64> = (0..21).map(|i| -10.0 + i as f64).collect();
    let pts: Vec<Vec<f64>> = axis.iter().flat_map(|&s| axis.iter().map(move |&t| vec![s, t])).collect();
    let mut worst = 0.0f64;
    for rho in [z_plus(), z_minus()] {
        let chi = characteristic_function(&Kernel::Wigner(2), &obs, &rho, &pts).unwrap();
        for (p, v) in pts.iter().zip(chi) {
            let r = ((p[0] / 2.0).powi(2) + (p[1] / 2.0).powi(2)).sqrt();
            worst = worst.max((v - r.cos()).norm());
        }
    }
    check(worst <= 1e-10, format!("max error {worst:e}"))?;
    let no_atoms = matches!(Kernel::Wigner(2).build_atoms(&obs, Default::default()), Err(Error::NoAtomicForm(_)));
    check(no_atoms, "Wigner kernel produced atoms")?;
    Ok(format!("max error {worst:.1e}; density not reproduced (no atomic form)"))
}

fn born_jordan() -> Outcome {
    let obs = spin_pair(1);
    let axis: Vec<f64> = (0..11).map(|i| -6.0 + 1.2 * i as f64).collect();
    let error = |nodes: usize| {
        let spec = SchemeSpec::born_jordan(nodes).unwrap();
        let mut worst = 0.0f64;
        for &s in &axis {
            for &t in &axis {
                let sinc = if s == 0.0 { 1.0 } else { (s / 2.0).sin() / (s / 2.0) };
                let d = c((s / 2.0).cos() * (t / 2.0).cos(), 0.0);
                let im = -(s / 2.0).sin() * (t / 2.0).cos();
                let st = sinc * (t / 2.0).sin();
                let exact = ComplexMatrix::from_rows(&[vec![d, c(-st, im)], vec![c(st, im), d]]).unwrap();
                worst = worst.max(spec.hashed_operator(&obs, &[s, t]).unwrap().max_abs_diff(&exact));
            }
        }
        worst
    };
    let (e201, e2001) = (error(201), error(2001));
    check(e201 <= 1e-6, format!("201 nodes: {e201:e}"))?;
    check(e2001 <= 1e-9, format!("2001 nodes: {e2001:e}"))?;
    Ok(format!("201 nodes {e201:.1e}, 2001 nodes {e2001:.1e}"))
}

fn cli_determinism() -> Outcome {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_quasiprob")).args(args).current_dir(dir).output().map_err(|e| e.to_string())
    };
    let half = ["--obs", "j1.json", "--obs", "j2.json"];
    let jobs: Vec<Vec<&str>> = vec![
        [&["compute", "--scheme", "kirkwood", "--state", "z_plus.json"][..], &half].concat(),
        [&["marginals", "--scheme", "born_jordan:31", "--state", "y_plus.json"][..], &half].concat(),
        [&["tomography", "--scheme", "kirkwood", "--state", "y_plus.json"][..], &half].concat(),
        vec!["rank", "--obs", "spin:1:1", "--obs", "spin:1:2"],
        [&["verify", "--scheme", "s_alpha:0.5", "--state", "y_plus.json"][..], &half].concat(),
        [&["charfunc", "--scheme", "wigner", "--state", "z_plus.json", "--grid", "-2:2:5,-2:2:5"][..], &half].concat(),
        vec!["degeneracy", "--n", "3", "--na", "3", "--nb", "2"],
        [&["scan-realness"][..], &half].concat(),
    ];
    for args in &jobs {
        let (a, b) = (run(args)?, run(args)?);
        check(a.status.code() == Some(0), format!("{} exited {:?}", args[0], a.status.code()))?;
        check(a.stdout == b.stdout, format!("{} output differs", args[0]))?;
    }
    let deficient = run(&[&["tomography", "--scheme", "s_alpha:0.5", "--state", "z_plus.json"][..], &half].concat())?;
    check(deficient.status.code() == Some(1), "rank-deficient tomography exit code")?;
    let malformed = run(&["compute", "--obs", "malformed.json", "--obs", "j2.json", "--state", "z_plus.json"])?;
    check(malformed.status.code() == Some(2), "malformed input exit code")?;
    Ok(format!("{} subcommands stable; exit codes 1 and 2 observed", jobs.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("golden distributions", golden_distributions),
        ("coefficient formulas", coefficient_formulas),
        ("support theorem", support_theorem),
        ("marginal/Born consistency", marginal_born),
        ("tomography", tomography),
        ("realness biconditional", realness_biconditional),
        ("unitary-form equivalence", unitary_form_equivalence),
        ("degeneracy arithmetic", degeneracy),
        ("duality", duality),
        ("Wigner characteristic function", wigner),
        ("Born-Jordan quadrature", born_jordan),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
