mod common;

use std::f64::consts::PI;

use common::*;
use quasiprob::analysis::{
    degeneracy_feasible, diag_equality_check, is_real, min_common_distinct,
    min_distinct_with_nondegenerate, random_unitary_form, realness_implies_z_expectation,
    reconstruction_map, scheme_is_real, verify_support, REAL_TOL,
};
use quasiprob::matcore::ComplexMatrix;
use quasiprob::qjpd::SchemeSpec;
use quasiprob::quantum::{bloch_state, expectation, spin_operators, HermitianObservable};
use quasiprob::random::{random_density, random_hermitian, random_unitary, rng};
use quasiprob::Error;
use rand::Rng;

#[test]
fn coefficients_are_affine_in_the_state() {
    let mut r = rng(21);
    for n in [2, 3] {
        let obs = spin_pair(n as u32 - 1);
        let map = reconstruction_map(&obs, &SchemeSpec::kirkwood(2).unwrap()).unwrap();
        for _ in 0..50 {
            let (p, q) = (random_density(&mut r, n), random_density(&mut r, n));
            let lambda: f64 = r.random_range(0.0..=1.0);
            let mixed = map.coefficients_of(&p.mix(&q, lambda).unwrap());
            let (cp, cq) = (map.coefficients_of(&p), map.coefficients_of(&q));
            for i in 0..mixed.len() {
                assert!((mixed[i] - lambda * cp[i] - (1.0 - lambda) * cq[i]).abs() <= 1e-11);
            }
        }
    }
}

#[test]
fn tomography_round_trip() {
    let mut r = rng(22);
    for n in [2, 3] {
        let obs = spin_pair(n as u32 - 1);
        let map = reconstruction_map(&obs, &SchemeSpec::kirkwood(2).unwrap()).unwrap();
        assert!(map.is_full_rank());
        for _ in 0..500 {
            let rho = random_density(&mut r, n);
            let back = map.reconstruct(&kd(&obs, &rho)).unwrap();
            assert!(back.matrix().max_abs_diff(rho.matrix()) <= 1e-9);
        }
    }
}

#[test]
fn rank_deficient_reconstruction_fails() {
    let obs = spin_pair(1);
    let spec = SchemeSpec::s_alpha(0.5).unwrap();
    let map = reconstruction_map(&obs, &spec).unwrap();
    let err = map.reconstruct(&dist(&spec, &obs, &z_plus())).unwrap_err();
    assert!(matches!(err, Error::RankDeficient { rank: 2, required: 3 }));
}

#[test]
fn off_support_distribution_is_rejected() {
    let obs = spin_pair(1);
    let map = reconstruction_map(&obs, &SchemeSpec::kirkwood(2).unwrap()).unwrap();
    let foreign = dist(&SchemeSpec::s_alpha(0.5).unwrap(), &obs, &y_plus());
    assert!(matches!(map.reconstruct(&foreign), Err(Error::SupportMismatch { .. })));
}

#[test]
fn kirkwood_support_on_random_pairs() {
    let mut r = rng(23);
    let spec = SchemeSpec::kirkwood(2).unwrap();
    for n in 2..=6 {
        let obs = [random_hermitian(&mut r, n), random_hermitian(&mut r, n)];
        for _ in 0..100 {
            let d = dist(&spec, &obs, &random_density(&mut r, n));
            assert!(verify_support(&d, &obs, REAL_TOL).unwrap().ok);
        }
    }
}

#[test]
fn realness_examples() {
    let obs = spin_pair(1);
    assert!(!is_real(&kd(&obs, &z_plus()), REAL_TOL));
    assert!(is_real(&kd(&obs, &y_plus()), REAL_TOL));
    let mut r = rng(24);
    for _ in 0..50 {
        let rho = bloch_state(PI / 2.0, r.random_range(0.0..2.0 * PI), r.random_range(0.0..=1.0)).unwrap();
        assert!(is_real(&kd(&obs, &rho), REAL_TOL));
    }
    let j3 = spin_operators(1).unwrap().j3;
    assert!((expectation(&j3, &z_plus()).unwrap() - 0.5).abs() <= 1e-12);
}

#[test]
fn realness_and_z_expectation() {
    let two = realness_implies_z_expectation(2, 1000, 25).unwrap();
    assert_eq!(two.disagreements, 0);
    assert!(two.real_count > 0 && two.real_count < 1000);
    let three = realness_implies_z_expectation(3, 1000, 26).unwrap();
    assert_eq!(three.disagreements, 0);
    assert!(three.real_count > 0);
    let rho = three.counterexample.expect("counterexample");
    let j3 = spin_operators(2).unwrap().j3;
    assert!(expectation(&j3, &rho).unwrap().abs() <= 1e-10);
    assert!(!is_real(&kd(&spin_pair(2), &rho), REAL_TOL));
}

#[test]
fn scheme_realness_examples() {
    let obs = spin_pair(1);
    let mh = SchemeSpec::margenau_hill(0.0).unwrap();
    let kd2 = SchemeSpec::kirkwood(2).unwrap();
    assert!(scheme_is_real(&mh, &obs, 32, 1).unwrap());
    assert!(!scheme_is_real(&kd2, &obs, 32, 1).unwrap());
    let j3 = spin_operators(1).unwrap().j3;
    let commuting = [j3.clone(), j3.scaled(2.0).unwrap()];
    assert!(scheme_is_real(&kd2, &commuting, 32, 1).unwrap());

    let s_half = SchemeSpec::s_alpha(0.5).unwrap();
    assert!(diag_equality_check(&s_half, &obs, 32, 1).unwrap());
    assert!(!diag_equality_check(&kd2, &obs, 32, 1).unwrap());
    assert!(diag_equality_check(&mh, &obs, 32, 1).unwrap());
}

#[test]
fn unitary_form_predicates_agree() {
    let obs = spin_pair(1);
    let mut r = rng(27);
    let mut real = 0;
    for i in 0..200 {
        let spec = random_unitary_form(&mut r, 4, i % 2 == 0).unwrap();
        let diag = diag_equality_check(&spec, &obs, 16, i).unwrap();
        let herm = scheme_is_real(&spec, &obs, 16, i).unwrap();
        let deficient = reconstruction_map(&obs, &spec).unwrap().rank < 3;
        assert_eq!(diag, herm, "sample {i}: {}", spec.label());
        assert_eq!(herm, deficient, "sample {i}: {}", spec.label());
        real += herm as usize;
    }
    assert!(real > 0 && real < 200);
}

#[test]
fn degeneracy_arithmetic() {
    for n in 1..=6u64 {
        for na in 1..=n {
            for nb in 1..=n {
                let rep = degeneracy_feasible(n, na, nb).unwrap();
                assert_eq!(rep.lhs, 2 * n * n - 1);
                assert_eq!(rep.rhs, (2 * na - 1) * (2 * nb - 1));
                assert_eq!(rep.feasible, rep.lhs <= rep.rhs);
            }
        }
    }
    assert!(degeneracy_feasible(2, 2, 2).unwrap().feasible);
    assert!(!degeneracy_feasible(3, 3, 2).unwrap().feasible);
    assert!(degeneracy_feasible(3, 3, 3).unwrap().feasible);
    assert!(degeneracy_feasible(3, 4, 1).is_err());
    assert!((min_distinct_with_nondegenerate(2) - 5.0 / 3.0).abs() < 1e-15);
    assert!((min_distinct_with_nondegenerate(3) - 11.0 / 5.0).abs() < 1e-15);
    assert!((min_common_distinct(2) - (7f64.sqrt() + 1.0) / 2.0).abs() < 1e-15);
}

fn with_spectrum(r: &mut quasiprob::random::SeededRng, values: &[f64]) -> HermitianObservable {
    let diag: Vec<_> = values.iter().map(|&v| c(v, 0.0)).collect();
    let d = HermitianObservable::new(ComplexMatrix::from_diagonal(&diag), "D").unwrap();
    d.conjugated(&random_unitary(r, values.len()).unwrap()).unwrap()
}

#[test]
fn full_rank_implies_counting_bound() {
    let mut r = rng(28);
    let kd2 = SchemeSpec::kirkwood(2).unwrap();
    let mut full = 0;
    let mut infeasible = 0;
    for n in 2..=4usize {
        for na in 1..=n {
            for nb in 1..=n {
                let spectrum = |k: usize| -> Vec<f64> { (0..n).map(|i| (i.min(k - 1)) as f64).collect() };
                let obs = [with_spectrum(&mut r, &spectrum(na)), with_spectrum(&mut r, &spectrum(nb))];
                let map = reconstruction_map(&obs, &kd2).unwrap();
                let rep = degeneracy_feasible(n as u64, na as u64, nb as u64).unwrap();
                if map.is_full_rank() {
                    full += 1;
                    assert!(rep.feasible, "N={n} N_A={na} N_B={nb}");
                }
                infeasible += !rep.feasible as usize;
            }
        }
    }
    assert!(full > 0 && infeasible > 0);
}
