use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zetaflow::families::{
    beta_circle_5odd, build_psi5_odd, build_psi_even5, build_psi_prime, symmetry_matrix, CombinationSpec,
};
use zetaflow::finder::{
    compare_counts_hurwitz, count_formula, find_zeros, winding_number, zeros_from_csv, zeros_to_csv,
    ClosureFunction, HurwitzFunction, Rectangle, SpecFunction, ZeroRecord, SCAN_TOL,
};
use zetaflow::Complex64;

fn rect(a: f64, b: f64, c: f64, d: f64) -> Rectangle {
    Rectangle::new(a, b, c, d).unwrap()
}

fn locations(zeros: &[ZeroRecord]) -> Vec<Complex64> {
    zeros.iter().map(|z| z.location).collect()
}

#[test]
fn riemann_zeta_has_three_zeros_below_thirty() {
    let f = HurwitzFunction::new(1.0, SCAN_TOL);
    let scan = find_zeros(&f, &rect(-1.0, 2.0, 0.0, 30.0)).unwrap();
    assert!(scan.is_complete());
    assert!(scan.regularized);
    let z = locations(&scan.zeros);
    assert_eq!(z.len(), 3);
    for (got, t) in z.iter().zip([14.134_725_141_734_693, 21.022_039_638_771_555, 25.010_857_580_145_688]) {
        assert!((got.re - 0.5).abs() < 1e-9 && (got.im - t).abs() < 1e-9);
    }
}

#[test]
fn hurwitz_zeros_reflect_under_conjugation() {
    let f = HurwitzFunction::new(0.3, SCAN_TOL);
    let up = find_zeros(&f, &rect(-2.0, 3.0, 0.5, 25.0)).unwrap();
    let down = find_zeros(&f, &rect(-2.0, 3.0, -25.0, -0.5)).unwrap();
    assert!(up.is_complete() && down.is_complete());
    assert_eq!(up.zeros.len(), down.zeros.len());
    assert!(!up.zeros.is_empty());
    for z in &up.zeros {
        assert!(down
            .zeros
            .iter()
            .any(|w| (w.location - z.location.conj()).norm() < 1e-8));
    }
}

#[test]
fn polynomial_roots_and_multiplicities() {
    let roots = [(Complex64::new(0.3, 0.2), 1u32), (Complex64::new(-0.4, 0.7), 2), (Complex64::new(0.9, -0.6), 3)];
    let f = ClosureFunction::new("poly", move |s: Complex64| {
        let mut v = Complex64::new(1.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for (r, m) in roots {
            for _ in 0..m {
                d = d * (s - r) + v;
                v *= s - r;
            }
        }
        (v, d)
    });
    let scan = find_zeros(&f, &rect(-1.0, 1.5, -1.0, 1.0)).unwrap();
    assert_eq!(scan.winding, 6);
    assert_eq!(scan.total_multiplicity(), 6);
    for (r, m) in roots {
        let hit = scan.zeros.iter().find(|z| (z.location - r).norm() < 1e-5).expect("root found");
        assert_eq!(hit.multiplicity, m);
    }
}

#[test]
fn zero_csv_round_trip() {
    let f = HurwitzFunction::new(1.0, SCAN_TOL);
    let scan = find_zeros(&f, &rect(-1.0, 2.0, 10.0, 40.0)).unwrap();
    let text = zeros_to_csv(&scan.zeros);
    assert!(text.starts_with("sigma,t,multiplicity,residual\n"));
    let back = zeros_from_csv(&text).unwrap();
    assert_eq!(back.len(), scan.zeros.len());
    for (a, b) in back.iter().zip(&scan.zeros) {
        assert!((a.location - b.location).norm() < 1e-12);
        assert_eq!(a.multiplicity, b.multiplicity);
    }
}

#[test]
fn riemann_count_up_to_fifty() {
    let cmp = compare_counts_hurwitz(1.0, 50.0, SCAN_TOL).unwrap();
    assert_eq!(cmp.actual, 10);
    assert!((cmp.predicted - count_formula(50.0, 1.0)).abs() < 1e-12);
    assert!(cmp.deviation.abs() <= 3.0);
}

#[test]
fn odd_l_function_zeros_are_on_the_line() {
    let f = SpecFunction::new(build_psi5_odd(Complex64::i()).unwrap(), SCAN_TOL);
    let scan = find_zeros(&f, &rect(-1.0, 2.0, 0.01, 30.0)).unwrap();
    assert!(scan.is_complete());
    assert!(scan.zeros.len() >= 5);
    for z in &scan.zeros {
        assert!((z.location.re - 0.5).abs() < 1e-8, "{}", z.location);
    }
}

fn assert_mirror_paired(spec: CombinationSpec) {
    let f = SpecFunction::new(spec, SCAN_TOL);
    let scan = find_zeros(&f, &rect(-1.5, 2.5, 5.0, 30.0)).unwrap();
    assert!(scan.is_complete());
    let z = locations(&scan.zeros);
    for a in &z {
        let mirror = Complex64::new(1.0 - a.re, a.im);
        assert!(z.iter().any(|b| (b - mirror).norm() < 1e-6), "{a} has no mirror");
    }
}

#[test]
fn symmetric_families_have_mirror_paired_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    assert_mirror_paired(build_psi5_odd(beta_circle_5odd(rng.gen_range(0.0..2.0 * PI))).unwrap());
    assert_mirror_paired(build_psi_even5(3.0, rng.gen_range(0.0..2.0 * PI)).unwrap());
    let m = symmetry_matrix(7).unwrap();
    let x = m.null_vector(&[1.0]).unwrap();
    assert_mirror_paired(build_psi_prime(7, 0.8, rng.gen_range(0.0..2.0 * PI), &x).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn winding_is_additive(
        s0 in -1.5..0.5f64, w in 0.5..3.0f64, t0 in 1.0..35.0f64, h in 1.0..15.0f64,
        cut in 0.2..0.8f64, vertical: bool, use_odd: bool,
    ) {
        let r = rect(s0, s0 + w, t0, t0 + h);
        let (a, b) = if vertical {
            (rect(s0, s0 + cut * w, t0, t0 + h), rect(s0 + cut * w, s0 + w, t0, t0 + h))
        } else {
            (rect(s0, s0 + w, t0, t0 + cut * h), rect(s0, s0 + w, t0 + cut * h, t0 + h))
        };
        let (total, parts) = if use_odd {
            let f = SpecFunction::new(build_psi5_odd(Complex64::i()).unwrap(), SCAN_TOL);
            (winding_number(&f, &r).unwrap(), winding_number(&f, &a).unwrap() + winding_number(&f, &b).unwrap())
        } else {
            let f = HurwitzFunction::new(0.7, SCAN_TOL);
            (winding_number(&f, &r).unwrap(), winding_number(&f, &a).unwrap() + winding_number(&f, &b).unwrap())
        };
        prop_assert_eq!(total, parts);
        prop_assert!(total >= 0);
    }
}
