// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use bellherald::qcore::{self, CMat, CMat2, CMat4, C64, ONE};
use common::{random_density, random_hermitian, random_matrix, rng};
use proptest::prelude::*;

/// Characteristic polynomial coefficients `c[0..=N]` of `det(lambda I - A)`
/// by the Faddeev-LeVerrier recursion.
fn char_poly<const N: usize>(a: &CMat<N>) -> Vec<C64> {
    let mut c = vec![C64::new(0.0, 0.0); N + 1];
    c[N] = ONE;
    let mut m = CMat::<N>::zeros();
    for k in 1..=N {
        m = *a * m + CMat::<N>::identity().scale(c[N - k + 1]);
        c[N - k] = -(*a * m).trace() / k as f64;
    }
    c
}

fn eval_poly(c: &[C64], z: C64) -> C64 {
    c.iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, ck| acc * z + ck)
}

fn power_trace<const N: usize>(a: &CMat<N>, k: usize) -> C64 {
    let mut p = CMat::<N>::identity();
    for _ in 0..k {
        p = p * *a;
    }
    p.trace()
}

/// Real roots of a real polynomial on `[-r, r]` by sign changes and bisection.
fn real_roots_by_bisection(c: &[f64], r: f64, grid: usize) -> Vec<f64> {
    let p = |x: f64| c.iter().rev().fold(0.0, |acc, ck| acc * x + ck);
    let mut roots = Vec::new();
    let h = 2.0 * r / grid as f64;
    for i in 0..grid {
        let (mut lo, mut hi) = (-r + i as f64 * h, -r + (i + 1) as f64 * h);
        let (plo, phi) = (p(lo), p(hi));
        if plo == 0.0 {
            roots.push(lo);
            continue;
        }
        if plo * phi > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p(lo) * p(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

#[test]
fn hermitian_eigenvalues_match_power_sums_on_1000_matrices() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let a: CMat4 = random_hermitian(&mut r);
        let ev = qcore::eig_hermitian(&a).unwrap();
        let scale = a.max_abs().max(1.0);
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        for k in 1..=4 {
            let sum: f64 = ev.iter().map(|l| l.powi(k as i32)).sum();
            let tr = power_trace(&a, k);
            assert!(
                (sum - tr.re).abs() <= 1e-10 * scale.powi(k as i32) * 4.0,
                "k = {k}"
            );
        }
        let det = qcore::det4(&a);
        assert!((ev.iter().product::<f64>() - det.re).abs() <= 1e-10 * scale.powi(4) * 4.0);
    }
}

#[test]
fn hermitian_eigenvalues_match_bisection_of_characteristic_polynomial() {
    let mut r = rng(12);
    let mut compared = 0;
    for _ in 0..200 {
        let a: CMat4 = random_hermitian(&mut r);
        let c: Vec<f64> = char_poly(&a).iter().map(|z| z.re).collect();
        let bound =
            a.0.iter()
                .flatten()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt()
                + 1.0;
        let roots = real_roots_by_bisection(&c, bound, 20_000);
        if roots.len() != 4 {
            // Nearly degenerate pair inside one grid cell.
            continue;
        }
        compared += 1;
        let ev = qcore::eig_hermitian(&a).unwrap();
        for (x, y) in ev.iter().zip(&roots) {
            assert!((x - y).abs() < 1e-9 * bound, "{ev:?} vs {roots:?}");
        }
    }
    assert!(
        compared >= 190,
        "only {compared} matrices had separated roots"
    );
}

#[test]
fn hermitian_eigenvectors_reconstruct_the_matrix() {
    let mut r = rng(13);
    for _ in 0..300 {
        let a: CMat4 = random_hermitian(&mut r);
        let e = qcore::eigh(&a).unwrap();
        assert!((e.reconstruct() - a).max_abs() < 1e-11 * a.max_abs().max(1.0));
        let v = e.vectors;
        let gram = v.adjoint() * v;
        assert!((gram - CMat4::identity()).max_abs() < 1e-12);
    }
}

#[test]
fn general_eigenvalues_match_trace_and_determinant_on_1000_matrices() {
    let mut r = rng(14);
    for _ in 0..1000 {
        let a: CMat4 = random_matrix(&mut r);
        let ev = qcore::eig_general4(&a).unwrap();
        let scale = a.max_abs().max(1.0) * 4.0;
        for k in 1..=3 {
            let sum: C64 = ev.iter().map(|l| l.powu(k)).sum();
            assert!((sum - power_trace(&a, k as usize)).norm() <= 1e-9 * scale.powi(k as i32));
        }
        let prod: C64 = ev.iter().product();
        let c = char_poly(&a);
        assert!((prod - c[0]).norm() <= 1e-9 * scale.powi(4));
        assert!((prod - qcore::det4(&a)).norm() <= 1e-9 * scale.powi(4));
        for l in ev {
            assert!(eval_poly(&c, l).norm() <= 1e-8 * scale.powi(4));
        }
    }
}

#[test]
fn general_eigenvalues_of_defective_and_rotation_matrices() {
    // Jordan block: all eigenvalues 2.
    let mut j = CMat4::identity().scale_re(2.0);
    for k in 0..3 {
        j.0[k][k + 1] = ONE;
    }
    for l in qcore::eig_general4(&j).unwrap() {
        assert!((l - C64::new(2.0, 0.0)).norm() < 1e-3);
    }
    // Real rotation blocks: eigenvalues e^{+-i a}, e^{+-i b}.
    let (a, b) = (0.3_f64, 1.1_f64);
    let mut m = CMat4::zeros();
    for (off, ang) in [(0, a), (2, b)] {
        m.0[off][off] = C64::new(ang.cos(), 0.0);
        m.0[off][off + 1] = C64::new(-ang.sin(), 0.0);
        m.0[off + 1][off] = C64::new(ang.sin(), 0.0);
        m.0[off + 1][off + 1] = C64::new(ang.cos(), 0.0);
    }
    let mut args: Vec<f64> = qcore::eig_general4(&m)
        .unwrap()
        .iter()
        .map(|z| z.arg())
        .collect();
    args.sort_by(f64::total_cmp);
    for (x, y) in args.iter().zip([-b, -a, a, b]) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn partial_trace_of_random_states_is_a_state() {
    let mut r = rng(15);
    for _ in 0..200 {
        let rho = random_density(&mut r);
        for keep in [1, 2] {
            let red = qcore::partial_trace(rho.mat(), keep).unwrap();
            assert!((red.trace() - ONE).norm() < 1e-12);
            let ev = qcore::eig_hermitian(&red).unwrap();
            assert!(ev[0] > -1e-12);
        }
    }
}

fn arb_density2() -> impl Strategy<Value = CMat2> {
    (0.0..1.0f64, 0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(p, s, phi)| {
        // Bloch ball point of radius s.
        let x = s * (2.0 * p - 1.0);
        let y = (s * s - x * x).max(0.0).sqrt();
        let coh = C64::from_polar(y / 2.0, phi);
        CMat::<2>([
            [C64::new((1.0 + x) / 2.0, 0.0), coh],
            [coh.conj(), C64::new((1.0 - x) / 2.0, 0.0)],
        ])
    })
}

proptest! {
    #[test]
    fn partial_trace_inverts_kron(a in arb_density2(), b in arb_density2()) {
        let ab = a.kron(&b);
        let ra = qcore::partial_trace(&ab, 1).unwrap();
        let rb = qcore::partial_trace(&ab, 2).unwrap();
        prop_assert!((ra - a).max_abs() < 1e-13);
        prop_assert!((rb - b).max_abs() < 1e-13);
    }

    #[test]
    fn adjoint_reverses_products(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let a: CMat4 = random_matrix(&mut r);
        let b: CMat4 = random_matrix(&mut r);
        prop_assert!(((a * b).adjoint() - b.adjoint() * a.adjoint()).max_abs() < 1e-12);
        prop_assert!((a.mul_adj(&b) - a * b.adjoint()).max_abs() < 1e-12);
    }
}
