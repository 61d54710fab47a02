// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use bellherald::entangle::BellState;
use bellherald::lindblad;
use bellherald::model::{derive_rates, unit_gamma_coupling, ModelOperators, ModelParams};
use bellherald::qcore::{CMat4, CVec4, C64, I, ONE, ZERO};
use bellherald::state::{EE, EG, GE, GG};
use common::{max_diff, random_density, rng};

/// Single-excitation lowering operators written out by hand in the
/// `{ee, eg, ge, gg}` ordering.
fn lowering() -> [CMat4; 2] {
    let mut s1 = CMat4::zeros();
    s1.0[GE][EE] = ONE;
    s1.0[GG][EG] = ONE;
    let mut s2 = CMat4::zeros();
    s2.0[EG][EE] = ONE;
    s2.0[GG][GE] = ONE;
    [s1, s2]
}

/// Rate-form generator assembled from scratch.
fn reference_generator(p: &ModelParams, rho: &CMat4) -> CMat4 {
    let [s1, s2] = lowering();
    let g = p.g;
    let gamma = 4.0 * PI * g * g;
    let gamma12 = gamma * p.kl.cos();
    let omega = 0.5 * gamma * p.kl.sin();
    let alpha = C64::from_polar(p.alpha_mag, p.theta);
    let up = (s1.adjoint() + s2.adjoint().scale(C64::from_polar(1.0, p.kl))).scale(alpha * g);
    let hd = up + up.adjoint();
    let hqq = (s1.adjoint() * s2 + s2.adjoint() * s1).scale_re(omega);
    let h = hd + hqq;
    let mut out = (h * *rho - *rho * h).scale(-I);
    let s = [s1, s2];
    let rates = [[gamma, gamma12], [gamma12, gamma]];
    for i in 0..2 {
        for j in 0..2 {
            let a = s[i] * *rho * s[j].adjoint();
            let b = s[j].adjoint() * s[i];
            out += (a - (b * *rho + *rho * b).scale_re(0.5)).scale_re(rates[i][j]);
        }
    }
    out
}

fn params_grid() -> Vec<ModelParams> {
    let mut out = Vec::new();
    for (g, kl, alpha, theta) in [
        (unit_gamma_coupling(), FRAC_PI_2, 100.0, 0.0),
        (unit_gamma_coupling(), PI, 3.0, 0.4),
        (0.1, FRAC_PI_4, 7.5, -1.2),
        (0.37, 2.0, 0.0, 0.0),
        (0.2, 1.5 * PI, 12.0, 2.5),
    ] {
        out.push(ModelParams {
            g,
            kl,
            alpha_mag: alpha,
            theta,
            ..ModelParams::default()
        });
    }
    out
}

#[test]
fn rate_and_jump_forms_agree_with_a_hand_built_generator() {
    let mut r = rng(21);
    for p in params_grid() {
        let ops = ModelOperators::new(p).unwrap();
        let gamma = ops.rates.gamma;
        for _ in 0..100 {
            let rho = random_density(&mut r);
            let reference = reference_generator(&p, rho.mat());
            let scale = gamma * (1.0 + p.alpha_mag);
            assert!(
                max_diff(&lindblad::rate_form_apply(&ops, rho.mat()), &reference) <= 1e-10 * scale
            );
            assert!(
                max_diff(&lindblad::jump_form_apply(&ops, rho.mat()), &reference) <= 1e-10 * scale
            );
        }
    }
}

#[test]
fn rates_follow_the_closed_forms_on_a_grid() {
    for i in 0..4 {
        for j in 0..5 {
            let g = 0.05 + 0.1 * i as f64;
            let kl = -PI + 1.3 * j as f64;
            let r = derive_rates(&ModelParams {
                g,
                kl,
                ..ModelParams::default()
            });
            assert!((r.gamma - 4.0 * PI * g * g).abs() <= 1e-12);
            assert!((r.gamma12 - 4.0 * PI * g * g * kl.cos()).abs() <= 1e-12);
            assert!((r.omega - 2.0 * PI * g * g * kl.sin()).abs() <= 1e-12);
            assert!(r.gamma12.abs() <= r.gamma && r.omega.abs() <= r.gamma / 2.0 + 1e-15);
        }
    }
}

#[test]
fn hamiltonians_hermitian_and_jump_operators_exact() {
    for p in params_grid() {
        let ops = ModelOperators::new(p).unwrap();
        for h in [ops.h_drive, ops.h_qq, ops.h_h] {
            assert!(h.hermiticity_error() <= 1e-12);
        }
        let [s1, s2] = lowering();
        let root = (2.0 * PI).sqrt() * p.g;
        let jl = (s1 + s2.scale(C64::from_polar(1.0, p.kl))).scale_re(root);
        let cm = s1 + s2.scale(C64::from_polar(1.0, -p.kl));
        assert_eq!(ops.j_left, jl);
        assert_eq!(ops.c_minus, cm);
        assert_eq!(ops.c_plus, cm.adjoint());
        let offset = I * C64::from_polar(p.alpha_mag, p.theta) / (2.0 * PI).sqrt();
        assert!((ops.j_right_offset - offset).norm() <= 1e-15);
        let heff =
            ops.h_h - (jl.adjoint() * jl + ops.j_right().adjoint() * ops.j_right()).scale(I * 0.5);
        assert!(max_diff(&ops.h_eff, &heff) <= 1e-12);
    }
}

fn ket(k: usize) -> CVec4 {
    CVec4::basis(k)
}

fn assert_parallel(v: &CVec4, target: &CVec4) {
    let n = v.norm();
    assert!(n > 1e-6);
    let overlap = target.inner(v).norm() / n;
    assert!((overlap - 1.0).abs() <= 1e-12, "overlap {overlap}");
}

#[test]
fn ladders_for_even_and_odd_half_wavelengths() {
    for n in 0..4 {
        let kl = (n as f64 + 0.5) * PI;
        let ops = ModelOperators::new(ModelParams::default().with_kl(kl).with_alpha(0.0)).unwrap();
        let (bright_l, dark_l) = if n % 2 == 0 {
            (BellState::PlusI, BellState::MinusI)
        } else {
            (BellState::MinusI, BellState::PlusI)
        };
        // J_L: ee -> bright -> gg, annihilates dark.
        assert_parallel(&ops.j_left.apply(&ket(EE)), &bright_l.ket());
        assert_parallel(&ops.j_left.apply(&bright_l.ket()), &ket(GG));
        assert!(ops.j_left.apply(&dark_l.ket()).norm() <= 1e-12);
        // c^-: roles swapped.
        assert_parallel(&ops.c_minus.apply(&ket(EE)), &dark_l.ket());
        assert_parallel(&ops.c_minus.apply(&dark_l.ket()), &ket(GG));
        assert!(ops.c_minus.apply(&bright_l.ket()).norm() <= 1e-12);
        assert!(ops.j_left.apply(&ket(GG)).norm() == 0.0);
    }
}

#[test]
fn drive_off_reduces_right_channel_to_collective_decay() {
    let ops = ModelOperators::new(ModelParams::default().with_alpha(0.0)).unwrap();
    assert_eq!(ops.h_drive, CMat4::zeros());
    assert_eq!(ops.j_right_offset, ZERO);
    let expect = ops.c_minus.scale_re((2.0 * PI).sqrt() * ops.params.g);
    assert!(max_diff(&ops.j_right(), &expect) <= 1e-15);
}

#[test]
fn invalid_parameters_are_rejected() {
    let base = ModelParams::default();
    for bad in [
        ModelParams { g: 0.0, ..base },
        ModelParams { g: -1.0, ..base },
        ModelParams { eta_l: 1.5, ..base },
        ModelParams {
            eta_r: -0.1,
            ..base
        },
        ModelParams {
            alpha_mag: f64::NAN,
            ..base
        },
        ModelParams {
            kl: f64::INFINITY,
            ..base
        },
    ] {
        assert!(ModelOperators::new(bad).is_err(), "{bad:?}");
    }
}
