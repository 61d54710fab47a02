// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical parameters and the 4x4 operators of two qubits coupled to a
//! driven one-dimensional waveguide.
//!
//! Units: hbar = 1. The default coupling `g = 1/sqrt(4 pi)` makes the single
//! qubit decay rate `Gamma = 1`, so times are measured in `1/Gamma`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::qcore::{CMat, CMat2, CMat4, C64, I, ONE, ZERO};

/// Coupling that gives `Gamma = 4 pi g^2 = 1`.
pub fn unit_gamma_coupling() -> f64 {
    1.0 / (4.0 * PI).sqrt()
}

/// User-facing physical inputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Qubit-waveguide coupling, units of sqrt(rate).
    pub g: f64,
    /// Drive amplitude `|alpha|`.
    pub alpha_mag: f64,
    /// Drive phase `arg(alpha)` in radians.
    pub theta: f64,
    /// Propagation phase `k L` between the qubits, radians.
    pub kl: f64,
    /// Detection efficiency of the reflected (left) channel.
    pub eta_l: f64,
    /// Detection efficiency of the transmitted (right) channel.
    pub eta_r: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            g: unit_gamma_coupling(),
            alpha_mag: 100.0,
            theta: 0.0,
            kl: FRAC_PI_2,
            eta_l: 1.0,
            eta_r: 1.0,
        }
    }
}

impl ModelParams {
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha_mag = alpha;
        self
    }

    pub fn with_kl(mut self, kl: f64) -> Self {
        self.kl = kl;
        self
    }

    pub fn with_efficiencies(mut self, eta_l: f64, eta_r: f64) -> Self {
        self.eta_l = eta_l;
        self.eta_r = eta_r;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.g,
            self.alpha_mag,
            self.theta,
            self.kl,
            self.eta_l,
            self.eta_r,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::Precondition(
                "model parameters must be finite".into(),
            ));
        }
        if self.g <= 0.0 {
            return Err(Error::Precondition(format!(
                "g must be positive, got {}",
                self.g
            )));
        }
        if self.alpha_mag < 0.0 {
            return Err(Error::Precondition(format!(
                "|alpha| must be non-negative, got {}",
                self.alpha_mag
            )));
        }
        for (name, eta) in [("eta_l", self.eta_l), ("eta_r", self.eta_r)] {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::Precondition(format!(
                    "{name} must lie in [0, 1], got {eta}"
                )));
            }
        }
        Ok(())
    }

    /// Complex drive amplitude `alpha = |alpha| e^{i theta}`.
    pub fn alpha(&self) -> C64 {
        C64::from_polar(self.alpha_mag, self.theta)
    }

    /// Angular frequency of the drive-induced Rabi oscillation, `2 g |alpha|`.
    pub fn rabi_frequency(&self) -> f64 {
        2.0 * self.g * self.alpha_mag
    }
}

/// Decay and exchange rates mediated by the waveguide.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedRates {
    pub gamma: f64,
    pub gamma12: f64,
    pub omega: f64,
}

pub fn derive_rates(params: &ModelParams) -> DerivedRates {
    let g2 = params.g * params.g;
    DerivedRates {
        gamma: 4.0 * PI * g2,
        gamma12: 4.0 * PI * g2 * params.kl.cos(),
        omega: 2.0 * PI * g2 * params.kl.sin(),
    }
}

/// `sigma^- = |g><e|` in the `{e, g}` ordering.
fn sigma_minus_single() -> CMat2 {
    CMat::<2>([[ZERO, ZERO], [ONE, ZERO]])
}

/// All operators of the two-qubit problem.
///
/// The right jump operator is stored as its operator part
/// `sqrt(2 pi) g c^-` plus the scalar `i alpha / sqrt(2 pi)`.
#[derive(Clone, Debug)]
pub struct ModelOperators {
    pub params: ModelParams,
    pub rates: DerivedRates,
    pub sigma_minus: [CMat4; 2],
    pub sigma_plus: [CMat4; 2],
    /// `c^- = sigma_1^- + e^{-ikL} sigma_2^-`
    pub c_minus: CMat4,
    /// `c^+ = (c^-)^dagger`
    pub c_plus: CMat4,
    /// Full drive `g alpha (sigma_1^+ + e^{ikL} sigma_2^+) + h.c.`
    pub h_drive: CMat4,
    /// Waveguide-mediated exchange `Omega (sigma_1^+ sigma_2^- + h.c.)`.
    pub h_qq: CMat4,
    /// Hamiltonian of the jump-operator form: `H_qq` plus half the drive.
    pub h_h: CMat4,
    /// `H_h - (i/2) sum_i J_i^+ J_i^-`, with the full right jump operator.
    pub h_eff: CMat4,
    /// `sqrt(2 pi) g (sigma_1^- + e^{ikL} sigma_2^-)`
    pub j_left: CMat4,
    /// Operator part of the right jump operator, `sqrt(2 pi) g c^-`.
    pub j_right_op: CMat4,
    /// Scalar part of the right jump operator, `i alpha / sqrt(2 pi)`.
    pub j_right_offset: C64,
}

impl ModelOperators {
    pub fn new(params: ModelParams) -> Result<Self> {
        params.validate()?;
        Ok(build_operators(&params))
    }

    /// The right jump operator as a single matrix (operator part plus offset).
    pub fn j_right(&self) -> CMat4 {
        self.j_right_op + CMat4::identity().scale(self.j_right_offset)
    }

    /// A copy with the qubit-qubit exchange removed from every Hamiltonian.
    pub fn without_exchange(&self) -> Self {
        let mut out = self.clone();
        out.h_h = out.h_h - out.h_qq;
        out.h_eff = out.h_eff - out.h_qq;
        out.h_qq = CMat4::zeros();
        out
    }

    /// The measurement operator of the diffusive right channel,
    /// `-i e^{-i theta} sqrt(2 pi) g c^-`.
    pub fn diffusion_op(&self) -> CMat4 {
        let phase = -I * C64::from_polar(1.0, -self.params.theta);
        self.j_right_op.scale(phase)
    }
}

pub fn build_operators(params: &ModelParams) -> ModelOperators {
    let rates = derive_rates(params);
    let id2 = CMat2::identity();
    let sm = sigma_minus_single();
    let sm1 = sm.kron(&id2);
    let sm2 = id2.kron(&sm);
    let sp1 = sm1.adjoint();
    let sp2 = sm2.adjoint();

    let e_pos = C64::from_polar(1.0, params.kl);
    let e_neg = e_pos.conj();
    let c_minus = sm1 + sm2.scale(e_neg);
    let c_plus = c_minus.adjoint();

    let alpha = params.alpha();
    let g = params.g;
    let raise = sp1 + sp2.scale(e_pos);
    let half_drive_up = raise.scale(alpha * g);
    let h_drive = half_drive_up + half_drive_up.adjoint();

    let h_qq = (sp1 * sm2 + sp2 * sm1).scale_re(rates.omega);
    let h_h = h_qq + h_drive.scale_re(0.5);

    let root = (2.0 * PI).sqrt() * g;
    let j_left = (sm1 + sm2.scale(e_pos)).scale_re(root);
    let j_right_op = c_minus.scale_re(root);
    let j_right_offset = I * alpha / (2.0 * PI).sqrt();
    let j_right = j_right_op + CMat4::identity().scale(j_right_offset);

    let decay = j_left.adjoint() * j_left + j_right.adjoint() * j_right;
    let h_eff = h_h - decay.scale(I * 0.5);

    ModelOperators {
        params: *params,
        rates,
        sigma_minus: [sm1, sm2],
        sigma_plus: [sp1, sp2],
        c_minus,
        c_plus,
        h_drive,
        h_qq,
        h_h,
        h_eff,
        j_left,
        j_right_op,
        j_right_offset,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entangle::BellState;
    use crate::qcore::CVec4;
    use crate::state::{EE, GG};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rates_at_quarter_wavelength() {
        let p = ModelParams::default();
        let r = derive_rates(&p);
        assert!(close(r.gamma, 1.0, 1e-14));
        assert!(close(r.gamma12, 0.0, 1e-14));
        assert!(close(r.omega, 0.5, 1e-14));
    }

    #[test]
    fn rates_at_half_wavelength() {
        let r = derive_rates(&ModelParams::default().with_kl(PI));
        assert!(close(r.gamma, 1.0, 1e-14));
        assert!(close(r.gamma12, -1.0, 1e-14));
        assert!(close(r.omega, 0.0, 1e-14));
    }

    #[test]
    fn rates_at_eighth_wavelength() {
        let p = ModelParams {
            g: 0.1,
            kl: PI / 4.0,
            ..Default::default()
        };
        let r = derive_rates(&p);
        assert!(close(r.gamma, 0.125_663_706_143_591_7, 1e-15));
        assert!(close(r.gamma12, r.gamma / 2f64.sqrt(), 1e-15));
        assert!(close(r.omega, r.gamma * 2f64.sqrt() / 4.0, 1e-15));
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        let ops = build_operators(&ModelParams {
            theta: 0.7,
            kl: 1.1,
            ..Default::default()
        });
        for h in [ops.h_drive, ops.h_qq, ops.h_h] {
            assert!(h.hermiticity_error() < 1e-12);
        }
    }

    #[test]
    fn jump_operators_match_definitions() {
        let p = ModelParams {
            kl: 0.9,
            ..Default::default()
        };
        let ops = build_operators(&p);
        let root = (2.0 * PI).sqrt() * p.g;
        let expect_l = (ops.sigma_minus[0] + ops.sigma_minus[1].scale(C64::from_polar(1.0, p.kl)))
            .scale_re(root);
        assert_eq!(ops.j_left, expect_l);
        let expect_c = ops.sigma_minus[0] + ops.sigma_minus[1].scale(C64::from_polar(1.0, -p.kl));
        assert_eq!(ops.c_minus, expect_c);
    }

    #[test]
    fn left_jump_from_doubly_excited_gives_plus_i() {
        let ops = build_operators(&ModelParams::default());
        let out = ops.j_left.apply(&CVec4::basis(EE)).normalized().unwrap();
        let fid = BellState::PlusI.ket().inner(&out).norm_sqr();
        assert!(close(fid, 1.0, 1e-12));
    }

    #[test]
    fn dark_states_at_quarter_wavelength() {
        let ops = build_operators(&ModelParams::default());
        let plus = BellState::PlusI.ket();
        let minus = BellState::MinusI.ket();
        assert!(ops.c_minus.apply(&plus).norm() < 1e-12);
        assert!(ops.j_left.apply(&minus).norm() < 1e-12);
    }

    #[test]
    fn drive_off() {
        let ops = build_operators(&ModelParams::default().with_alpha(0.0));
        assert_eq!(ops.h_drive.max_abs(), 0.0);
        assert_eq!(
            ops.j_right(),
            ops.c_minus.scale_re((2.0 * PI).sqrt() * ops.params.g)
        );
    }

    #[test]
    fn ladders_at_quarter_wavelength() {
        // n = 0: J_L lowers ee -> +i -> gg and kills -i; c^- lowers ee -> -i -> gg and kills +i.
        let ops = build_operators(&ModelParams::default());
        let ee = CVec4::basis(EE);
        let gg = CVec4::basis(GG);
        let plus = BellState::PlusI.ket();
        let minus = BellState::MinusI.ket();
        let in_span = |v: &CVec4, target: &CVec4| {
            let n = v.norm();
            n > 0.0 && (target.inner(v).norm() - n).abs() < 1e-12
        };
        assert!(in_span(&ops.j_left.apply(&ee), &plus));
        assert!(in_span(&ops.j_left.apply(&plus), &gg));
        assert!(ops.j_left.apply(&gg).norm() < 1e-12);
        assert!(in_span(&ops.c_minus.apply(&ee), &minus));
        assert!(in_span(&ops.c_minus.apply(&minus), &gg));
    }

    #[test]
    fn roles_swap_for_odd_n() {
        let ops = build_operators(&ModelParams::default().with_kl(1.5 * PI));
        let plus = BellState::PlusI.ket();
        let minus = BellState::MinusI.ket();
        assert!(ops.j_left.apply(&plus).norm() < 1e-12);
        assert!(ops.c_minus.apply(&minus).norm() < 1e-12);
        let out = ops.j_left.apply(&CVec4::basis(EE)).normalized().unwrap();
        assert!(close(minus.inner(&out).norm_sqr(), 1.0, 1e-12));
    }

    #[test]
    fn validation_rejects_bad_params() {
        assert!(ModelOperators::new(ModelParams {
            g: 0.0,
            ..Default::default()
        })
        .is_err());
        assert!(ModelOperators::new(ModelParams::default().with_efficiencies(1.2, 1.0)).is_err());
        assert!(ModelOperators::new(ModelParams {
            kl: f64::NAN,
            ..Default::default()
        })
        .is_err());
    }
}
