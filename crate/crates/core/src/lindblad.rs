// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic master-equation evolution, the stationary state, and the
//! reflected-light intensity correlation `g2_L(tau)`.

use crate::error::{Error, Result};
use crate::model::ModelOperators;
use crate::qcore::{CMat4, C64, I, ONE, ZERO};
use crate::state::normalize_density;

pub use crate::state::DensityOp;

/// Steps between Hermitian re-symmetrizations of the integrated state.
pub const RESYMMETRIZE_EVERY: usize = 1000;

/// Largest stable RK4 step: resolves both the Rabi frequency `2 g |alpha|`
/// and the decay rate with 100 steps per unit phase.
pub fn dt_max(ops: &ModelOperators) -> f64 {
    let by_decay = 0.01 / ops.rates.gamma;
    let rabi = ops.params.rabi_frequency();
    if rabi > 0.0 {
        by_decay.min(0.01 / rabi)
    } else {
        by_decay
    }
}

/// Right-hand side of the master equation in its rate form:
/// `i[rho, H_d + H_qq] + sum_ij Gamma_ij (s_i rho s_j^+ - {rho, s_i^+ s_j}/2)`.
pub fn liouvillian_apply(ops: &ModelOperators, rho: &DensityOp) -> CMat4 {
    rate_form_apply(ops, rho.mat())
}

pub fn rate_form_apply(ops: &ModelOperators, rho: &CMat4) -> CMat4 {
    let h = ops.h_drive + ops.h_qq;
    let mut out = (*rho * h - h * *rho).scale(I);
    let r = ops.rates;
    let gamma = [[r.gamma, r.gamma12], [r.gamma12, r.gamma]];
    for i in 0..2 {
        for j in 0..2 {
            let sm_i = ops.sigma_minus[i];
            let sp_j = ops.sigma_plus[j];
            let feed = sm_i * *rho * sp_j;
            let rate_op = ops.sigma_plus[i] * ops.sigma_minus[j];
            out += (feed - rate_op.anticommutator(rho).scale_re(0.5)).scale_re(gamma[i][j]);
        }
    }
    out
}

/// Right-hand side in the jump-operator form built from `H_h`, `J_L` and
/// the full `J_R`.
pub fn jump_form_apply(ops: &ModelOperators, rho: &CMat4) -> CMat4 {
    let mut out = (*rho * ops.h_h - ops.h_h * *rho).scale(I);
    for j in [ops.j_left, ops.j_right()] {
        let jd_j = j.adjoint() * j;
        out += j.sandwich(rho) - jd_j.anticommutator(rho).scale_re(0.5);
    }
    out
}

/// A Lindblad generator `-i[H, rho] + sum_k (L_k rho L_k^+ - {L_k^+ L_k, rho}/2)`
/// stored as `K = -iH - sum_k L_k^+ L_k / 2` and the jump list.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    k: CMat4,
    jumps: Vec<CMat4>,
}

impl Liouvillian {
    pub fn new(hamiltonian: &CMat4, jumps: Vec<CMat4>) -> Self {
        let mut k = hamiltonian.scale(-I);
        for l in &jumps {
            k = k - (l.adjoint() * *l).scale_re(0.5);
        }
        Liouvillian { k, jumps }
    }

    /// The model's master equation from `H_h`, `J_L` and `J_R`.
    pub fn from_operators(ops: &ModelOperators) -> Self {
        Self::new(&ops.h_h, vec![ops.j_left, ops.j_right()])
    }

    /// The master equation with the reflected channel removed: full drive,
    /// exchange, and the transmitted-channel dissipator only.
    pub fn without_left_channel(ops: &ModelOperators) -> Self {
        Self::new(&(ops.h_drive + ops.h_qq), vec![ops.j_right_op])
    }

    pub fn apply(&self, rho: &CMat4) -> CMat4 {
        let mut out = self.k * *rho + *rho * self.k.adjoint();
        for l in &self.jumps {
            out += l.sandwich(rho);
        }
        out
    }

    pub fn rk4_step(&self, rho: &CMat4, dt: f64) -> CMat4 {
        let k1 = self.apply(rho);
        let k2 = self.apply(&(*rho + k1.scale_re(0.5 * dt)));
        let k3 = self.apply(&(*rho + k2.scale_re(0.5 * dt)));
        let k4 = self.apply(&(*rho + k3.scale_re(dt)));
        *rho + (k1 + k2.scale_re(2.0) + k3.scale_re(2.0) + k4).scale_re(dt / 6.0)
    }

    /// The 16x16 superoperator acting on row-major vectorized matrices.
    pub fn superoperator(&self) -> [[C64; 16]; 16] {
        let mut s = [[ZERO; 16]; 16];
        for a in 0..4 {
            for b in 0..4 {
                let mut e = CMat4::zeros();
                e.0[a][b] = ONE;
                let image = self.apply(&e);
                for i in 0..4 {
                    for j in 0..4 {
                        s[4 * i + j][4 * a + b] = image.0[i][j];
                    }
                }
            }
        }
        s
    }
}

/// Master-equation samples on a uniform grid.
#[derive(Clone, Debug)]
pub struct MeSolution {
    pub times: Vec<f64>,
    pub states: Vec<DensityOp>,
}

/// Number of steps that cover `t_end` with step `dt`.
pub(crate) fn step_count(t_end: f64, dt: f64) -> Result<usize> {
    if !(t_end >= 0.0) || !(dt > 0.0) || !t_end.is_finite() || !dt.is_finite() {
        return Err(Error::Precondition(format!(
            "need t_end >= 0 and dt > 0, got t_end = {t_end}, dt = {dt}"
        )));
    }
    Ok((t_end / dt).round() as usize)
}

pub(crate) fn check_rk4_step(ops: &ModelOperators, dt: f64) -> Result<()> {
    let max_dt = dt_max(ops);
    if dt > max_dt * (1.0 + 1e-12) {
        return Err(Error::StepTooLarge {
            dt,
            max_dt,
            bound: "dt_max = min(0.01/(2 g |alpha|), 0.01/Gamma)",
        });
    }
    Ok(())
}

/// Integrates the master equation from `rho0` with RK4, recording every
/// `stride`-th step and the final state.
pub fn integrate_me(
    ops: &ModelOperators,
    rho0: &DensityOp,
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<MeSolution> {
    check_rk4_step(ops, dt)?;
    integrate_with(&Liouvillian::from_operators(ops), rho0, t_end, dt, stride)
}

/// RK4 integration of an arbitrary generator.
pub fn integrate_with(
    liouvillian: &Liouvillian,
    rho0: &DensityOp,
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<MeSolution> {
    let n = step_count(t_end, dt)?;
    let stride = stride.max(1);
    let mut rho = *rho0.mat();
    let mut times = vec![0.0];
    let mut states = vec![*rho0];
    let trace0 = rho.trace().re;
    for step in 1..=n {
        rho = liouvillian.rk4_step(&rho, dt);
        if step % RESYMMETRIZE_EVERY == 0 {
            let drift = rho.hermiticity_error();
            if drift > 1e-9 {
                return Err(Error::Precondition(format!(
                    "Hermiticity drift {drift:e} at step {step}"
                )));
            }
            rho = rho.hermitian_part();
        }
        if step % stride == 0 || step == n {
            times.push(step as f64 * dt);
            states.push(DensityOp::new(rho)?);
        }
    }
    let drift = (rho.trace().re - trace0).abs();
    if drift > 1e-8 {
        return Err(Error::Precondition(format!(
            "trace drift {drift:e} exceeds 1e-8"
        )));
    }
    Ok(MeSolution { times, states })
}

/// Solves a 16x16 complex linear system by Gaussian elimination with partial
/// pivoting.
fn solve16(mut a: [[C64; 16]; 16], mut b: [C64; 16]) -> Result<[C64; 16]> {
    for col in 0..16 {
        let piv = (col..16)
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .unwrap_or(col);
        if a[piv][col].norm() == 0.0 {
            return Err(Error::Precondition("singular steady-state system".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..16 {
            let f = a[row][col] / a[col][col];
            if f == ZERO {
                continue;
            }
            for k in col..16 {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = [ZERO; 16];
    for row in (0..16).rev() {
        let mut acc = b[row];
        for k in row + 1..16 {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}

/// Numerical rank by Gaussian elimination with complete pivoting.
fn rank16(mut a: [[C64; 16]; 16], rel_tol: f64) -> usize {
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let tol = rel_tol * scale;
    let mut rank = 0;
    let mut cols: Vec<usize> = (0..16).collect();
    for step in 0..16 {
        let mut best = (step, step, 0.0);
        for r in step..16 {
            for &c in &cols[step..] {
                let v = a[r][c].norm();
                if v > best.2 {
                    best = (r, c, v);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        rank += 1;
        a.swap(step, best.0);
        let cpos = cols.iter().position(|&c| c == best.1).unwrap_or(step);
        cols.swap(step, cpos);
        let pc = cols[step];
        for r in step + 1..16 {
            let f = a[r][pc] / a[step][pc];
            for &c in &cols[step..] {
                let v = a[step][c];
                a[r][c] -= f * v;
            }
        }
    }
    rank
}

/// Relative pivot size below which the Liouvillian counts as rank deficient.
pub const NULL_SPACE_TOL: f64 = 1e-9;

/// The stationary state of the master equation, from the Liouvillian null
/// space with one row replaced by the unit-trace constraint.
pub fn steady_state(ops: &ModelOperators) -> Result<DensityOp> {
    steady_state_of(&Liouvillian::from_operators(ops))
}

pub fn steady_state_of(liouvillian: &Liouvillian) -> Result<DensityOp> {
    let mut s = liouvillian.superoperator();
    let null_dim = 16 - rank16(s, NULL_SPACE_TOL);
    if null_dim != 1 {
        return Err(Error::DegenerateSteadyState { null_dim });
    }
    // The diagonal rows sum to zero (trace preservation), so row 0 is redundant.
    let mut rhs = [ZERO; 16];
    s[0] = [ZERO; 16];
    for k in 0..4 {
        s[0][5 * k] = ONE;
    }
    rhs[0] = ONE;
    let x = solve16(s, rhs)?;
    let mut rho = CMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            rho.0[i][j] = x[4 * i + j];
        }
    }
    DensityOp::new(normalize_density(&rho)?)
}

/// `g2_L(tau)` of the reflected light.
#[derive(Clone, Debug)]
pub struct G2Curve {
    pub tau_grid: Vec<f64>,
    pub values: Vec<f64>,
}

/// Reflected-light correlation via the quantum regression theorem:
/// the conditional state `J_L rho_ss J_L^+ / flux` is propagated under the
/// master equation and its `J_L` flux is compared to the stationary flux.
///
/// `tau_grid` must be non-negative and ascending.
pub fn g2_left(ops: &ModelOperators, tau_grid: &[f64]) -> Result<G2Curve> {
    if tau_grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite())
        || tau_grid.windows(2).any(|w| w[1] < w[0])
    {
        return Err(Error::Precondition(
            "tau grid must be ascending and non-negative".into(),
        ));
    }
    let rho_ss = steady_state(ops)?;
    let j = ops.j_left;
    let jd_j = j.adjoint() * j;
    let flux = (jd_j * *rho_ss.mat()).trace().re;
    if flux <= 1e-14 * ops.rates.gamma {
        return Err(Error::ZeroFlux);
    }

    let liouvillian = Liouvillian::from_operators(ops);
    let h_max = dt_max(ops);
    let mut sigma = j.sandwich(rho_ss.mat()).scale_re(1.0 / flux);
    let mut t = 0.0;
    let mut values = Vec::with_capacity(tau_grid.len());
    for &tau in tau_grid {
        let span = tau - t;
        if span > 0.0 {
            let n = (span / h_max).ceil().max(1.0) as usize;
            let h = span / n as f64;
            for _ in 0..n {
                sigma = liouvillian.rk4_step(&sigma, h);
            }
            sigma = sigma.hermitian_part();
            t = tau;
        }
        let g2 = (jd_j * sigma).trace().re / flux;
        values.push(if g2 < 0.0 && g2 > -1e-12 { 0.0 } else { g2 });
    }
    Ok(G2Curve {
        tau_grid: tau_grid.to_vec(),
        values,
    })
}

/// `g2_L(0) = <J^+ J^+ J J> / <J^+ J>^2` evaluated directly on a state.
pub fn g2_zero_direct(ops: &ModelOperators, rho: &DensityOp) -> f64 {
    let j = ops.j_left;
    let jd = j.adjoint();
    let num = (jd * jd * j * j * *rho.mat()).trace().re;
    let flux = (jd * j * *rho.mat()).trace().re;
    num / (flux * flux)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_operators, ModelParams};
    use crate::state::{PureState, EE, EG, GE, GG};
    use std::f64::consts::PI;

    fn random_density(seed: u64) -> CMat4 {
        // Gram matrix of a pseudo-random complex matrix, normalized.
        let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        let mut next = || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = CMat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                a.0[i][j] = C64::new(next(), next());
            }
        }
        let m = a.mul_adj(&a);
        m.scale_re(1.0 / m.trace().re)
    }

    #[test]
    fn rate_and_jump_forms_agree() {
        for (k, kl) in [0.3, PI / 2.0, 2.0, PI].into_iter().enumerate() {
            let p = ModelParams {
                kl,
                theta: 0.4,
                alpha_mag: 7.0,
                ..Default::default()
            };
            let ops = build_operators(&p);
            for s in 0..25 {
                let rho = random_density(100 * k as u64 + s);
                let a = rate_form_apply(&ops, &rho);
                let b = jump_form_apply(&ops, &rho);
                assert!((a - b).max_abs() <= 1e-10 * ops.rates.gamma);
                let c = Liouvillian::from_operators(&ops).apply(&rho);
                assert!((a - c).max_abs() <= 1e-10 * ops.rates.gamma);
            }
        }
    }

    #[test]
    fn maximally_mixed_is_pushed_toward_ground() {
        // Derived by hand: the Hamiltonian part vanishes on 1/4 and the
        // dissipator gives (Gamma/4)(Z'_1 + Z'_2) with Z' = |g><g| - |e><e|.
        for alpha in [0.0, 100.0] {
            let ops = build_operators(&ModelParams::default().with_alpha(alpha));
            let d = liouvillian_apply(&ops, &DensityOp::maximally_mixed());
            let expect = CMat4::diag_real([-0.5, 0.0, 0.0, 0.5]);
            assert!((d - expect).max_abs() < 1e-12, "alpha = {alpha}");
        }
    }

    #[test]
    fn ground_state_is_stationary_without_drive() {
        let ops = build_operators(&ModelParams::default().with_alpha(0.0));
        let d = liouvillian_apply(&ops, &PureState::gg().density());
        assert!(d.max_abs() < 1e-15);
    }

    #[test]
    fn doubly_excited_decays_at_twice_gamma() {
        let ops = build_operators(&ModelParams::default().with_alpha(0.0));
        let d = liouvillian_apply(&ops, &PureState::ee().density());
        assert!((d.0[EE][EE].re + 2.0).abs() < 1e-12);
    }

    #[test]
    fn output_is_traceless_and_hermitian() {
        let ops = build_operators(&ModelParams {
            kl: 1.3,
            theta: 0.2,
            ..Default::default()
        });
        for s in 0..20 {
            let rho = DensityOp::new(random_density(s)).unwrap();
            let d = liouvillian_apply(&ops, &rho);
            assert!(d.trace().norm() <= 1e-11 * ops.rates.gamma * 100.0);
            assert!(d.hermiticity_error() <= 1e-11 * ops.rates.gamma * 100.0);
        }
    }

    #[test]
    fn rejects_oversized_step() {
        let ops = build_operators(&ModelParams::default());
        let err = integrate_me(&ops, &DensityOp::maximally_mixed(), 1.0, 1e-3, 1).unwrap_err();
        assert!(matches!(err, Error::StepTooLarge { .. }));
    }

    #[test]
    fn total_excitation_decays_exponentially() {
        // Gamma_12 = 0 at kL = pi/2, so the single-excitation manifold
        // empties at exactly Gamma regardless of the exchange term.
        let ops = build_operators(&ModelParams::default().with_alpha(0.0));
        let rho0 = PureState::basis(EG).density();
        let sol = integrate_me(&ops, &rho0, 3.0, 0.005, 20).unwrap();
        for (t, rho) in sol.times.iter().zip(&sol.states) {
            let m = rho.mat();
            let excited = m.0[EG][EG].re + m.0[GE][GE].re;
            assert!((excited - (-t).exp()).abs() < 1e-6, "t = {t}");
        }
    }

    #[test]
    fn pure_dissipation_reaches_ground() {
        let ops = build_operators(&ModelParams::default().with_alpha(0.0));
        let sol = integrate_me(&ops, &PureState::ee().density(), 20.0, 0.01, 10).unwrap();
        let mut last_ground = 0.0;
        let mut last_ee = 1.0;
        for rho in &sol.states {
            let gg = rho.mat().0[GG][GG].re;
            let ee = rho.mat().0[EE][EE].re;
            assert!(gg >= last_ground - 1e-12);
            assert!(ee <= last_ee + 1e-12);
            last_ground = gg;
            last_ee = ee;
        }
        assert!((last_ground - 1.0).abs() < 1e-6);
    }

    #[test]
    fn steady_state_without_drive_is_ground() {
        for kl in [0.4, PI / 2.0, 2.5] {
            let ops = build_operators(&ModelParams::default().with_alpha(0.0).with_kl(kl));
            let rho = steady_state(&ops).unwrap();
            assert!((rho.mat().0[GG][GG].re - 1.0).abs() < 1e-10, "kL = {kl}");
        }
    }

    #[test]
    fn degenerate_null_space_is_reported() {
        let ops = build_operators(&ModelParams::default().with_alpha(0.0).with_kl(PI));
        match steady_state(&ops) {
            Err(Error::DegenerateSteadyState { null_dim }) => assert!(null_dim > 1),
            other => panic!("expected degenerate null space, got {other:?}"),
        }
    }

    #[test]
    fn g2_needs_flux() {
        let ops = build_operators(&ModelParams::default().with_alpha(0.0));
        assert!(matches!(g2_left(&ops, &[0.0, 1.0]), Err(Error::ZeroFlux)));
    }
}
