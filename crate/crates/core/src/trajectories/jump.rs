// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::{expect_re, normalized_pure, taylor4, EngineKind, StepOutcome, Unraveling};
use crate::error::{Error, Result};
use crate::model::ModelOperators;
use crate::qcore::{eig_hermitian, CMat4, I};
use crate::rng;
use crate::state::PureState;

/// Largest allowed per-step click probability on either channel.
pub const MAX_STEP_PROBABILITY: f64 = 0.05;

/// Quantum-jump SSE with both channels counted.
///
/// The default scheme is a midpoint splitting. With `N_h = exp(-i H_eff dt/2)`
/// the candidate post-click states are `chi_k = N_h J_k N_h psi`, channel `k`
/// clicks with probability `dt |chi_k|^2` (one categorical draw), and
/// otherwise the state moves by `N_h N_h psi`. The step map of the ensemble
/// is then trace-consistent to `O(dt^3)`, so the mean is second order in `dt`.
///
/// [`JumpSse::first_order`] keeps the literal scheme: independent clicks with
/// probability `dt <J^+ J>` on the pre-step state, left applied before right,
/// and `(1 - i dt H_eff)` without a click. Its `O(dt)` bias shows up against
/// the ensemble standard error whenever the ensemble is nearly deterministic.
#[derive(Clone, Debug)]
pub struct JumpSse {
    dt: f64,
    jumps: [CMat4; 2],
    rates: [CMat4; 2],
    scheme: Scheme,
}

#[derive(Clone, Debug)]
enum Scheme {
    Midpoint { half: CMat4 },
    FirstOrder { no_jump: CMat4 },
}

impl JumpSse {
    /// Fails with [`Error::StepTooLarge`] unless
    /// `dt * max eig(J^+ J) <= 0.05` on both channels.
    pub fn new(ops: &ModelOperators, dt: f64) -> Result<Self> {
        let mut engine = Self::first_order(ops, dt)?;
        engine.scheme = Scheme::Midpoint {
            half: taylor4(&ops.h_eff.scale(-I * (0.5 * dt))),
        };
        Ok(engine)
    }

    /// The literal first-order scheme.
    pub fn first_order(ops: &ModelOperators, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Precondition(format!(
                "dt must be positive, got {dt}"
            )));
        }
        let jumps = [ops.j_left, ops.j_right()];
        let rates = [jumps[0].adjoint() * jumps[0], jumps[1].adjoint() * jumps[1]];
        let top = rates
            .iter()
            .map(|r| eig_hermitian(&r.hermitian_part()).map(|e| e[3]))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        if top > 0.0 && dt * top > MAX_STEP_PROBABILITY {
            return Err(Error::StepTooLarge {
                dt,
                max_dt: MAX_STEP_PROBABILITY / top,
                bound: "dt * max eig(J^+ J) <= 0.05",
            });
        }
        let no_jump = CMat4::identity() - ops.h_eff.scale(I * dt);
        Ok(JumpSse {
            dt,
            jumps,
            rates,
            scheme: Scheme::FirstOrder { no_jump },
        })
    }

    pub fn is_first_order(&self) -> bool {
        matches!(self.scheme, Scheme::FirstOrder { .. })
    }

    fn step_first_order<R: Rng + ?Sized>(
        &self,
        no_jump: &CMat4,
        psi: &mut PureState,
        rng: &mut R,
    ) -> Result<StepOutcome> {
        let v = *psi.ket();
        let p = [
            self.dt * expect_re(&self.rates[0], &v),
            self.dt * expect_re(&self.rates[1], &v),
        ];
        let u = [rng::uniform(rng), rng::uniform(rng)];
        let jumps = [u[0] < p[0], u[1] < p[1]];
        if jumps[0] || jumps[1] {
            let mut w = v;
            for k in 0..2 {
                if jumps[k] {
                    w = *normalized_pure(self.jumps[k].apply(&w))?.ket();
                }
            }
            *psi = PureState::from_normalized(w);
        } else {
            *psi = normalized_pure(no_jump.apply(&v))?;
        }
        Ok(StepOutcome { jumps, dxi: 0.0 })
    }

    fn step_midpoint<R: Rng + ?Sized>(
        &self,
        half: &CMat4,
        psi: &mut PureState,
        rng: &mut R,
    ) -> Result<StepOutcome> {
        let mid = half.apply(psi.ket());
        let chi = [
            half.apply(&self.jumps[0].apply(&mid)),
            half.apply(&self.jumps[1].apply(&mid)),
        ];
        let p_left = self.dt * chi[0].norm_sqr();
        let p_right = self.dt * chi[1].norm_sqr();
        let u = rng::uniform(rng);
        let mut jumps = [false; 2];
        let next = if u < p_left {
            jumps[0] = true;
            chi[0]
        } else if u < p_left + p_right {
            jumps[1] = true;
            chi[1]
        } else {
            half.apply(&mid)
        };
        *psi = normalized_pure(next)?;
        Ok(StepOutcome { jumps, dxi: 0.0 })
    }
}

impl Unraveling for JumpSse {
    type State = PureState;

    fn kind(&self) -> EngineKind {
        EngineKind::Jump
    }

    fn dt(&self) -> f64 {
        self.dt
    }

    fn step<R: Rng + ?Sized>(&self, psi: &mut PureState, rng: &mut R) -> Result<StepOutcome> {
        match &self.scheme {
            Scheme::Midpoint { half } => self.step_midpoint(half, psi, rng),
            Scheme::FirstOrder { no_jump } => self.step_first_order(no_jump, psi, rng),
        }
    }
}
