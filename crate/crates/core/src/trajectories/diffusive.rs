// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::{expect_re, normalized_pure, taylor4, EngineKind, StepOutcome, Unraveling};
use crate::error::{Error, Result};
use crate::lindblad::dt_max;
use crate::model::ModelOperators;
use crate::qcore::{CMat4, I};
use crate::rng;
use crate::state::PureState;

/// Guards and switches of the strong-drive engines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiffusiveOptions {
    /// Smallest `|alpha|` accepted; `None` disables the validity guard.
    pub alpha_guard: Option<f64>,
    /// With `false` the reflected channel is removed from the model.
    pub left_channel: bool,
    /// Coefficient of the innovation drift `<L + L^+> L`. The value 1 makes
    /// the normalized trajectories average to the master equation.
    pub mean_drift_scale: f64,
}

impl Default for DiffusiveOptions {
    fn default() -> Self {
        DiffusiveOptions {
            alpha_guard: Some(20.0),
            left_channel: true,
            mean_drift_scale: 1.0,
        }
    }
}

/// Shared propagators of the diffusive engines.
///
/// Without a left click one step maps `psi -> P (1 + c L) P psi` with
/// `P = exp(K dt/2)` to fourth order, `K = -i(H_d + H_qq) - L^+L/2 - J_L^+J_L/2`,
/// `L = -i e^{-i theta} sqrt(2 pi) g c^-` and `c = <L + L^+> dt + dxi`.
/// Since `c` is a scalar the step is `(A0 + c A1) psi` with
/// `A0 = P P` and `A1 = P L P`.
#[derive(Clone, Debug)]
pub(crate) struct DiffusiveKernel {
    pub dt: f64,
    pub a0: CMat4,
    pub a1: CMat4,
    pub l: CMat4,
    pub l_quadrature: CMat4,
    pub j_left: CMat4,
    pub left_rate: CMat4,
    pub left_channel: bool,
    pub mean_drift_scale: f64,
}

impl DiffusiveKernel {
    pub fn new(ops: &ModelOperators, dt: f64, options: &DiffusiveOptions) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Precondition(format!(
                "dt must be positive, got {dt}"
            )));
        }
        if let Some(min_alpha) = options.alpha_guard {
            if ops.params.alpha_mag < min_alpha {
                return Err(Error::Guard(format!(
                    "diffusive limit needs |alpha| >= {min_alpha}, got {}",
                    ops.params.alpha_mag
                )));
            }
        }
        let max_dt = dt_max(ops);
        if dt > max_dt * (1.0 + 1e-12) {
            return Err(Error::StepTooLarge {
                dt,
                max_dt,
                bound: "dt_max = min(0.01/(2 g |alpha|), 0.01/Gamma)",
            });
        }
        let l = ops.diffusion_op();
        let j_left = ops.j_left;
        let left_rate = j_left.adjoint() * j_left;
        let mut k = (ops.h_drive + ops.h_qq).scale(-I) - (l.adjoint() * l).scale_re(0.5);
        if options.left_channel {
            k = k - left_rate.scale_re(0.5);
        }
        let p = taylor4(&k.scale_re(0.5 * dt));
        Ok(DiffusiveKernel {
            dt,
            a0: p * p,
            a1: p * l * p,
            l,
            l_quadrature: l + l.adjoint(),
            j_left,
            left_rate,
            left_channel: options.left_channel,
            mean_drift_scale: options.mean_drift_scale,
        })
    }

    /// `A0 + c A1`
    #[inline]
    pub fn propagator(&self, c: f64) -> CMat4 {
        let mut m = self.a0;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += self.a1.0[i][j] * c;
            }
        }
        m
    }
}

/// Hybrid SSE: diffusive right channel, jumps on the left channel.
#[derive(Clone, Debug)]
pub struct DiffusiveSse {
    kernel: DiffusiveKernel,
}

impl DiffusiveSse {
    /// Fails with [`Error::Guard`] below the `|alpha|` threshold and with
    /// [`Error::StepTooLarge`] when `dt` does not resolve the Rabi frequency.
    pub fn new(ops: &ModelOperators, dt: f64, options: DiffusiveOptions) -> Result<Self> {
        Ok(DiffusiveSse {
            kernel: DiffusiveKernel::new(ops, dt, &options)?,
        })
    }

    /// The measurement operator `L`.
    pub fn measurement_op(&self) -> &CMat4 {
        &self.kernel.l
    }

    /// Deterministic part of one step (no click, `dxi = 0`), normalized.
    pub fn drift_step(&self, psi: &PureState) -> Result<PureState> {
        let k = &self.kernel;
        let mu = k.mean_drift_scale * expect_re(&k.l_quadrature, psi.ket());
        normalized_pure(k.propagator(mu * k.dt).apply(psi.ket()))
    }
}

impl Unraveling for DiffusiveSse {
    type State = PureState;

    fn kind(&self) -> EngineKind {
        EngineKind::Diffusive
    }

    fn dt(&self) -> f64 {
        self.kernel.dt
    }

    fn step<R: Rng + ?Sized>(&self, psi: &mut PureState, rng: &mut R) -> Result<StepOutcome> {
        let k = &self.kernel;
        let v = psi.ket();
        let p_left = if k.left_channel {
            k.dt * expect_re(&k.left_rate, v)
        } else {
            0.0
        };
        let u = rng::uniform(rng);
        let dxi = rng::wiener(rng, k.dt);
        if u < p_left {
            *psi = normalized_pure(k.j_left.apply(v))?;
            return Ok(StepOutcome {
                jumps: [true, false],
                dxi,
            });
        }
        let mu = k.mean_drift_scale * expect_re(&k.l_quadrature, v);
        let m = k.propagator(mu * k.dt + dxi);
        *psi = normalized_pure(m.apply(v))?;
        Ok(StepOutcome {
            jumps: [false, false],
            dxi,
        })
    }
}
