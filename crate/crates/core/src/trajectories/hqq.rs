// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Leakage from `|+i>` to `|-i>` through the qubit-qubit exchange.
//!
//! Inside a window the exchange rotates `|+i>` into `|-i>` at angular rate
//! `Omega = 2 pi g^2`. The drive moves `|-i>` away quickly, so the leaked
//! population stays of order `(Omega / 2 g |alpha|)^2`.

use std::f64::consts::FRAC_PI_2;

use super::{DiffusiveOptions, DiffusiveSse};
use crate::entangle::BellState;
use crate::error::{Error, Result};
use crate::lindblad::dt_max;
use crate::model::{ModelOperators, ModelParams};
use crate::qcore::{eigh, CMat4, CVec4, C64};
use crate::state::PureState;

/// Maximum `|-i>` population over one window, per drive strength.
#[derive(Clone, Debug, PartialEq)]
pub struct LeakageTable {
    pub alphas: Vec<f64>,
    pub leakage: Vec<f64>,
}

impl LeakageTable {
    pub fn is_non_increasing(&self) -> bool {
        self.leakage.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Settings of [`leakage_table`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeakageProbe {
    /// Window length; the mean window lasts `1/Gamma`.
    pub window: f64,
    /// Upper bound on the step; the Rabi bound may lower it.
    pub dt: f64,
    /// Remove `H_qq` (control run).
    pub without_exchange: bool,
}

impl Default for LeakageProbe {
    fn default() -> Self {
        LeakageProbe {
            window: 1.0,
            dt: 5e-5,
            without_exchange: false,
        }
    }
}

/// Maximum `|-i>` population along the no-click, zero-noise flow of the
/// diffusive engine started in `|+i>`.
pub fn window_leakage(ops: &ModelOperators, probe: &LeakageProbe) -> Result<f64> {
    let ops = if probe.without_exchange {
        ops.without_exchange()
    } else {
        ops.clone()
    };
    let dt = probe.dt.min(dt_max(&ops));
    let engine = DiffusiveSse::new(&ops, dt, DiffusiveOptions::default())?;
    let n = (probe.window / ops.rates.gamma / dt).round() as usize;
    let minus = BellState::MinusI.ket();
    let mut psi = BellState::PlusI.state();
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        psi = engine.drift_step(&psi)?;
        worst = worst.max(psi.fidelity(&minus));
    }
    Ok(worst)
}

/// Window leakage for each `|alpha|` in `alphas` at `kL = pi/2`.
pub fn leakage_table(
    params: &ModelParams,
    alphas: &[f64],
    probe: &LeakageProbe,
) -> Result<LeakageTable> {
    if (params.kl - FRAC_PI_2).abs() > 1e-12 {
        return Err(Error::Precondition("leakage table needs kL = pi/2".into()));
    }
    if alphas.windows(2).any(|w| w[1] <= w[0]) || alphas.iter().any(|a| *a < 20.0) {
        return Err(Error::Precondition(
            "alphas must increase and be >= 20".into(),
        ));
    }
    let leakage = alphas
        .iter()
        .map(|&a| window_leakage(&ModelOperators::new(params.with_alpha(a))?, probe))
        .collect::<Result<Vec<_>>>()?;
    Ok(LeakageTable {
        alphas: alphas.to_vec(),
        leakage,
    })
}

/// `exp(-i H t) v` for Hermitian `H`, by eigendecomposition.
pub fn evolve_hermitian(h: &CMat4, v: &CVec4, t: f64) -> Result<CVec4> {
    let eig = eigh(h)?;
    let mut out = CVec4::zeros();
    for k in 0..4 {
        let u = eig.vector(k);
        let amp = u.inner(v) * C64::from_polar(1.0, -eig.values[k] * t);
        out = out + u.scale(amp);
    }
    Ok(out)
}

/// `|<-i| exp(-i H_qq t) |+i>|^2`
pub fn exchange_transfer(ops: &ModelOperators, t: f64) -> Result<f64> {
    let out = evolve_hermitian(&ops.h_qq, &BellState::PlusI.ket(), t)?;
    Ok(PureState::from_normalized(out).fidelity(&BellState::MinusI.ket()))
}
