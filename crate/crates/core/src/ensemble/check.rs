// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

use super::config::{Engine, RunConfig};
use super::stats::{density_params, run_ensemble_with, EnsembleStats};
use crate::error::Result;
use crate::lindblad::{integrate_me, MeSolution};
use crate::model::ModelOperators;
use crate::state::PureState;
use crate::trajectories::DiffusiveOptions;

/// Allowed deviation in standard errors.
pub const SE_BOUND: f64 = 3.0;

/// Absolute slack added to `3 SE`. Components with no sampling spread
/// (for instance every component when no information is recorded) are
/// compared against this alone; it covers the difference between the
/// trajectory integrator and the RK4 master-equation integrator.
pub const ABS_FLOOR: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub engine: Engine,
    pub n_traj: u64,
    pub passed: bool,
    /// Largest `|mean - ME| / SE` over components with `SE > 0`.
    pub max_deviation_se: f64,
    /// Largest `|mean - ME|`.
    pub max_abs_deviation: f64,
    /// Per sample time: `(t, max |mean - ME|, max |mean - ME| / SE)`.
    pub per_time: Vec<(f64, f64, f64)>,
    /// Number of `(time, component)` comparisons.
    pub comparisons: usize,
    /// First failing `(t, component index)`, if any.
    pub first_failure: Option<(f64, usize)>,
}

/// Compares an ensemble with the master equation on the same grid.
pub fn compare(stats: &EnsembleStats, me: &MeSolution) -> CheckReport {
    compare_with(stats, me, SE_BOUND)
}

/// [`compare`] with `se_bound` standard errors allowed instead of 3.
pub fn compare_with(stats: &EnsembleStats, me: &MeSolution, se_bound: f64) -> CheckReport {
    let mut rep = CheckReport {
        engine: stats.engine,
        n_traj: stats.n_traj,
        passed: true,
        max_deviation_se: 0.0,
        max_abs_deviation: 0.0,
        per_time: Vec::new(),
        comparisons: 0,
        first_failure: None,
    };
    if stats.times.len() != me.times.len()
        || stats
            .times
            .iter()
            .zip(&me.times)
            .any(|(a, b)| (a - b).abs() > 1e-9 * a.abs().max(1.0))
    {
        rep.passed = false;
        rep.max_deviation_se = f64::INFINITY;
        return rep;
    }
    for (k, &t) in stats.times.iter().enumerate() {
        let mean = stats.mean_params(k);
        let exact = density_params(me.states[k].mat());
        let se = &stats.se_density[k];
        let mut worst_abs: f64 = 0.0;
        let mut worst_se: f64 = 0.0;
        for q in 0..16 {
            let dev = (mean[q] - exact[q]).abs();
            worst_abs = worst_abs.max(dev);
            if se[q] > 0.0 {
                worst_se = worst_se.max(dev / se[q]);
            }
            rep.comparisons += 1;
            if !(dev <= se_bound * se[q] + ABS_FLOOR) {
                rep.passed = false;
                rep.first_failure.get_or_insert((t, q));
            }
        }
        rep.max_abs_deviation = rep.max_abs_deviation.max(worst_abs);
        rep.max_deviation_se = rep.max_deviation_se.max(worst_se);
        rep.per_time.push((t, worst_abs, worst_se));
    }
    rep
}

/// Runs the configured unraveling from `|gg>` and compares its mean with
/// the master equation at every sample time.
///
/// Configurations whose engine is not an unraveling check the diffusive
/// engine.
pub fn consistency_check(cfg: &RunConfig) -> Result<CheckReport> {
    consistency_check_with(cfg, DiffusiveOptions::default())
}

pub fn consistency_check_with(cfg: &RunConfig, options: DiffusiveOptions) -> Result<CheckReport> {
    let mut cfg = cfg.clone();
    if !cfg.engine.is_unraveling() {
        cfg.engine = Engine::Diffusive;
    }
    let ops = ModelOperators::new(cfg.params)?;
    let me = integrate_me(
        &ops,
        &PureState::gg().density(),
        cfg.t_end,
        cfg.dt,
        cfg.sample_stride,
    )?;
    let out = run_ensemble_with(&cfg, options)?;
    Ok(compare(&out.stats, &me))
}
