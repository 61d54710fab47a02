// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use super::config::{Engine, RunConfig};
use crate::entangle;
use crate::error::{Error, Result};
use crate::model::ModelOperators;
use crate::qcore::{CMat4, C64};
use crate::rng;
use crate::state::PureState;
use crate::trajectories::{
    self, Channel, DiffusiveOptions, DiffusiveSse, HeraldAnalysis, HeraldRule, HeraldTracker,
    JumpSse, Observer, RunOptions, Sme, TrajectoryRecord, TrajectoryState, Unraveling,
};

/// Trajectories per work unit. Fixed so results do not depend on the
/// number of workers.
pub const CHUNK: u64 = 8;

/// Trajectories whose full records are kept for CSV output.
pub const KEPT_RECORDS: u64 = 4;

/// Per-sample quantities: 16 density parameters, 4 populations, entanglement.
const NQ: usize = 21;

/// The 16 real parameters of a Hermitian matrix: `Re rho_ab` for `a <= b`
/// and `Im rho_ab` for `a > b`, at index `4a + b`.
pub fn density_params(m: &CMat4) -> [f64; 16] {
    std::array::from_fn(|k| {
        let (a, b) = (k / 4, k % 4);
        if a <= b {
            m.0[a][b].re
        } else {
            m.0[a][b].im
        }
    })
}

/// Inverse of [`density_params`].
pub fn density_from_params(p: &[f64; 16]) -> CMat4 {
    let mut m = CMat4::zeros();
    for a in 0..4 {
        for b in a..4 {
            let im = if a == b { 0.0 } else { p[4 * b + a] };
            m.0[a][b] = C64::new(p[4 * a + b], -im);
            m.0[b][a] = C64::new(p[4 * a + b], im);
        }
    }
    m
}

/// Ensemble averages with standard errors on the sample grid.
#[derive(Clone, Debug)]
pub struct EnsembleStats {
    pub engine: Engine,
    pub n_traj: u64,
    pub t_end: f64,
    pub times: Vec<f64>,
    pub mean_density: Vec<CMat4>,
    /// Standard errors of [`density_params`] of the mean.
    pub se_density: Vec<[f64; 16]>,
    pub mean_populations: Vec<[f64; 4]>,
    pub se_populations: Vec<[f64; 4]>,
    /// Entropy for pure-state engines, entanglement of formation for the SME.
    pub mean_entanglement: Vec<f64>,
    pub se_entanglement: Vec<f64>,
    /// Left clicks per sample interval, summed over trajectories.
    pub left_jump_histogram: Vec<u64>,
    pub heralds: HeraldAnalysis,
}

impl EnsembleStats {
    pub fn mean_window_duration(&self) -> Option<f64> {
        self.heralds.mean_duration(self.t_end)
    }

    pub fn mean_params(&self, k: usize) -> [f64; 16] {
        density_params(&self.mean_density[k])
    }
}

#[derive(Clone, Debug)]
pub struct EnsembleOutput {
    pub stats: EnsembleStats,
    /// Full records of the first trajectories.
    pub records: Vec<TrajectoryRecord>,
}

#[derive(Clone, Debug, Default)]
struct Summary {
    times: Vec<f64>,
    values: Vec<[f64; NQ]>,
    left_clicks: Vec<u32>,
    heralds: HeraldAnalysis,
}

fn sample_values<S: TrajectoryState>(state: &S, entanglement: f64) -> [f64; NQ] {
    let mut v = [0.0; NQ];
    v[..16].copy_from_slice(&density_params(&state.density_mat()));
    v[16..20].copy_from_slice(&entangle::populations(state));
    v[20] = entanglement;
    v
}

struct SummaryObserver {
    summary: Summary,
    tracker: HeraldTracker,
}

impl<S: TrajectoryState> Observer<S> for SummaryObserver {
    fn on_sample(&mut self, t: f64, state: &S, clicks: [u32; 2], _dxi: f64) -> Result<()> {
        self.summary.times.push(t);
        self.summary
            .values
            .push(sample_values(state, state.entanglement()?));
        self.summary.left_clicks.push(clicks[0]);
        Ok(())
    }

    fn on_jump(&mut self, t: f64, channel: Channel, _pre: &S, post: &S) -> Result<()> {
        if channel == Channel::Left {
            self.tracker
                .click(t, &entangle::populations(post), post.entanglement()?);
        }
        Ok(())
    }
}

fn summary_from_record(rec: &TrajectoryRecord, rule: HeraldRule) -> Summary {
    let values = rec
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let mut v = [0.0; NQ];
            v[..16].copy_from_slice(&density_params(&rec.states.density(k)));
            v[16..20].copy_from_slice(&row.populations);
            v[20] = row.entanglement;
            v
        })
        .collect();
    Summary {
        times: rec.t_grid.clone(),
        values,
        left_clicks: rec.rows.iter().map(|r| r.jump_left).collect(),
        heralds: trajectories::analyze_heralds(&rec.jump_events, rule),
    }
}

#[derive(Clone, Debug, Default)]
struct Accum {
    n: u64,
    times: Vec<f64>,
    sum: Vec<[f64; NQ]>,
    sumsq: Vec<[f64; NQ]>,
    hist: Vec<u64>,
    heralds: HeraldAnalysis,
}

impl Accum {
    fn add(&mut self, s: Summary) -> Result<()> {
        if self.n == 0 {
            self.times = s.times.clone();
            self.sum = vec![[0.0; NQ]; s.values.len()];
            self.sumsq = vec![[0.0; NQ]; s.values.len()];
            self.hist = vec![0; s.values.len()];
        } else if self.times != s.times {
            return Err(Error::Precondition(
                "trajectories disagree on the sample grid".into(),
            ));
        }
        for (k, v) in s.values.iter().enumerate() {
            for q in 0..NQ {
                self.sum[k][q] += v[q];
                self.sumsq[k][q] += v[q] * v[q];
            }
            self.hist[k] += s.left_clicks[k] as u64;
        }
        self.heralds.merge(s.heralds);
        self.n += 1;
        Ok(())
    }

    fn merge(&mut self, other: Accum) -> Result<()> {
        if other.n == 0 {
            return Ok(());
        }
        if self.n == 0 {
            *self = other;
            return Ok(());
        }
        if self.times != other.times {
            return Err(Error::Precondition(
                "chunks disagree on the sample grid".into(),
            ));
        }
        for k in 0..self.sum.len() {
            for q in 0..NQ {
                self.sum[k][q] += other.sum[k][q];
                self.sumsq[k][q] += other.sumsq[k][q];
            }
            self.hist[k] += other.hist[k];
        }
        self.heralds.merge(other.heralds);
        self.n += other.n;
        Ok(())
    }

    fn finish(self, engine: Engine, t_end: f64) -> EnsembleStats {
        let n = self.n as f64;
        let mut out = EnsembleStats {
            engine,
            n_traj: self.n,
            t_end,
            times: self.times,
            mean_density: Vec::new(),
            se_density: Vec::new(),
            mean_populations: Vec::new(),
            se_populations: Vec::new(),
            mean_entanglement: Vec::new(),
            se_entanglement: Vec::new(),
            left_jump_histogram: self.hist,
            heralds: self.heralds,
        };
        for (s, s2) in self.sum.iter().zip(&self.sumsq) {
            let mean: [f64; NQ] = std::array::from_fn(|q| s[q] / n);
            let se: [f64; NQ] = std::array::from_fn(|q| {
                if self.n < 2 {
                    return 0.0;
                }
                let var = ((s2[q] - n * mean[q] * mean[q]) / (n - 1.0)).max(0.0);
                (var / n).sqrt()
            });
            let p: [f64; 16] = std::array::from_fn(|q| mean[q]);
            out.mean_density.push(density_from_params(&p));
            out.se_density.push(std::array::from_fn(|q| se[q]));
            out.mean_populations
                .push(std::array::from_fn(|q| mean[16 + q]));
            out.se_populations.push(std::array::from_fn(|q| se[16 + q]));
            out.mean_entanglement.push(mean[20]);
            out.se_entanglement.push(se[20]);
        }
        out
    }
}

/// Click classification used for an engine and detector setting.
pub fn herald_rule(engine: Engine, eta_l: f64) -> HeraldRule {
    if engine == Engine::Sme && eta_l < 1.0 {
        HeraldRule::PostState
    } else {
        HeraldRule::Parity
    }
}

fn run_chunks<U>(
    engine: &U,
    state0: U::State,
    cfg: &RunConfig,
    rule: HeraldRule,
) -> Result<EnsembleOutput>
where
    U: Unraveling + Sync,
    U::State: Send + Sync,
{
    let n_chunks = cfg.n_traj.div_ceil(CHUNK);
    let run_chunk = |c: u64| -> Result<(Accum, Vec<TrajectoryRecord>)> {
        let mut acc = Accum::default();
        let mut kept = Vec::new();
        for i in c * CHUNK..((c + 1) * CHUNK).min(cfg.n_traj) {
            let summary = if i < KEPT_RECORDS {
                let options = RunOptions {
                    stride: cfg.sample_stride,
                    stream: i,
                    record_noise: true,
                };
                let rec = trajectories::run_trajectory(
                    engine,
                    state0.clone(),
                    cfg.t_end,
                    cfg.seed,
                    &options,
                )?;
                let s = summary_from_record(&rec, rule);
                kept.push(rec);
                s
            } else {
                let mut obs = SummaryObserver {
                    summary: Summary::default(),
                    tracker: HeraldTracker::new(rule),
                };
                let mut rng = rng::stream(cfg.seed, i);
                trajectories::simulate(
                    engine,
                    state0.clone(),
                    cfg.t_end,
                    cfg.sample_stride,
                    &mut rng,
                    &mut obs,
                )
                .map_err(|e| Error::Trajectory {
                    index: i,
                    source: Box::new(e),
                })?;
                obs.summary.heralds = obs.tracker.finish();
                obs.summary
            };
            acc.add(summary)?;
        }
        Ok((acc, kept))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.resolved_workers()?)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let chunks: Vec<Result<(Accum, Vec<TrajectoryRecord>)>> =
        pool.install(|| (0..n_chunks).into_par_iter().map(run_chunk).collect());
    let mut total = Accum::default();
    let mut records = Vec::new();
    for chunk in chunks {
        let (acc, kept) = chunk?;
        total.merge(acc)?;
        records.extend(kept);
    }
    Ok(EnsembleOutput {
        stats: total.finish(cfg.engine, cfg.t_end),
        records,
    })
}

/// Runs `n_traj` trajectories of the configured engine from `|gg>`.
/// Trajectory `i` uses random stream `i` of `seed`.
pub fn run_ensemble(cfg: &RunConfig) -> Result<EnsembleOutput> {
    run_ensemble_with(cfg, DiffusiveOptions::default())
}

/// [`run_ensemble`] with explicit diffusive-engine options.
pub fn run_ensemble_with(cfg: &RunConfig, options: DiffusiveOptions) -> Result<EnsembleOutput> {
    let ops = ModelOperators::new(cfg.params)?;
    let rule = herald_rule(cfg.engine, cfg.params.eta_l);
    match cfg.engine {
        Engine::Jump => run_chunks(&JumpSse::new(&ops, cfg.dt)?, PureState::gg(), cfg, rule),
        Engine::Diffusive => run_chunks(
            &DiffusiveSse::new(&ops, cfg.dt, options)?,
            PureState::gg(),
            cfg,
            rule,
        ),
        Engine::Sme => {
            let engine = Sme::new(&ops, cfg.dt, cfg.params.eta_l, cfg.params.eta_r, options)?;
            run_chunks(&engine, PureState::gg().density(), cfg, rule)
        }
        other => Err(Error::Config {
            line: None,
            key: "engine".into(),
            message: format!("{} is not a trajectory engine", other.name()),
        }),
    }
}
