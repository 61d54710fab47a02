// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Stochastic unravelings of the master equation.
//!
//! Three engines share one driver loop:
//! - [`JumpSse`]: quantum jumps on both channels, with the full right jump
//!   operator. Exact but slow at strong drive.
//! - [`DiffusiveSse`]: strong-drive limit. Right-channel clicks become a
//!   Wiener increment, left clicks stay jumps.
//! - [`Sme`]: the diffusive engine for mixed states with detector
//!   efficiencies `eta_l`, `eta_r`.
//!
//! Every step draws a uniform number for the left channel first, then a
//! second number (uniform for the right channel of the jump engine, a
//! Gaussian increment otherwise), whether or not a jump happens. Engines
//! driven by the same stream therefore stay aligned draw for draw.

mod diffusive;
mod herald;
pub mod hqq;
mod jump;
mod sme;

pub use diffusive::{DiffusiveOptions, DiffusiveSse};
pub use herald::{analyze_heralds, HeraldAnalysis, HeraldEvent, HeraldRule, HeraldTracker, Window};
pub use jump::JumpSse;
pub use sme::Sme;

use rand::Rng;

use crate::entangle::{self, BellState};
use crate::error::{Error, Result};
use crate::lindblad::step_count;
use crate::model::ModelOperators;
use crate::qcore::{CMat4, CVec4, C64};
use crate::rng::{self, TrajectoryRng};
use crate::state::{DensityOp, PureState, QuantumState};

/// Default number of steps between recorded samples.
pub const DEFAULT_STRIDE: usize = 200;

/// Detector channel of a photon click.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    /// Reflected light.
    Left,
    /// Transmitted light.
    Right,
}

impl Channel {
    pub fn index(self) -> usize {
        match self {
            Channel::Left => 0,
            Channel::Right => 1,
        }
    }
}

/// One photon click.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpEvent {
    /// End of the step in which the click happened.
    pub time: f64,
    pub channel: Channel,
    /// `<+i|rho|+i>` before the click.
    pub pre_state_fidelity_plus_i: f64,
    /// Populations of `{|ee>, |+i>, |-i>, |gg>}` after the click.
    pub post_populations: [f64; 4],
    /// Entropy (pure) or entanglement of formation (mixed) after the click.
    pub post_entanglement: f64,
}

/// Wiener increments of the right-channel current.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NoiseRecord {
    pub dt: f64,
    pub increments: Vec<f64>,
}

impl NoiseRecord {
    pub fn mean(&self) -> f64 {
        if self.increments.is_empty() {
            return 0.0;
        }
        self.increments.iter().sum::<f64>() / self.increments.len() as f64
    }

    /// Standard deviation of the mean expected for increments of variance `dt`.
    pub fn sigma_of_mean(&self) -> f64 {
        (self.dt / self.increments.len().max(1) as f64).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Jump,
    Diffusive,
    Sme,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Jump => "jump",
            EngineKind::Diffusive => "diffusive",
            EngineKind::Sme => "sme",
        }
    }
}

/// One recorded row of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleRow {
    pub t: f64,
    /// Norm of the state vector, or trace of the density operator.
    pub norm: f64,
    pub populations: [f64; 4],
    pub entanglement: f64,
    /// Left clicks since the previous row.
    pub jump_left: u32,
    /// Right clicks since the previous row.
    pub jump_right: u32,
    /// Sum of Wiener increments since the previous row.
    pub dxi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StateSeries {
    Pure(Vec<PureState>),
    Mixed(Vec<DensityOp>),
}

impl StateSeries {
    pub fn len(&self) -> usize {
        match self {
            StateSeries::Pure(v) => v.len(),
            StateSeries::Mixed(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn density(&self, k: usize) -> CMat4 {
        match self {
            StateSeries::Pure(v) => v[k].ket().projector(),
            StateSeries::Mixed(v) => *v[k].mat(),
        }
    }
}

/// A complete trajectory.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord {
    pub engine: EngineKind,
    pub seed: u64,
    pub stream: u64,
    pub dt: f64,
    pub t_grid: Vec<f64>,
    pub states: StateSeries,
    pub rows: Vec<SampleRow>,
    /// Sorted by time; left before right within a step.
    pub jump_events: Vec<JumpEvent>,
    pub noise: NoiseRecord,
}

impl TrajectoryRecord {
    pub fn left_jumps(&self) -> impl Iterator<Item = &JumpEvent> {
        self.jump_events
            .iter()
            .filter(|e| e.channel == Channel::Left)
    }

    pub fn count(&self, channel: Channel) -> usize {
        self.jump_events
            .iter()
            .filter(|e| e.channel == channel)
            .count()
    }
}

/// Clicks and noise of one step.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepOutcome {
    /// `[left, right]`
    pub jumps: [bool; 2],
    pub dxi: f64,
}

impl StepOutcome {
    pub fn jumped(&self) -> bool {
        self.jumps[0] || self.jumps[1]
    }
}

/// State types the engines evolve.
pub trait TrajectoryState: Clone + QuantumState {
    fn norm_value(&self) -> f64;
    fn entanglement(&self) -> Result<f64>;
    fn density_mat(&self) -> CMat4;
    fn series(states: Vec<Self>) -> StateSeries;
}

impl TrajectoryState for PureState {
    fn norm_value(&self) -> f64 {
        self.norm()
    }

    fn entanglement(&self) -> Result<f64> {
        Ok(entangle::entropy(self))
    }

    fn density_mat(&self) -> CMat4 {
        self.ket().projector()
    }

    fn series(states: Vec<Self>) -> StateSeries {
        StateSeries::Pure(states)
    }
}

impl TrajectoryState for DensityOp {
    fn norm_value(&self) -> f64 {
        self.mat().trace().re
    }

    fn entanglement(&self) -> Result<f64> {
        entangle::eof(self)
    }

    fn density_mat(&self) -> CMat4 {
        *self.mat()
    }

    fn series(states: Vec<Self>) -> StateSeries {
        StateSeries::Mixed(states)
    }
}

/// A single-step stochastic update rule.
pub trait Unraveling {
    type State: TrajectoryState;

    fn kind(&self) -> EngineKind;
    fn dt(&self) -> f64;
    fn step<R: Rng + ?Sized>(&self, state: &mut Self::State, rng: &mut R) -> Result<StepOutcome>;
}

/// Receives samples and clicks from [`simulate`].
pub trait Observer<S> {
    fn on_sample(&mut self, t: f64, state: &S, clicks: [u32; 2], dxi: f64) -> Result<()>;
    fn on_jump(&mut self, t: f64, channel: Channel, pre: &S, post: &S) -> Result<()>;
    fn on_noise(&mut self, _dxi: f64) {}
}

/// Drives `engine` from `state0` for `t_end`, sampling every `stride` steps
/// and at the final step. Returns the final state.
pub fn simulate<U, O>(
    engine: &U,
    state0: U::State,
    t_end: f64,
    stride: usize,
    rng: &mut TrajectoryRng,
    observer: &mut O,
) -> Result<U::State>
where
    U: Unraveling,
    O: Observer<U::State>,
{
    let dt = engine.dt();
    let n = step_count(t_end, dt)?;
    let stride = stride.max(1);
    let mut state = state0;
    observer.on_sample(0.0, &state, [0, 0], 0.0)?;
    let mut clicks = [0u32; 2];
    let mut dxi_sum = 0.0;
    for step in 1..=n {
        let pre = state.clone();
        let out = engine.step(&mut state, rng)?;
        let t = step as f64 * dt;
        if out.jumped() {
            for channel in [Channel::Left, Channel::Right] {
                if out.jumps[channel.index()] {
                    clicks[channel.index()] += 1;
                    observer.on_jump(t, channel, &pre, &state)?;
                }
            }
        }
        dxi_sum += out.dxi;
        observer.on_noise(out.dxi);
        if step % stride == 0 || step == n {
            observer.on_sample(t, &state, clicks, dxi_sum)?;
            clicks = [0, 0];
            dxi_sum = 0.0;
        }
    }
    Ok(state)
}

/// Sampling and recording choices for a single run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub stride: usize,
    /// Random stream index under the seed.
    pub stream: u64,
    pub record_noise: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            stride: DEFAULT_STRIDE,
            stream: 0,
            record_noise: true,
        }
    }
}

struct Recorder<S> {
    t_grid: Vec<f64>,
    states: Vec<S>,
    rows: Vec<SampleRow>,
    events: Vec<JumpEvent>,
    noise: Vec<f64>,
    record_noise: bool,
}

impl<S: TrajectoryState> Observer<S> for Recorder<S> {
    fn on_sample(&mut self, t: f64, state: &S, clicks: [u32; 2], dxi: f64) -> Result<()> {
        self.t_grid.push(t);
        self.rows.push(SampleRow {
            t,
            norm: state.norm_value(),
            populations: entangle::populations(state),
            entanglement: state.entanglement()?,
            jump_left: clicks[0],
            jump_right: clicks[1],
            dxi,
        });
        self.states.push(state.clone());
        Ok(())
    }

    fn on_jump(&mut self, t: f64, channel: Channel, pre: &S, post: &S) -> Result<()> {
        self.events.push(JumpEvent {
            time: t,
            channel,
            pre_state_fidelity_plus_i: entangle::bell_fidelity(pre, BellState::PlusI),
            post_populations: entangle::populations(post),
            post_entanglement: post.entanglement()?,
        });
        Ok(())
    }

    fn on_noise(&mut self, dxi: f64) {
        if self.record_noise {
            self.noise.push(dxi);
        }
    }
}

/// Runs `engine` from `state0` on stream `options.stream` of `seed` and
/// records everything.
pub fn run_trajectory<U: Unraveling>(
    engine: &U,
    state0: U::State,
    t_end: f64,
    seed: u64,
    options: &RunOptions,
) -> Result<TrajectoryRecord> {
    let mut rng = rng::stream(seed, options.stream);
    let mut rec = Recorder {
        t_grid: Vec::new(),
        states: Vec::new(),
        rows: Vec::new(),
        events: Vec::new(),
        noise: Vec::new(),
        record_noise: options.record_noise && engine.kind() != EngineKind::Jump,
    };
    simulate(engine, state0, t_end, options.stride, &mut rng, &mut rec).map_err(|e| {
        Error::Trajectory {
            index: options.stream,
            source: Box::new(e),
        }
    })?;
    Ok(TrajectoryRecord {
        engine: engine.kind(),
        seed,
        stream: options.stream,
        dt: engine.dt(),
        t_grid: rec.t_grid,
        states: U::State::series(rec.states),
        rows: rec.rows,
        jump_events: rec.events,
        noise: NoiseRecord {
            dt: engine.dt(),
            increments: rec.noise,
        },
    })
}

/// One step of the quantum-jump SSE.
pub fn step_jump_sse<R: Rng + ?Sized>(
    ops: &ModelOperators,
    psi: &PureState,
    dt: f64,
    rng: &mut R,
) -> Result<(PureState, StepOutcome)> {
    let engine = JumpSse::new(ops, dt)?;
    let mut out = *psi;
    let o = engine.step(&mut out, rng)?;
    Ok((out, o))
}

pub fn run_jump_sse(
    ops: &ModelOperators,
    psi0: PureState,
    t_end: f64,
    dt: f64,
    seed: u64,
) -> Result<TrajectoryRecord> {
    run_trajectory(
        &JumpSse::new(ops, dt)?,
        psi0,
        t_end,
        seed,
        &RunOptions::default(),
    )
}

/// One step of the diffusive SSE with default guards.
pub fn step_diffusive_sse<R: Rng + ?Sized>(
    ops: &ModelOperators,
    psi: &PureState,
    dt: f64,
    rng: &mut R,
) -> Result<(PureState, StepOutcome)> {
    let engine = DiffusiveSse::new(ops, dt, DiffusiveOptions::default())?;
    let mut out = *psi;
    let o = engine.step(&mut out, rng)?;
    Ok((out, o))
}

pub fn run_diffusive_sse(
    ops: &ModelOperators,
    psi0: PureState,
    t_end: f64,
    dt: f64,
    seed: u64,
) -> Result<TrajectoryRecord> {
    let engine = DiffusiveSse::new(ops, dt, DiffusiveOptions::default())?;
    run_trajectory(&engine, psi0, t_end, seed, &RunOptions::default())
}

/// One step of the stochastic master equation.
pub fn step_sme<R: Rng + ?Sized>(
    ops: &ModelOperators,
    rho: &DensityOp,
    dt: f64,
    rng: &mut R,
    eta_l: f64,
    eta_r: f64,
) -> Result<(DensityOp, StepOutcome)> {
    let engine = Sme::new(ops, dt, eta_l, eta_r, DiffusiveOptions::default())?;
    let mut out = *rho;
    let o = engine.step(&mut out, rng)?;
    Ok((out, o))
}

pub fn run_sme(
    ops: &ModelOperators,
    rho0: DensityOp,
    t_end: f64,
    dt: f64,
    seed: u64,
    eta_l: f64,
    eta_r: f64,
) -> Result<TrajectoryRecord> {
    let engine = Sme::new(ops, dt, eta_l, eta_r, DiffusiveOptions::default())?;
    run_trajectory(&engine, rho0, t_end, seed, &RunOptions::default())
}

/// Applies a left click to a pure state.
pub fn force_left_jump(ops: &ModelOperators, psi: &PureState) -> Result<PureState> {
    PureState::new(ops.j_left.apply(psi.ket()))
}

/// Applies a left click to a mixed state.
pub fn force_left_jump_mixed(ops: &ModelOperators, rho: &DensityOp) -> Result<DensityOp> {
    Ok(DensityOp::new_unchecked(crate::state::normalize_density(
        &ops.j_left.sandwich(rho.mat()),
    )?))
}

/// `I + X + X^2/2 + X^3/6 + X^4/24`
pub(crate) fn taylor4(x: &CMat4) -> CMat4 {
    let id = CMat4::identity();
    let x2 = *x * *x;
    let x3 = x2 * *x;
    let x4 = x3 * *x;
    id + *x + x2.scale_re(0.5) + x3.scale_re(1.0 / 6.0) + x4.scale_re(1.0 / 24.0)
}

/// `<psi|A|psi>` for normalized `psi`, real part.
#[inline]
pub(crate) fn expect_re(a: &CMat4, v: &CVec4) -> f64 {
    a.expectation(v).re
}

/// `Tr[A rho]`, real part.
#[inline]
pub(crate) fn trace_product_re(a: &CMat4, rho: &CMat4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for k in 0..4 {
            acc += (a.0[i][k] * rho.0[k][i]).re;
        }
    }
    acc
}

pub(crate) fn normalized_pure(v: CVec4) -> Result<PureState> {
    let n = v.norm();
    if !(n > 1e-150) || !n.is_finite() {
        return Err(Error::TraceCollapse { trace: n * n });
    }
    Ok(PureState::from_normalized(v.scale(C64::new(1.0 / n, 0.0))))
}

/// True once the state has returned to `|gg>`.
pub(crate) fn is_ground(pops: &[f64; 4]) -> bool {
    pops[3] >= 0.5
}
