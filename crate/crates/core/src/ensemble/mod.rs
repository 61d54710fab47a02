// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Configuration, parallel ensembles, statistics and file output.
//!
//! Ensembles run in fixed chunks of trajectories on a worker pool and are
//! reduced in trajectory order, so every output is byte-identical for a
//! given configuration regardless of the worker count.

mod check;
mod config;
pub mod output;
mod stats;

pub use check::{
    compare, compare_with, consistency_check, consistency_check_with, CheckReport, ABS_FLOOR,
    SE_BOUND,
};
pub use config::{parse_config, parse_phase, Engine, RunConfig, KEYS, WORKERS_ENV};
pub use stats::{
    density_from_params, density_params, herald_rule, run_ensemble, run_ensemble_with,
    EnsembleOutput, EnsembleStats, CHUNK, KEPT_RECORDS,
};
