// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("time step {dt:e} too large: {bound} requires dt <= {max_dt:e}")]
    StepTooLarge {
        dt: f64,
        max_dt: f64,
        bound: &'static str,
    },

    #[error("validity guard: {0}")]
    Guard(String),

    #[error("trace collapsed to {trace:e} before renormalization")]
    TraceCollapse { trace: f64 },

    #[error("steady state is not unique: Liouvillian null space has dimension {null_dim}")]
    DegenerateSteadyState { null_dim: usize },

    #[error("steady-state reflected photon flux is zero")]
    ZeroFlux,

    #[error("trajectory {index}: {source}")]
    Trajectory {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("config error{}: {key}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        key: String,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of the numerical guards (step size, validity regime,
    /// trace collapse, convergence).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Trajectory { source, .. } => source.is_numerical(),
            Error::Io { .. } | Error::Config { .. } => false,
            _ => true,
        }
    }
}
