// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Heralded Bell-state generation for two driven qubits in a waveguide.
//!
//! Two qubits separated by a phase `kL` couple to a one-dimensional waveguide
//! and are driven from the right with amplitude `alpha`. Photons reflected to
//! the left herald transitions into and out of the Bell state
//! `|+i> = (|ge> + i|eg>)/sqrt 2`.
//!
//! Modules:
//! - [`qcore`]: fixed-size complex linear algebra.
//! - [`model`]: parameters, rates and operators.
//! - [`lindblad`]: master equation, steady state, `g2`.
//! - [`trajectories`]: jump, diffusive and mixed-state unravelings.
//! - [`entangle`]: entropy, concurrence, entanglement of formation.
//! - [`ensemble`]: configuration, parallel ensembles, statistics, CSV.
//!
//! Units: `hbar = 1`, and the default `g = 1/sqrt(4 pi)` gives `Gamma = 1`.

pub mod ensemble;
pub mod entangle;
pub mod error;
pub mod lindblad;
pub mod model;
pub mod qcore;
pub mod rng;
pub mod state;
pub mod trajectories;

pub use entangle::{BellState, EntanglementSample};
pub use error::{Error, Result};
pub use lindblad::{G2Curve, Liouvillian};
pub use model::{DerivedRates, ModelOperators, ModelParams};
pub use state::{DensityOp, PureState, QuantumState};
