// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Mixed-state trajectories with imperfect detectors.

use bellherald::state::PureState;
use bellherald::trajectories::{self, Channel, DiffusiveOptions, RunOptions, Sme};
use bellherald::{ModelOperators, ModelParams};

fn main() -> bellherald::Result<()> {
    let ops = ModelOperators::new(ModelParams::default())?;
    for (eta_l, eta_r) in [(1.0, 1.0), (1.0, 0.0), (0.95, 0.95), (0.5, 0.5)] {
        let engine = Sme::new(&ops, 5e-5, eta_l, eta_r, DiffusiveOptions::default())?;
        let options = RunOptions {
            stride: 1000,
            ..RunOptions::default()
        };
        let rec =
            trajectories::run_trajectory(&engine, PureState::gg().density(), 5.0, 2, &options)?;
        let peak = rec.rows.iter().map(|r| r.entanglement).fold(0.0, f64::max);
        println!(
            "eta_L {eta_l:4}, eta_R {eta_r:4}: {} detected left clicks, peak E_F {peak:.4}",
            rec.count(Channel::Left)
        );
    }
    Ok(())
}
