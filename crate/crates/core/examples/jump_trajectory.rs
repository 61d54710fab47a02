// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! One quantum-jump trajectory with both output channels counted.

use bellherald::state::PureState;
use bellherald::trajectories::{self, Channel, JumpSse, RunOptions};
use bellherald::{ModelOperators, ModelParams};

fn main() -> bellherald::Result<()> {
    let ops = ModelOperators::new(ModelParams::default().with_alpha(5.0))?;
    let engine = JumpSse::new(&ops, 5e-5)?;
    let options = RunOptions {
        stride: 2000,
        ..RunOptions::default()
    };
    let rec = trajectories::run_trajectory(&engine, PureState::gg(), 10.0, 7, &options)?;
    println!(
        "{} left and {} right clicks",
        rec.count(Channel::Left),
        rec.count(Channel::Right)
    );
    for e in rec.left_jumps().take(10) {
        let p = e.post_populations;
        println!(
            "left click at t = {:.4}: P_+i = {:.4}, P_gg = {:.4}",
            e.time, p[1], p[3]
        );
    }
    Ok(())
}
