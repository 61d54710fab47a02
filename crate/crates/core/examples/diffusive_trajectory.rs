// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Strong-drive trajectory: homodyne noise on the right channel, clicks on
//! the left. Odd clicks herald |+i> and even clicks end the window.

use bellherald::state::PureState;
use bellherald::trajectories::{self, DiffusiveOptions, DiffusiveSse, HeraldRule, RunOptions};
use bellherald::{ModelOperators, ModelParams};

fn main() -> bellherald::Result<()> {
    let ops = ModelOperators::new(ModelParams::default())?;
    let engine = DiffusiveSse::new(&ops, 5e-5, DiffusiveOptions::default())?;
    let options = RunOptions {
        stride: 200,
        ..RunOptions::default()
    };
    let rec = trajectories::run_trajectory(&engine, PureState::gg(), 20.0, 1, &options)?;
    let heralds = trajectories::analyze_heralds(&rec.jump_events, HeraldRule::Parity);
    for w in &heralds.windows {
        match w.death {
            Some(d) => println!("window {:.3} .. {d:.3} ({:.3})", w.birth, d - w.birth),
            None => println!("window {:.3} .. open at t_end", w.birth),
        }
    }
    for e in heralds.births() {
        println!(
            "birth at {:.3}: fidelity {:.5}, entropy {:.5}",
            e.time, e.fidelity_plus_i, e.entanglement
        );
    }
    println!(
        "noise mean {:.2e} (expected spread {:.2e})",
        rec.noise.mean(),
        rec.noise.sigma_of_mean()
    );
    Ok(())
}
