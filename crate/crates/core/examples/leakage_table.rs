// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Leakage from |+i> into |-i> through the qubit exchange coupling, and
//! its suppression by the drive.

use bellherald::trajectories::hqq::{self, LeakageProbe};
use bellherald::{ModelOperators, ModelParams};

fn main() -> bellherald::Result<()> {
    let params = ModelParams::default();
    let table = hqq::leakage_table(
        &params,
        &[50.0, 100.0, 200.0, 400.0],
        &LeakageProbe::default(),
    )?;
    for (a, l) in table.alphas.iter().zip(&table.leakage) {
        println!("alpha {a:5}: max P_-i over one window {l:.3e}");
    }
    let undriven = ModelOperators::new(params.with_alpha(0.0))?;
    for t in [0.01, 0.1, 0.25] {
        println!(
            "drive off, t = {t}: transferred {:.6}",
            hqq::exchange_transfer(&undriven, t)?
        );
    }
    Ok(())
}
