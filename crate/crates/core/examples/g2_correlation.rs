// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Second-order correlation of the reflected light.

use bellherald::{lindblad, ModelOperators, ModelParams};

fn main() -> bellherald::Result<()> {
    let ops = ModelOperators::new(ModelParams::default())?;
    let taus: Vec<f64> = (0..=100).map(|k| k as f64 * 0.005).collect();
    let curve = lindblad::g2_left(&ops, &taus)?;
    println!(
        "Rabi frequency 2 g |alpha| = {:.3}",
        ops.params.rabi_frequency()
    );
    for (tau, g2) in curve.tau_grid.iter().zip(&curve.values).step_by(5) {
        let bar = "#".repeat((g2 * 20.0).round() as usize);
        println!("{tau:5.3}  {g2:.4}  {bar}");
    }
    Ok(())
}
