// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Ensemble means against the master equation, per sample time.

use bellherald::ensemble::{self, Engine, RunConfig};
use bellherald::ModelParams;

fn main() -> bellherald::Result<()> {
    for (engine, alpha) in [
        (Engine::Jump, 5.0),
        (Engine::Diffusive, 100.0),
        (Engine::Sme, 100.0),
    ] {
        let mut cfg = RunConfig::with_engine(engine);
        cfg.params = ModelParams::default()
            .with_alpha(alpha)
            .with_efficiencies(0.5, 0.5);
        cfg.t_end = 1.0;
        cfg.sample_stride = 4000;
        cfg.n_traj = 200;
        let rep = ensemble::consistency_check(&cfg)?;
        println!("{} engine: passed {}", engine.name(), rep.passed);
        for (t, abs, se) in &rep.per_time {
            println!("  t {t:.1}: max deviation {abs:.2e} ({se:.2} SE)");
        }
    }
    Ok(())
}
