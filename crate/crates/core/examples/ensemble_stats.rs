// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Parallel ensemble with CSV output.

use std::path::PathBuf;

use bellherald::ensemble::{self, output, Engine, RunConfig};

fn main() -> bellherald::Result<()> {
    let mut cfg = RunConfig::with_engine(Engine::Diffusive);
    cfg.n_traj = 64;
    cfg.t_end = 10.0;
    cfg.sample_stride = 2000;
    let out = ensemble::run_ensemble(&cfg)?;
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("bellherald-ensemble"));
    let files = output::write_ensemble(&out, &dir, true)?;
    let st = &out.stats;
    println!(
        "{} trajectories, {} closed windows",
        st.n_traj,
        st.heralds.closed_windows()
    );
    if let Some(d) = st.mean_window_duration() {
        println!("mean window duration {d:.3}");
    }
    let total: u64 = st.left_jump_histogram.iter().sum();
    println!(
        "{total} left clicks, {:.2} per trajectory",
        total as f64 / st.n_traj as f64
    );
    println!("wrote {} files to {}", files.len(), dir.display());
    Ok(())
}
