// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Reading a key = value configuration.

use bellherald::ensemble::{self, output};

const TEXT: &str = "# strong drive, single detector
engine = sme
alpha = 150
kl = 0.5pi
eta_l = 1
eta_r = 0
t_end = 2
n_traj = 8
";

fn main() -> bellherald::Result<()> {
    let cfg = ensemble::parse_config(TEXT)?;
    println!("{cfg:#?}");
    let out = ensemble::run_ensemble(&cfg)?;
    print!(
        "{}",
        output::stats_csv(&out.stats)
            .lines()
            .take(4)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!();
    Ok(())
}
