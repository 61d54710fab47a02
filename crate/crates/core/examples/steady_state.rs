// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady state against drive strength: it approaches the maximally mixed
//! state and carries no entanglement.

use bellherald::state::DensityOp;
use bellherald::{entangle, lindblad, ModelOperators, ModelParams};

fn main() -> bellherald::Result<()> {
    println!("alpha  max|rho - 1/4|  populations                         concurrence");
    for alpha in [25.0, 50.0, 100.0, 200.0] {
        let ops = ModelOperators::new(ModelParams::default().with_alpha(alpha))?;
        let rho = lindblad::steady_state(&ops)?;
        let dev = (*rho.mat() - *DensityOp::maximally_mixed().mat()).max_abs();
        let p = entangle::populations(&rho);
        println!(
            "{alpha:5}  {dev:.3e}       [{:.4}, {:.4}, {:.4}, {:.4}]  {:.1e}",
            p[0],
            p[1],
            p[2],
            p[3],
            entangle::concurrence(&rho)?
        );
    }
    Ok(())
}
