// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Master-equation evolution from |gg> at the default parameters.

use bellherald::state::PureState;
use bellherald::{entangle, lindblad, ModelOperators, ModelParams};

fn main() -> bellherald::Result<()> {
    let ops = ModelOperators::new(ModelParams::default())?;
    let dt = 5e-5;
    let sol = lindblad::integrate_me(&ops, &PureState::gg().density(), 5.0, dt, 10_000)?;
    println!("    t   P_ee    P_+i    P_-i    P_gg    E_F");
    for (t, rho) in sol.times.iter().zip(&sol.states) {
        let p = entangle::populations(rho);
        println!(
            "{t:5.2}  {:.4}  {:.4}  {:.4}  {:.4}  {:.4}",
            p[0],
            p[1],
            p[2],
            p[3],
            entangle::eof(rho)?
        );
    }
    Ok(())
}
