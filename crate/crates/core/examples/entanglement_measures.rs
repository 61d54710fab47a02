// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Entropy, concurrence and entanglement of formation, including two
//! unravelings of the maximally mixed state with different mean entropy.

use bellherald::entangle::{self, BellState};
use bellherald::qcore::CMat4;
use bellherald::state::{DensityOp, PureState, EE, GG};

fn main() -> bellherald::Result<()> {
    for p in [0.2, 0.5, 0.8, 1.0] {
        let m = BellState::PsiMinus.ket().projector().scale_re(p)
            + CMat4::identity().scale_re((1.0 - p) / 4.0);
        let rho = DensityOp::new(m)?;
        println!(
            "Werner p = {p}: C = {:.4}, E_F = {:.4}",
            entangle::concurrence(&rho)?,
            entangle::eof(&rho)?
        );
    }
    let bell: Vec<(f64, PureState)> = BellState::ALL
        .iter()
        .take(4)
        .map(|b| (0.25, b.state()))
        .collect();
    let ladder: Vec<(f64, PureState)> = [
        PureState::basis(EE),
        BellState::PlusI.state(),
        BellState::MinusI.state(),
        PureState::basis(GG),
    ]
    .into_iter()
    .map(|s| (0.25, s))
    .collect();
    println!(
        "Bell-basis unraveling of 1/4: mean entropy {}",
        entangle::ensemble_entropy(&bell)
    );
    println!(
        "ladder unraveling of 1/4: mean entropy {}",
        entangle::ensemble_entropy(&ladder)
    );
    Ok(())
}
