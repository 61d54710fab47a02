// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Reproducible per-trajectory random streams.
//!
//! Trajectory `i` of a run with master seed `s` draws from the ChaCha8
//! stream `i` keyed by `s`, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type TrajectoryRng = ChaCha8Rng;

pub fn stream(master_seed: u64, index: u64) -> TrajectoryRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Uniform draw on `[0, 1)`.
#[inline]
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen::<f64>()
}

/// Wiener increment with variance `dt`.
#[inline]
pub fn wiener<R: Rng + ?Sized>(rng: &mut R, dt: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    z * dt.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = (0..8).map(|_| uniform(&mut stream(7, 3))).collect();
        let mut r = stream(7, 3);
        let b: Vec<f64> = (0..8).map(|_| uniform(&mut r)).collect();
        assert_eq!(a[0], b[0]);
        let mut r2 = stream(7, 3);
        let c: Vec<f64> = (0..8).map(|_| uniform(&mut r2)).collect();
        assert_eq!(b, c);
        let mut r3 = stream(7, 4);
        assert_ne!(uniform(&mut r3), b[0]);
        let mut r4 = stream(8, 3);
        assert_ne!(uniform(&mut r4), b[0]);
    }

    #[test]
    fn wiener_moments() {
        let mut r = stream(1, 0);
        let n = 200_000;
        let dt = 1e-3;
        let xs: Vec<f64> = (0..n).map(|_| wiener(&mut r, dt)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| x * x).sum::<f64>() / n as f64;
        let sigma = (dt / n as f64).sqrt();
        assert!(mean.abs() < 5.0 * sigma);
        assert!((var / dt - 1.0).abs() < 0.02);
    }
}
