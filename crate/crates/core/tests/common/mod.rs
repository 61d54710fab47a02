// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared generators for the integration tests.

#![allow(dead_code)]

use bellherald::qcore::{CMat, CMat4, CVec4, C64};
use bellherald::state::{DensityOp, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_c64<R: Rng>(r: &mut R) -> C64 {
    C64::new(r.sample(StandardNormal), r.sample(StandardNormal))
}

pub fn random_matrix<const N: usize, R: Rng>(r: &mut R) -> CMat<N> {
    let mut m = CMat::<N>::zeros();
    for i in 0..N {
        for j in 0..N {
            m.0[i][j] = gaussian_c64(r);
        }
    }
    m
}

pub fn random_hermitian<const N: usize, R: Rng>(r: &mut R) -> CMat<N> {
    random_matrix::<N, R>(r).hermitian_part()
}

pub fn random_ket<R: Rng>(r: &mut R) -> CVec4 {
    let mut v = CVec4::zeros();
    for k in 0..4 {
        v.0[k] = gaussian_c64(r);
    }
    v.normalized().unwrap()
}

pub fn random_pure<R: Rng>(r: &mut R) -> PureState {
    PureState::new(random_ket(r)).unwrap()
}

/// Ginibre density matrix `G G^+ / tr`.
pub fn random_density<R: Rng>(r: &mut R) -> DensityOp {
    let g: CMat4 = random_matrix(r);
    let m = g.mul_adj(&g);
    let tr = m.trace().re;
    DensityOp::new(m.scale_re(1.0 / tr).hermitian_part()).unwrap()
}

/// Haar-ish random 2x2 unitary from a QR-free parametrization.
pub fn random_unitary2<R: Rng>(r: &mut R) -> CMat<2> {
    let a = gaussian_c64(r);
    let b = gaussian_c64(r);
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = C64::from_polar(1.0, r.gen_range(0.0..std::f64::consts::TAU));
    CMat::<2>([[a, -b.conj() * phase], [b, a.conj() * phase]])
}

pub fn max_diff(a: &CMat4, b: &CMat4) -> f64 {
    (*a - *b).max_abs()
}
