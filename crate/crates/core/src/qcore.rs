// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra at fixed dimensions 2 and 4.
//!
//! Everything lives on the stack. The two-qubit basis ordering is fixed
//! globally as `{|ee>, |eg>, |ge>, |gg>}`: qubit 1 is the left tensor factor
//! and each single-qubit factor is ordered `{e, g}`.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Maximum Hessenberg-QR iterations for [`eig_general4`].
pub const QR_MAX_ITERATIONS: usize = 200;
/// Relative subdiagonal size below which the QR iteration deflates.
pub const QR_DEFLATION_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Complex column vector of fixed length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CVec<const N: usize>(pub [C64; N]);

/// Complex square matrix of fixed size, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type CVec4 = CVec<4>;
pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

impl<const N: usize> Default for CVec<N> {
    fn default() -> Self {
        CVec([ZERO; N])
    }
}

impl<const N: usize> CVec<N> {
    pub fn zeros() -> Self {
        Self::default()
    }

    pub fn basis(k: usize) -> Self {
        let mut v = Self::zeros();
        v.0[k] = ONE;
        v
    }

    pub fn from_real(re: [f64; N]) -> Self {
        let mut v = Self::zeros();
        for k in 0..N {
            v.0[k] = C64::new(re[k], 0.0);
        }
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        out.0.iter_mut().for_each(|z| *z *= s);
        out
    }

    /// Returns the normalized vector, or `None` for a (numerically) zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self.scale(C64::new(1.0 / n, 0.0)))
        } else {
            None
        }
    }

    /// `|self><self|`
    pub fn projector(&self) -> CMat<N> {
        self.outer(self)
    }

    /// `|self><other|`
    pub fn outer(&self, other: &Self) -> CMat<N> {
        let mut m = CMat::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[i] * other.0[j].conj();
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<const N: usize> Index<usize> for CVec<N> {
    type Output = C64;
    fn index(&self, k: usize) -> &C64 {
        &self.0[k]
    }
}

impl<const N: usize> IndexMut<usize> for CVec<N> {
    fn index_mut(&mut self, k: usize) -> &mut C64 {
        &mut self.0[k]
    }
}

impl<const N: usize> Add for CVec<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for k in 0..N {
            self.0[k] += rhs.0[k];
        }
        self
    }
}

impl<const N: usize> Sub for CVec<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for k in 0..N {
            self.0[k] -= rhs.0[k];
        }
        self
    }
}

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        CMat([[ZERO; N]; N])
    }
}

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn diag_real(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = C64::new(d[k], 0.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    /// Elementwise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn apply(&self, v: &CVec<N>) -> CVec<N> {
        let mut out = CVec::zeros();
        for i in 0..N {
            let mut acc = ZERO;
            for j in 0..N {
                acc += self.0[i][j] * v.0[j];
            }
            out.0[i] = acc;
        }
        out
    }

    /// `self * other^dagger` without forming the adjoint.
    pub fn mul_adj(&self, other: &Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut acc = ZERO;
                for k in 0..N {
                    acc += self.0[i][k] * other.0[j][k].conj();
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    /// `self * rho * self^dagger`
    pub fn sandwich(&self, rho: &Self) -> Self {
        (*self * *rho).mul_adj(self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |self - self^dagger|` elementwise.
    pub fn hermiticity_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for i in 0..N {
            for j in i..N {
                err = err.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        err
    }

    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale_re(0.5)
    }

    /// `<u| self |v>`
    pub fn matrix_element(&self, u: &CVec<N>, v: &CVec<N>) -> C64 {
        u.inner(&self.apply(v))
    }

    pub fn expectation(&self, v: &CVec<N>) -> C64 {
        self.matrix_element(v, v)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl CMat2 {
    /// Kronecker product `a ⊗ b` in the global two-qubit ordering.
    pub fn kron(&self, b: &CMat2) -> CMat4 {
        let mut m = CMat4::zeros();
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        m.0[2 * i1 + i2][2 * j1 + j2] = self.0[i1][j1] * b.0[i2][j2];
                    }
                }
            }
        }
        m
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign for CMat<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<CVec<N>> for CMat<N> {
    type Output = CVec<N>;
    fn mul(self, rhs: CVec<N>) -> CVec<N> {
        self.apply(&rhs)
    }
}

/// Reduced state of one qubit. `keep` is 1 or 2.
pub fn partial_trace(rho: &CMat4, keep: usize) -> Result<CMat2> {
    let herm = rho.hermiticity_error();
    if herm > 1e-10 {
        return Err(Error::Precondition(format!(
            "partial_trace: input not Hermitian (deviation {herm:e})"
        )));
    }
    let tr = rho.trace();
    if (tr - ONE).norm() > 1e-10 {
        return Err(Error::Precondition(format!(
            "partial_trace: trace {tr} is not 1"
        )));
    }
    Ok(partial_trace_unchecked(rho, keep))
}

pub(crate) fn partial_trace_unchecked(rho: &CMat4, keep: usize) -> CMat2 {
    let mut out = CMat2::zeros();
    for a in 0..2 {
        for b in 0..2 {
            out.0[a][b] = match keep {
                1 => rho.0[2 * a][2 * b] + rho.0[2 * a + 1][2 * b + 1],
                _ => rho.0[a][b] + rho.0[2 + a][2 + b],
            };
        }
    }
    out
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen<const N: usize> {
    /// Ascending.
    pub values: [f64; N],
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMat<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn vector(&self, k: usize) -> CVec<N> {
        let mut v = CVec::zeros();
        for i in 0..N {
            v.0[i] = self.vectors.0[i][k];
        }
        v
    }

    /// `V diag(values) V^dagger`
    pub fn reconstruct(&self) -> CMat<N> {
        let mut d = CMat::zeros();
        for k in 0..N {
            d.0[k][k] = C64::new(self.values[k], 0.0);
        }
        (self.vectors * d).mul_adj(&self.vectors)
    }
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn eig_hermitian<const N: usize>(mat: &CMat<N>) -> Result<[f64; N]> {
    eigh(mat).map(|e| e.values)
}

/// Cyclic complex Jacobi diagonalization.
pub fn eigh<const N: usize>(mat: &CMat<N>) -> Result<HermitianEigen<N>> {
    let herm = mat.hermiticity_error();
    if herm > 1e-9 {
        return Err(Error::Precondition(format!(
            "eig_hermitian: input not Hermitian (deviation {herm:e})"
        )));
    }
    let mut a = mat.hermitian_part();
    let mut v = CMat::<N>::identity();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (i + 1..N).map(move |j| (i, j)))
            .map(|(i, j)| a.0[i][j].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-16 * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a.0[p][q];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let theta = (a.0[q][q].re - a.0[p][p].re) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) on (p,q) followed by the real rotation.
                let mut g = CMat::<N>::identity();
                g.0[p][p] = C64::new(c, 0.0);
                g.0[p][q] = C64::new(s, 0.0);
                g.0[q][p] = -phase.conj() * s;
                g.0[q][q] = phase.conj() * c;
                a = g.adjoint() * a * g;
                a.0[p][q] = ZERO;
                a.0[q][p] = ZERO;
                v = v * g;
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&x, &y| a.0[x][x].re.total_cmp(&a.0[y][y].re));
    let values = std::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let mut vectors = CMat::zeros();
    for (col, &src) in order.iter().enumerate() {
        for i in 0..N {
            vectors.0[i][col] = v.0[i][src];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// All four complex eigenvalues of a general 4x4 matrix.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// complex QR with Wilkinson shifts. Order of the returned values follows
/// deflation, not magnitude.
pub fn eig_general4(mat: &CMat4) -> Result<[C64; 4]> {
    if !mat.is_finite() {
        return Err(Error::Precondition(
            "eig_general4: non-finite entries".into(),
        ));
    }
    let mut h = hessenberg(mat);
    let mut eig = [ZERO; 4];
    let mut hi = 3usize;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;

    loop {
        if hi == 0 {
            eig[0] = h.0[0][0];
            break;
        }
        // Locate the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h.0[lo][lo - 1].norm();
            let diag = h.0[lo - 1][lo - 1].norm() + h.0[lo][lo].norm();
            let floor = if diag == 0.0 { f64::MIN_POSITIVE } else { diag };
            if sub <= QR_DEFLATION_TOL * floor {
                h.0[lo][lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h.0[hi][hi];
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        iterations += 1;
        since_deflation += 1;
        if iterations > QR_MAX_ITERATIONS {
            return Err(Error::NoConvergence {
                what: "eig_general4 shifted QR",
                iterations: QR_MAX_ITERATIONS,
            });
        }

        let shift = if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h.0[hi][hi] + C64::new(0.75 * h.0[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(
                h.0[hi - 1][hi - 1],
                h.0[hi - 1][hi],
                h.0[hi][hi - 1],
                h.0[hi][hi],
            )
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    Ok(eig)
}

fn hessenberg(mat: &CMat4) -> CMat4 {
    let mut a = *mat;
    for k in 0..2 {
        let mut x = [ZERO; 4];
        let mut xnorm2 = 0.0;
        for i in k + 1..4 {
            x[i] = a.0[i][k];
            xnorm2 += x[i].norm_sqr();
        }
        let tail: f64 = (k + 2..4).map(|i| x[i].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xnorm = xnorm2.sqrt();
        let x0 = x[k + 1];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[k + 1] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // P = I - 2 v v^dagger / (v^dagger v), Hermitian and unitary.
        let mut p = CMat4::identity();
        for i in 0..4 {
            for j in 0..4 {
                p.0[i][j] -= v[i] * v[j].conj() * (2.0 / vnorm2);
            }
        }
        a = p * a * p;
        for i in k + 2..4 {
            a.0[i][k] = ZERO;
        }
    }
    a
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// One explicit shifted QR step on the block `lo..=hi` using Givens rotations.
fn qr_sweep(h: &mut CMat4, lo: usize, hi: usize, shift: C64) {
    for k in lo..=hi {
        h.0[k][k] -= shift;
    }
    let mut rots = [(ONE, ZERO); 3];
    for k in lo..hi {
        let x = h.0[k][k];
        let y = h.0[k + 1][k];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (ONE, ZERO)
        } else {
            (x / r, y / r)
        };
        rots[k - lo] = (c, s);
        for j in k..=hi {
            let top = h.0[k][j];
            let bot = h.0[k + 1][j];
            h.0[k][j] = c.conj() * top + s.conj() * bot;
            h.0[k + 1][j] = -s * top + c * bot;
        }
    }
    for k in lo..hi {
        let (c, s) = rots[k - lo];
        for i in lo..=(k + 1).min(hi) {
            let left = h.0[i][k];
            let right = h.0[i][k + 1];
            h.0[i][k] = left * c + right * s;
            h.0[i][k + 1] = -left * s.conj() + right * c.conj();
        }
    }
    for k in lo..=hi {
        h.0[k][k] += shift;
    }
}

/// Determinant by cofactor expansion (4x4).
pub fn det4(m: &CMat4) -> C64 {
    let a = &m.0;
    let minor =
        |r0: usize, r1: usize, c0: usize, c1: usize| a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    // Laplace expansion along the first two rows.
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut det = ZERO;
    for &(c0, c1) in &pairs {
        let rest: Vec<usize> = (0..4).filter(|&c| c != c0 && c != c1).collect();
        let sign = if (c0 + c1 + 1) % 2 == 0 { 1.0 } else { -1.0 };
        det += minor(0, 1, c0, c1) * minor(2, 3, rest[0], rest[1]) * sign;
    }
    det
}
