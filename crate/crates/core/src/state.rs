// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit pure and mixed states in the `{|ee>, |eg>, |ge>, |gg>}` basis.

use crate::error::{Error, Result};
use crate::qcore::{eig_hermitian, CMat4, CVec4, C64, ONE};

/// Basis index of `|ee>`.
pub const EE: usize = 0;
/// Basis index of `|eg>` (qubit 1 excited).
pub const EG: usize = 1;
/// Basis index of `|ge>` (qubit 2 excited).
pub const GE: usize = 2;
/// Basis index of `|gg>`.
pub const GG: usize = 3;

/// A normalized two-qubit state vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState(CVec4);

impl PureState {
    /// Normalizes `v`. Fails for zero or non-finite vectors.
    pub fn new(v: CVec4) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Precondition(
                "state vector has non-finite entries".into(),
            ));
        }
        v.normalized()
            .map(PureState)
            .ok_or_else(|| Error::Precondition("state vector has zero norm".into()))
    }

    /// Wraps an already normalized vector without checking it.
    pub(crate) fn from_normalized(v: CVec4) -> Self {
        PureState(v)
    }

    pub fn basis(k: usize) -> Self {
        PureState(CVec4::basis(k))
    }

    pub fn ee() -> Self {
        Self::basis(EE)
    }

    pub fn gg() -> Self {
        Self::basis(GG)
    }

    pub fn ket(&self) -> &CVec4 {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn density(&self) -> DensityOp {
        DensityOp(self.0.projector())
    }

    /// `|<other|self>|^2`
    pub fn fidelity(&self, other: &CVec4) -> f64 {
        other.inner(&self.0).norm_sqr()
    }
}

/// Two-qubit density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityOp(CMat4);

pub const DENSITY_HERMITIAN_TOL: f64 = 1e-9;
pub const DENSITY_TRACE_TOL: f64 = 1e-9;
pub const DENSITY_EIGEN_TOL: f64 = 1e-8;

impl DensityOp {
    pub fn new(mat: CMat4) -> Result<Self> {
        check_density(&mat)?;
        Ok(DensityOp(mat))
    }

    pub(crate) fn new_unchecked(mat: CMat4) -> Self {
        DensityOp(mat)
    }

    pub fn maximally_mixed() -> Self {
        DensityOp(CMat4::identity().scale_re(0.25))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        psi.density()
    }

    pub fn mat(&self) -> &CMat4 {
        &self.0
    }

    pub fn into_mat(self) -> CMat4 {
        self.0
    }

    /// `<v| rho |v>`
    pub fn fidelity(&self, v: &CVec4) -> f64 {
        self.0.matrix_element(v, v).re
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(eig_hermitian(&self.0)?[0])
    }
}

fn check_density(mat: &CMat4) -> Result<()> {
    let herm = mat.hermiticity_error();
    if herm > DENSITY_HERMITIAN_TOL {
        return Err(Error::Precondition(format!(
            "density operator not Hermitian (deviation {herm:e})"
        )));
    }
    let tr = mat.trace();
    if (tr - ONE).norm() > DENSITY_TRACE_TOL {
        return Err(Error::Precondition(format!(
            "density operator trace {tr} differs from 1"
        )));
    }
    let lo = eig_hermitian(&mat.hermitian_part())?[0];
    if lo < -DENSITY_EIGEN_TOL {
        return Err(Error::Precondition(format!(
            "density operator has negative eigenvalue {lo:e}"
        )));
    }
    Ok(())
}

/// Anything that can be read as a two-qubit state.
pub trait QuantumState {
    /// `<v|state|v>` for a normalized `v`.
    fn overlap(&self, v: &CVec4) -> f64;
    fn to_density(&self) -> DensityOp;
}

impl QuantumState for PureState {
    fn overlap(&self, v: &CVec4) -> f64 {
        self.fidelity(v)
    }

    fn to_density(&self) -> DensityOp {
        self.density()
    }
}

impl QuantumState for DensityOp {
    fn overlap(&self, v: &CVec4) -> f64 {
        self.fidelity(v)
    }

    fn to_density(&self) -> DensityOp {
        *self
    }
}

/// Renormalizes a positive matrix to unit trace and symmetrizes it.
pub(crate) fn normalize_density(mat: &CMat4) -> Result<CMat4> {
    let tr = mat.trace().re;
    if !(tr > 1e-14) || !tr.is_finite() {
        return Err(Error::TraceCollapse { trace: tr });
    }
    Ok(mat.hermitian_part().scale(C64::new(1.0 / tr, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ZERO;

    #[test]
    fn pure_state_normalizes() {
        let v = CVec4::from_real([3.0, 0.0, 4.0, 0.0]);
        let psi = PureState::new(v).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        assert!(PureState::new(CVec4::zeros()).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(DensityOp::new(CMat4::identity().scale_re(0.25)).is_ok());
        assert!(DensityOp::new(CMat4::identity()).is_err());
        let mut m = CMat4::diag_real([1.1, -0.1, 0.0, 0.0]);
        assert!(DensityOp::new(m).is_err());
        m = CMat4::diag_real([0.5, 0.5, 0.0, 0.0]);
        m.0[0][1] = C64::new(0.0, 0.1);
        assert!(DensityOp::new(m).is_err());
        m.0[1][0] = C64::new(0.0, -0.1);
        assert!(DensityOp::new(m).is_ok());
        m.0[0][0] = ONE;
        m.0[1][1] = ZERO;
        assert!(DensityOp::new(m).is_err());
    }

    #[test]
    fn trace_collapse_is_reported() {
        let m = CMat4::diag_real([1e-16, 0.0, 0.0, 0.0]);
        assert!(matches!(
            normalize_density(&m),
            Err(Error::TraceCollapse { .. })
        ));
    }
}
