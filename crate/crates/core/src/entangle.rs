// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Entanglement quantifiers and Bell-basis utilities.
//!
//! Entropies are in bits. Complex conjugation in the concurrence is taken in
//! the computational basis `{|ee>, |eg>, |ge>, |gg>}`, where the spin flip
//! `sigma_y (x) sigma_y` is the real anti-diagonal matrix `(-1, 1, 1, -1)`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::qcore::{eig_general4, eig_hermitian, partial_trace_unchecked, CMat4, CVec4, C64};
use crate::state::{DensityOp, PureState, QuantumState, EE, EG, GE, GG};

/// Named maximally entangled states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellState {
    /// `(|gg> + |ee>)/sqrt 2`
    PhiPlus,
    /// `(|gg> - |ee>)/sqrt 2`
    PhiMinus,
    /// `(|ge> + |eg>)/sqrt 2`
    PsiPlus,
    /// `(|ge> - |eg>)/sqrt 2`
    PsiMinus,
    /// `(|ge> + i|eg>)/sqrt 2`
    PlusI,
    /// `(|ge> - i|eg>)/sqrt 2`
    MinusI,
    /// `(|eg> + |ge>)/sqrt 2`
    Symmetric,
    /// `(|eg> - |ge>)/sqrt 2`
    Antisymmetric,
}

impl BellState {
    pub const ALL: [BellState; 8] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
        BellState::PlusI,
        BellState::MinusI,
        BellState::Symmetric,
        BellState::Antisymmetric,
    ];

    pub fn ket(self) -> CVec4 {
        let s = FRAC_1_SQRT_2;
        let (a, ia, b, ib) = match self {
            BellState::PhiPlus => (GG, C64::new(s, 0.0), EE, C64::new(s, 0.0)),
            BellState::PhiMinus => (GG, C64::new(s, 0.0), EE, C64::new(-s, 0.0)),
            BellState::PsiPlus => (GE, C64::new(s, 0.0), EG, C64::new(s, 0.0)),
            BellState::PsiMinus => (GE, C64::new(s, 0.0), EG, C64::new(-s, 0.0)),
            BellState::PlusI => (GE, C64::new(s, 0.0), EG, C64::new(0.0, s)),
            BellState::MinusI => (GE, C64::new(s, 0.0), EG, C64::new(0.0, -s)),
            BellState::Symmetric => (EG, C64::new(s, 0.0), GE, C64::new(s, 0.0)),
            BellState::Antisymmetric => (EG, C64::new(s, 0.0), GE, C64::new(-s, 0.0)),
        };
        let mut v = CVec4::zeros();
        v[a] = ia;
        v[b] = ib;
        v
    }

    pub fn state(self) -> PureState {
        PureState::from_normalized(self.ket())
    }
}

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

/// Von Neumann entropy of either qubit's reduced state, in bits.
pub fn entropy(psi: &PureState) -> f64 {
    let reduced = partial_trace_unchecked(&psi.ket().projector(), 1);
    match eig_hermitian(&reduced.hermitian_part()) {
        Ok([lo, hi]) => {
            let total = lo + hi;
            // Only the smaller eigenvalue carries precision near pure reductions.
            let p = (lo / total).clamp(0.0, 0.5);
            binary_entropy(p)
        }
        Err(_) => f64::NAN,
    }
}

fn spin_flip() -> CMat4 {
    let mut m = CMat4::zeros();
    m.0[0][3] = C64::new(-1.0, 0.0);
    m.0[1][2] = C64::new(1.0, 0.0);
    m.0[2][1] = C64::new(1.0, 0.0);
    m.0[3][0] = C64::new(-1.0, 0.0);
    m
}

/// Eigenvalue real parts at or above this are clamped to zero.
pub const NEGATIVE_EIGEN_CLAMP: f64 = 1e-10;
/// Real parts below this mean the input was not a density operator.
pub const NEGATIVE_EIGEN_REJECT: f64 = 1e-6;

/// Wootters concurrence.
pub fn concurrence(rho: &DensityOp) -> Result<f64> {
    let m = rho.mat();
    let flip = spin_flip();
    let tilde = flip * m.conj() * flip;
    let eig = eig_general4(&(*m * tilde))?;
    let mut lambdas = [0.0; 4];
    for (k, z) in eig.iter().enumerate() {
        let re = z.re;
        if re < -NEGATIVE_EIGEN_REJECT {
            return Err(Error::Precondition(format!(
                "concurrence: rho * rho_tilde has eigenvalue {z}, input is not positive"
            )));
        }
        // Near-defective zero eigenvalues can leave tiny negative parts.
        lambdas[k] = if re < NEGATIVE_EIGEN_CLAMP {
            re.max(0.0)
        } else {
            re
        }
        .sqrt();
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}

/// Entanglement of formation as a function of concurrence, in bits.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0)
}

/// Entanglement of formation in bits.
pub fn eof(rho: &DensityOp) -> Result<f64> {
    concurrence(rho).map(eof_from_concurrence)
}

/// Populations of `{|ee>, |+i>, |-i>, |gg>}`.
pub fn populations<S: QuantumState + ?Sized>(state: &S) -> [f64; 4] {
    [
        state.overlap(&CVec4::basis(EE)),
        state.overlap(&BellState::PlusI.ket()),
        state.overlap(&BellState::MinusI.ket()),
        state.overlap(&CVec4::basis(GG)),
    ]
}

pub fn bell_fidelity<S: QuantumState + ?Sized>(state: &S, target: BellState) -> f64 {
    state.overlap(&target.ket())
}

/// Entanglement of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementSample {
    /// Entropy of entanglement (pure states), bits.
    pub entropy: f64,
    pub concurrence: f64,
    /// Entanglement of formation, bits.
    pub formation: f64,
}

impl EntanglementSample {
    pub fn of_pure(psi: &PureState) -> Result<Self> {
        let s = entropy(psi);
        let c = concurrence(&psi.density())?;
        Ok(EntanglementSample {
            entropy: s,
            concurrence: c,
            formation: eof_from_concurrence(c),
        })
    }

    /// For mixed states `entropy` is set to the entanglement of formation.
    pub fn of_mixed(rho: &DensityOp) -> Result<Self> {
        let c = concurrence(rho)?;
        let f = eof_from_concurrence(c);
        Ok(EntanglementSample {
            entropy: f,
            concurrence: c,
            formation: f,
        })
    }
}

/// Average trajectory entropy `sum_i p_i S_i` of an explicit pure-state ensemble.
pub fn ensemble_entropy(ensemble: &[(f64, PureState)]) -> f64 {
    ensemble.iter().map(|(p, psi)| p * entropy(psi)).sum()
}

/// `sum_i p_i |psi_i><psi_i|`
pub fn ensemble_density(ensemble: &[(f64, PureState)]) -> CMat4 {
    ensemble.iter().fold(CMat4::zeros(), |acc, (p, psi)| {
        acc + psi.ket().projector().scale_re(*p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bell_states_are_orthonormal_in_groups() {
        for b in BellState::ALL {
            assert!((b.ket().norm() - 1.0).abs() < 1e-15);
        }
        let group = [
            BellState::PhiPlus,
            BellState::PhiMinus,
            BellState::PsiPlus,
            BellState::PsiMinus,
        ];
        for (i, a) in group.iter().enumerate() {
            for (j, b) in group.iter().enumerate() {
                let ov = a.ket().inner(&b.ket()).norm();
                assert!((ov - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
        assert!(
            BellState::PlusI
                .ket()
                .inner(&BellState::MinusI.ket())
                .norm()
                < 1e-15
        );
        assert!(
            BellState::Symmetric
                .ket()
                .inner(&BellState::Antisymmetric.ket())
                .norm()
                < 1e-15
        );
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy(&BellState::PlusI.state()) - 1.0).abs() < 1e-12);
        assert!(entropy(&PureState::gg()).abs() < 1e-12);
        let (c, s) = ((PI / 8.0).cos(), (PI / 8.0).sin());
        let mut v = CVec4::zeros();
        v[GE] = C64::new(c, 0.0);
        v[EG] = C64::new(s, 0.0);
        let psi = PureState::new(v).unwrap();
        // h(cos^2(pi/8)) to 15 digits.
        assert!((entropy(&psi) - 0.600_876_036_692_856).abs() < 1e-12);
    }

    #[test]
    fn concurrence_examples() {
        assert!(concurrence(&DensityOp::maximally_mixed()).unwrap() < 1e-12);
        assert!((concurrence(&BellState::PlusI.state().density()).unwrap() - 1.0).abs() < 1e-12);
        let psi_minus = BellState::PsiMinus.ket().projector();
        let p = 0.5;
        let werner = psi_minus.scale_re(p) + CMat4::identity().scale_re((1.0 - p) / 4.0);
        let c = concurrence(&DensityOp::new(werner).unwrap()).unwrap();
        assert!((c - 0.25).abs() < 1e-12);
    }

    #[test]
    fn eof_examples() {
        assert!((eof_from_concurrence(1.0) - 1.0).abs() < 1e-15);
        assert_eq!(eof_from_concurrence(0.0), 0.0);
        // h((1 + sqrt(0.75))/2) to 20 digits.
        assert!((eof_from_concurrence(0.5) - 0.354_578_902_665_269_9).abs() < 1e-12);
    }

    #[test]
    fn population_examples() {
        let p = populations(&BellState::PlusI.state());
        assert!((p[1] - 1.0).abs() < 1e-15 && p[0] == 0.0 && p[2].abs() < 1e-15 && p[3] == 0.0);
        let p = populations(&DensityOp::maximally_mixed());
        for x in p {
            assert!((x - 0.25).abs() < 1e-15);
        }
        let p = populations(&BellState::PsiPlus.state());
        assert!((p[1] - 0.5).abs() < 1e-15 && (p[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        assert!((bell_fidelity(&BellState::PlusI.state(), BellState::PlusI) - 1.0).abs() < 1e-15);
        assert_eq!(bell_fidelity(&PureState::gg(), BellState::PlusI), 0.0);
        for b in BellState::ALL {
            assert!((bell_fidelity(&DensityOp::maximally_mixed(), b) - 0.25).abs() < 1e-15);
        }
    }
}
