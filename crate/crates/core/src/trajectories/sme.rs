// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::diffusive::{DiffusiveKernel, DiffusiveOptions};
use super::{trace_product_re, EngineKind, StepOutcome, Unraveling};
use crate::error::{Error, Result};
use crate::model::ModelOperators;
use crate::qcore::{CMat4, C64, ONE, ZERO};
use crate::rng;
use crate::state::{normalize_density, DensityOp};

type Super = [[C64; 16]; 16];

/// Stochastic master equation for finite detector efficiencies.
///
/// Undetected emission feeds `F(rho) = (1 - eta_l) J_L rho J_L^+ +
/// (1 - eta_r) L rho L^+` back into the state. A step is
/// `rho -> G(M G(rho) M^+)` normalized, with `G = exp(F dt/2)` to fourth
/// order and `M = P (1 + (eta_r <L + L^+> dt + sqrt(eta_r) dxi) L) P` as in
/// the diffusive engine. Every factor is completely positive, so `rho`
/// stays positive. Left clicks happen with probability
/// `eta_l dt Tr[J_L^+ J_L rho]`.
#[derive(Clone, Debug)]
pub struct Sme {
    kernel: DiffusiveKernel,
    feed: Option<Box<Super>>,
    eta_l: f64,
    eta_r: f64,
}

impl Sme {
    pub fn new(
        ops: &ModelOperators,
        dt: f64,
        eta_l: f64,
        eta_r: f64,
        options: DiffusiveOptions,
    ) -> Result<Self> {
        for (name, eta) in [("eta_l", eta_l), ("eta_r", eta_r)] {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::Precondition(format!(
                    "{name} must lie in [0, 1], got {eta}"
                )));
            }
        }
        let kernel = DiffusiveKernel::new(ops, dt, &options)?;
        let left_loss = if options.left_channel {
            1.0 - eta_l
        } else {
            0.0
        };
        let right_loss = 1.0 - eta_r;
        let feed = if left_loss > 0.0 || right_loss > 0.0 {
            let ops_list = [(kernel.j_left, left_loss), (kernel.l, right_loss)];
            Some(Box::new(half_step_feed(&ops_list, 0.5 * dt)))
        } else {
            None
        };
        Ok(Sme {
            kernel,
            feed,
            eta_l,
            eta_r,
        })
    }

    pub fn efficiencies(&self) -> (f64, f64) {
        (self.eta_l, self.eta_r)
    }
}

/// Superoperator of `X -> sum_k w_k A_k X A_k^+`, row-major vectorization.
fn feed_superoperator(ops: &[(CMat4, f64)]) -> Super {
    let mut s = [[ZERO; 16]; 16];
    for a in 0..4 {
        for b in 0..4 {
            let mut e = CMat4::zeros();
            e.0[a][b] = ONE;
            let mut image = CMat4::zeros();
            for (op, w) in ops {
                if *w != 0.0 {
                    image += op.sandwich(&e).scale_re(*w);
                }
            }
            for i in 0..4 {
                for j in 0..4 {
                    s[4 * i + j][4 * a + b] = image.0[i][j];
                }
            }
        }
    }
    s
}

fn super_mul(a: &Super, b: &Super) -> Super {
    let mut c = [[ZERO; 16]; 16];
    for i in 0..16 {
        for k in 0..16 {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..16 {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// `sum_{n <= 4} (h F)^n / n!`
fn half_step_feed(ops: &[(CMat4, f64)], h: f64) -> Super {
    let f = feed_superoperator(ops);
    let mut hf = f;
    for row in hf.iter_mut() {
        for x in row.iter_mut() {
            *x *= h;
        }
    }
    let mut out = [[ZERO; 16]; 16];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = ONE;
    }
    let mut term = out;
    for n in 1..=4 {
        term = super_mul(&term, &hf);
        let inv = 1.0 / n as f64;
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x *= inv;
            }
        }
        for i in 0..16 {
            for j in 0..16 {
                out[i][j] += term[i][j];
            }
        }
    }
    out
}

fn apply_super(s: &Super, m: &CMat4) -> CMat4 {
    let flat: [C64; 16] = std::array::from_fn(|k| m.0[k / 4][k % 4]);
    let mut out = CMat4::zeros();
    for (k, row) in s.iter().enumerate() {
        let mut acc = ZERO;
        for (x, y) in row.iter().zip(flat.iter()) {
            acc += x * y;
        }
        out.0[k / 4][k % 4] = acc;
    }
    out
}

impl Unraveling for Sme {
    type State = DensityOp;

    fn kind(&self) -> EngineKind {
        EngineKind::Sme
    }

    fn dt(&self) -> f64 {
        self.kernel.dt
    }

    fn step<R: Rng + ?Sized>(&self, rho: &mut DensityOp, rng: &mut R) -> Result<StepOutcome> {
        let k = &self.kernel;
        let m = *rho.mat();
        let p_left = if k.left_channel {
            self.eta_l * k.dt * trace_product_re(&k.left_rate, &m)
        } else {
            0.0
        };
        let u = rng::uniform(rng);
        let dxi = rng::wiener(rng, k.dt);
        if u < p_left {
            *rho = DensityOp::new_unchecked(normalize_density(&k.j_left.sandwich(&m))?);
            return Ok(StepOutcome {
                jumps: [true, false],
                dxi,
            });
        }
        let mu = k.mean_drift_scale * trace_product_re(&k.l_quadrature, &m);
        let c = self.eta_r * mu * k.dt + self.eta_r.sqrt() * dxi;
        let prop = k.propagator(c);
        let next = match &self.feed {
            Some(g) => apply_super(g, &prop.sandwich(&apply_super(g, &m))),
            None => prop.sandwich(&m),
        };
        *rho = DensityOp::new_unchecked(normalize_density(&next)?);
        Ok(StepOutcome {
            jumps: [false, false],
            dxi,
        })
    }
}
