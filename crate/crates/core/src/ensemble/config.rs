// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! `key = value` run configuration.
//!
//! ```text
//! # heralded windows at the default drive
//! engine = diffusive
//! alpha = 100
//! kl = 0.5pi
//! ```
//!
//! Keys are case-insensitive. Unknown or repeated keys are errors.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::trajectories::DEFAULT_STRIDE;

/// Environment variable that overrides `workers`.
pub const WORKERS_ENV: &str = "BELLHERALD_WORKERS";

pub const KEYS: [&str; 15] = [
    "engine",
    "g",
    "alpha",
    "theta",
    "kl",
    "eta_l",
    "eta_r",
    "t_end",
    "dt",
    "sample_stride",
    "n_traj",
    "seed",
    "out",
    "workers",
    "emit_svg",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Jump,
    Diffusive,
    Sme,
    Me,
    Steady,
    G2,
    Check,
}

impl Engine {
    pub fn parse(s: &str) -> Option<Engine> {
        Some(match s.to_ascii_lowercase().as_str() {
            "jump" => Engine::Jump,
            "diffusive" => Engine::Diffusive,
            "sme" => Engine::Sme,
            "me" => Engine::Me,
            "steady" => Engine::Steady,
            "g2" => Engine::G2,
            "check" => Engine::Check,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Jump => "jump",
            Engine::Diffusive => "diffusive",
            Engine::Sme => "sme",
            Engine::Me => "me",
            Engine::Steady => "steady",
            Engine::G2 => "g2",
            Engine::Check => "check",
        }
    }

    /// True for the stochastic unravelings.
    pub fn is_unraveling(self) -> bool {
        matches!(self, Engine::Jump | Engine::Diffusive | Engine::Sme)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub engine: Engine,
    pub params: ModelParams,
    pub t_end: f64,
    pub dt: f64,
    pub sample_stride: usize,
    pub n_traj: u64,
    pub seed: u64,
    pub out: PathBuf,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub emit_svg: bool,
}

impl RunConfig {
    /// Defaults for every key except `engine`.
    pub fn with_engine(engine: Engine) -> Self {
        RunConfig {
            engine,
            params: ModelParams::default(),
            t_end: 20.0,
            dt: 5e-5,
            sample_stride: DEFAULT_STRIDE,
            n_traj: 100,
            seed: 1,
            out: PathBuf::from("out"),
            workers: None,
            emit_svg: false,
        }
    }

    /// Sets one key. `line` is only used in error messages.
    pub fn set(&mut self, key: &str, value: &str, line: Option<usize>) -> Result<()> {
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim();
        let err = |message: String| Error::Config {
            line,
            key: key.clone(),
            message,
        };
        let real = || -> Result<f64> {
            value
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(format!("expected a number, got {value:?}")))
        };
        match key.as_str() {
            "engine" => {
                if value.is_empty() {
                    return Err(err("missing value".into()));
                }
                self.engine = Engine::parse(value).ok_or_else(|| {
                    err(format!(
                        "unknown engine {value:?} (jump|diffusive|sme|me|steady|g2|check)"
                    ))
                })?;
            }
            "g" => {
                let g = real()?;
                if g <= 0.0 {
                    return Err(err(format!("must be positive, got {g}")));
                }
                self.params.g = g;
            }
            "alpha" => {
                let a = real()?;
                if a < 0.0 {
                    return Err(err(format!("must be non-negative, got {a}")));
                }
                self.params.alpha_mag = a;
            }
            "theta" => self.params.theta = real()?,
            "kl" => {
                self.params.kl = parse_phase(value)
                    .ok_or_else(|| err(format!("expected radians or <x>pi, got {value:?}")))?
            }
            "eta_l" | "eta_r" => {
                let eta = real()?;
                if !(0.0..=1.0).contains(&eta) {
                    return Err(err(format!("must lie in [0, 1], got {eta}")));
                }
                if key == "eta_l" {
                    self.params.eta_l = eta;
                } else {
                    self.params.eta_r = eta;
                }
            }
            "t_end" | "dt" => {
                let x = real()?;
                if x <= 0.0 {
                    return Err(err(format!("must be positive, got {x}")));
                }
                if key == "t_end" {
                    self.t_end = x;
                } else {
                    self.dt = x;
                }
            }
            "sample_stride" => self.sample_stride = positive(value).map_err(err)? as usize,
            "n_traj" => self.n_traj = positive(value).map_err(err)?,
            "workers" => self.workers = Some(positive(value).map_err(err)? as usize),
            "seed" => {
                self.seed = value.parse::<u64>().map_err(|_| {
                    err(format!(
                        "expected an unsigned 64-bit integer, got {value:?}"
                    ))
                })?
            }
            "out" => {
                if value.is_empty() {
                    return Err(err("missing value".into()));
                }
                self.out = PathBuf::from(value);
            }
            "emit_svg" => {
                self.emit_svg = match value.to_ascii_lowercase().as_str() {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    _ => return Err(err(format!("expected true or false, got {value:?}"))),
                }
            }
            _ => return Err(err("unknown key".into())),
        }
        Ok(())
    }

    /// Worker count after the environment override.
    pub fn resolved_workers(&self) -> Result<usize> {
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            return positive(&v)
                .map(|n| n as usize)
                .map_err(|message| Error::Config {
                    line: None,
                    key: WORKERS_ENV.into(),
                    message,
                });
        }
        Ok(self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
    }
}

fn positive(value: &str) -> std::result::Result<u64, String> {
    match value.trim().parse::<u64>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {value:?}")),
    }
}

/// Radians, or `<x>pi` / `pi`.
pub fn parse_phase(value: &str) -> Option<f64> {
    let v = value.trim().to_ascii_lowercase();
    let x = match v.strip_suffix("pi") {
        Some(head) => {
            let head = head.trim().trim_end_matches('*').trim();
            let factor = match head {
                "" | "+" => 1.0,
                "-" => -1.0,
                h => h.parse::<f64>().ok()?,
            };
            factor * PI
        }
        None => v.parse::<f64>().ok()?,
    };
    x.is_finite().then_some(x)
}

/// Parses configuration text. `engine` is required.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::with_engine(Engine::Diffusive);
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
            line: Some(line_no),
            key: line.to_string(),
            message: "expected key = value".into(),
        })?;
        let key = key.trim().to_ascii_lowercase();
        if !seen.insert(key.clone()) && KEYS.contains(&key.as_str()) {
            return Err(Error::Config {
                line: Some(line_no),
                key,
                message: "repeated key".into(),
            });
        }
        cfg.set(&key, value, Some(line_no))?;
    }
    if !seen.contains("engine") {
        return Err(Error::Config {
            line: None,
            key: "engine".into(),
            message: "missing required key".into(),
        });
    }
    Ok(cfg)
}
