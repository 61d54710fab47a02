// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bellherald::ensemble::{self, output, Engine, RunConfig};
use bellherald::lindblad;
use bellherald::state::PureState;
use bellherald::trajectories::{self, DiffusiveOptions, DiffusiveSse, JumpSse, RunOptions, Sme};
use bellherald::{entangle, Error, ModelOperators, Result};

#[derive(Parser)]
#[command(
    name = "bellherald",
    version,
    about = "Heralded Bell states of two driven waveguide qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady state of the master equation.
    Steady(Common),
    /// Master-equation evolution from |gg>.
    Me(Common),
    /// One trajectory of the configured engine.
    Traj(Common),
    /// Trajectory ensemble statistics.
    Ensemble(Common),
    /// Reflected-light g2 correlation.
    G2(Common),
    /// Ensemble mean against the master equation.
    Check(Common),
}

#[derive(Args)]
struct Common {
    /// key = value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one configuration key, e.g. `--set alpha=50`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write SVG line charts.
    #[arg(long)]
    svg: bool,
}

impl Common {
    fn load(&self, default_engine: Engine) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                ensemble::parse_config(&text)?
            }
            None => RunConfig::with_engine(default_engine),
        };
        for item in &self.overrides {
            let (key, value) = item.split_once('=').ok_or_else(|| Error::Config {
                line: None,
                key: item.clone(),
                message: "expected KEY=VALUE".into(),
            })?;
            cfg.set(key, value, None)?;
        }
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg.emit_svg |= self.svg;
        Ok(cfg)
    }
}

enum Outcome {
    Done,
    CheckFailed,
}

fn unraveling(mut cfg: RunConfig) -> RunConfig {
    if !cfg.engine.is_unraveling() {
        cfg.engine = Engine::Diffusive;
    }
    cfg
}

fn steady(cfg: &RunConfig) -> Result<Outcome> {
    let ops = ModelOperators::new(cfg.params)?;
    let rho = lindblad::steady_state(&ops)?;
    output::write_text(&cfg.out.join("steady.csv"), &output::steady_csv(&rho))?;
    println!(
        "steady: populations {:?}, concurrence {:.3e}",
        entangle::populations(&rho),
        entangle::concurrence(&rho)?
    );
    Ok(Outcome::Done)
}

fn me(cfg: &RunConfig) -> Result<Outcome> {
    let ops = ModelOperators::new(cfg.params)?;
    let sol = lindblad::integrate_me(
        &ops,
        &PureState::gg().density(),
        cfg.t_end,
        cfg.dt,
        cfg.sample_stride,
    )?;
    output::write_text(&cfg.out.join("me.csv"), &output::me_csv(&sol)?)?;
    println!("me: {} samples to t = {}", sol.times.len(), cfg.t_end);
    Ok(Outcome::Done)
}

fn traj(cfg: &RunConfig) -> Result<Outcome> {
    let cfg = unraveling(cfg.clone());
    let ops = ModelOperators::new(cfg.params)?;
    let options = RunOptions {
        stride: cfg.sample_stride,
        stream: 0,
        record_noise: true,
    };
    let rec = match cfg.engine {
        Engine::Jump => trajectories::run_trajectory(
            &JumpSse::new(&ops, cfg.dt)?,
            PureState::gg(),
            cfg.t_end,
            cfg.seed,
            &options,
        )?,
        Engine::Sme => {
            let engine = Sme::new(
                &ops,
                cfg.dt,
                cfg.params.eta_l,
                cfg.params.eta_r,
                DiffusiveOptions::default(),
            )?;
            trajectories::run_trajectory(
                &engine,
                PureState::gg().density(),
                cfg.t_end,
                cfg.seed,
                &options,
            )?
        }
        _ => {
            let engine = DiffusiveSse::new(&ops, cfg.dt, DiffusiveOptions::default())?;
            trajectories::run_trajectory(&engine, PureState::gg(), cfg.t_end, cfg.seed, &options)?
        }
    };
    output::write_trajectory_csv(&rec, &cfg.out.join("trajectory.csv"))?;
    if cfg.emit_svg {
        output::write_text(
            &cfg.out.join("trajectory.svg"),
            &output::trajectory_svg(&rec),
        )?;
    }
    println!(
        "traj: {} engine, {} left and {} right clicks",
        cfg.engine.name(),
        rec.count(trajectories::Channel::Left),
        rec.count(trajectories::Channel::Right)
    );
    Ok(Outcome::Done)
}

fn run_ensemble(cfg: &RunConfig) -> Result<Outcome> {
    let cfg = unraveling(cfg.clone());
    let out = ensemble::run_ensemble(&cfg)?;
    let files = output::write_ensemble(&out, &cfg.out, cfg.emit_svg)?;
    let windows = out.stats.heralds.closed_windows();
    match out.stats.mean_window_duration() {
        Some(d) => println!(
            "ensemble: {} trajectories, {windows} windows, mean duration {d:.4}",
            cfg.n_traj
        ),
        None => println!("ensemble: {} trajectories, no closed windows", cfg.n_traj),
    }
    println!("wrote {} files to {}", files.len(), cfg.out.display());
    Ok(Outcome::Done)
}

fn g2(cfg: &RunConfig) -> Result<Outcome> {
    let ops = ModelOperators::new(cfg.params)?;
    let step = cfg.dt * cfg.sample_stride as f64;
    let n = (cfg.t_end / step).round() as usize;
    let taus: Vec<f64> = (0..=n).map(|k| k as f64 * step).collect();
    let curve = lindblad::g2_left(&ops, &taus)?;
    output::write_g2_csv(&curve, &cfg.out.join("g2.csv"))?;
    if cfg.emit_svg {
        let svg = output::line_chart_svg("g2", &curve.tau_grid, &[("g2", curve.values.clone())]);
        output::write_text(&cfg.out.join("g2.svg"), &svg)?;
    }
    println!("g2: g2(0) = {:.6}", curve.values[0]);
    Ok(Outcome::Done)
}

fn check(cfg: &RunConfig) -> Result<Outcome> {
    let cfg = unraveling(cfg.clone());
    let report = ensemble::consistency_check(&cfg)?;
    output::write_text(&cfg.out.join("check.csv"), &output::check_csv(&report))?;
    println!(
        "check: {} engine, {} trajectories, max deviation {:.2} SE ({:.3e} absolute): {}",
        cfg.engine.name(),
        report.n_traj,
        report.max_deviation_se,
        report.max_abs_deviation,
        if report.passed { "pass" } else { "FAIL" }
    );
    if let Some((t, q)) = report.first_failure {
        println!("first failure: component {q} at t = {t}");
    }
    Ok(if report.passed {
        Outcome::Done
    } else {
        Outcome::CheckFailed
    })
}

fn dispatch(command: &Command) -> Result<Outcome> {
    let (common, engine, run): (&Common, Engine, fn(&RunConfig) -> Result<Outcome>) = match command
    {
        Command::Steady(c) => (c, Engine::Steady, steady),
        Command::Me(c) => (c, Engine::Me, me),
        Command::Traj(c) => (c, Engine::Diffusive, traj),
        Command::Ensemble(c) => (c, Engine::Diffusive, run_ensemble),
        Command::G2(c) => (c, Engine::G2, g2),
        Command::Check(c) => (c, Engine::Diffusive, check),
    };
    run(&common.load(engine)?)
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config { .. } => 2,
        Error::Io { .. } => 1,
        e if e.is_numerical() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
