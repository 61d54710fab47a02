// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV and SVG writers. Floats carry 9 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::check::CheckReport;
use super::stats::{EnsembleOutput, EnsembleStats};
use crate::entangle;
use crate::error::{Error, Result};
use crate::lindblad::{G2Curve, MeSolution};
use crate::state::DensityOp;
use crate::trajectories::TrajectoryRecord;

pub const TRAJECTORY_HEADER: &str =
    "t,norm,pop_ee,pop_plus_i,pop_minus_i,pop_gg,entanglement,jump_left,jump_right,dxi";
pub const G2_HEADER: &str = "tau,g2";
pub const STATS_HEADER: &str = "t,mean_pop_ee,se_pop_ee,mean_pop_plus_i,se_pop_plus_i,\
mean_pop_minus_i,se_pop_minus_i,mean_pop_gg,se_pop_gg,mean_entanglement,se_entanglement";
pub const ME_HEADER: &str = "t,pop_ee,pop_plus_i,pop_minus_i,pop_gg,entanglement";
pub const STEADY_HEADER: &str = "row,col,re,im";
pub const CHECK_HEADER: &str = "t,max_abs_deviation,max_deviation_se";

/// `x` with 9 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.8e}")
}

fn push_row(out: &mut String, fields: &[f64]) {
    for (k, x) in fields.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&fmt_float(*x));
    }
    out.push('\n');
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn trajectory_csv(rec: &TrajectoryRecord) -> String {
    let mut s = String::with_capacity(rec.rows.len() * 160);
    s.push_str(TRAJECTORY_HEADER);
    s.push('\n');
    for r in &rec.rows {
        let p = r.populations;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_float(r.t),
            fmt_float(r.norm),
            fmt_float(p[0]),
            fmt_float(p[1]),
            fmt_float(p[2]),
            fmt_float(p[3]),
            fmt_float(r.entanglement),
            r.jump_left,
            r.jump_right,
            fmt_float(r.dxi)
        );
    }
    s
}

pub fn stats_csv(stats: &EnsembleStats) -> String {
    let mut s = String::new();
    s.push_str(STATS_HEADER);
    s.push('\n');
    for k in 0..stats.times.len() {
        let (m, e) = (stats.mean_populations[k], stats.se_populations[k]);
        push_row(
            &mut s,
            &[
                stats.times[k],
                m[0],
                e[0],
                m[1],
                e[1],
                m[2],
                e[2],
                m[3],
                e[3],
                stats.mean_entanglement[k],
                stats.se_entanglement[k],
            ],
        );
    }
    s
}

pub fn g2_csv(curve: &G2Curve) -> String {
    let mut s = String::from(G2_HEADER);
    s.push('\n');
    for (t, g) in curve.tau_grid.iter().zip(&curve.values) {
        push_row(&mut s, &[*t, *g]);
    }
    s
}

pub fn me_csv(sol: &MeSolution) -> Result<String> {
    let mut s = String::from(ME_HEADER);
    s.push('\n');
    for (t, rho) in sol.times.iter().zip(&sol.states) {
        let p = entangle::populations(rho);
        push_row(&mut s, &[*t, p[0], p[1], p[2], p[3], entangle::eof(rho)?]);
    }
    Ok(s)
}

pub fn steady_csv(rho: &DensityOp) -> String {
    let mut s = String::from(STEADY_HEADER);
    s.push('\n');
    for i in 0..4 {
        for j in 0..4 {
            let z = rho.mat().0[i][j];
            let _ = writeln!(s, "{i},{j},{},{}", fmt_float(z.re), fmt_float(z.im));
        }
    }
    s
}

pub fn check_csv(report: &CheckReport) -> String {
    let mut s = String::from(CHECK_HEADER);
    s.push('\n');
    for (t, a, b) in &report.per_time {
        push_row(&mut s, &[*t, *a, *b]);
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    write_file(path, text)
}

pub fn write_trajectory_csv(rec: &TrajectoryRecord, path: &Path) -> Result<()> {
    write_file(path, &trajectory_csv(rec))
}

pub fn write_stats_csv(stats: &EnsembleStats, path: &Path) -> Result<()> {
    write_file(path, &stats_csv(stats))
}

pub fn write_g2_csv(curve: &G2Curve, path: &Path) -> Result<()> {
    write_file(path, &g2_csv(curve))
}

/// File name of the record of trajectory `index`.
pub fn trajectory_file_name(index: u64) -> String {
    format!("traj_{index:04}.csv")
}

/// Writes `stats.csv` and one CSV per kept record into `dir`.
pub fn write_ensemble(output: &EnsembleOutput, dir: &Path, svg: bool) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let stats_path = dir.join("stats.csv");
    write_stats_csv(&output.stats, &stats_path)?;
    written.push(stats_path);
    for rec in &output.records {
        let path = dir.join(trajectory_file_name(rec.stream));
        write_trajectory_csv(rec, &path)?;
        written.push(path);
    }
    if svg {
        let st = &output.stats;
        let series: Vec<(&str, Vec<f64>)> = ["ee", "+i", "-i", "gg"]
            .iter()
            .enumerate()
            .map(|(q, name)| (*name, st.mean_populations.iter().map(|p| p[q]).collect()))
            .chain(std::iter::once((
                "entanglement",
                st.mean_entanglement.clone(),
            )))
            .collect();
        let path = dir.join("stats.svg");
        write_file(&path, &line_chart_svg("ensemble means", &st.times, &series))?;
        written.push(path);
    }
    Ok(written)
}

pub fn trajectory_svg(rec: &TrajectoryRecord) -> String {
    let series: Vec<(&str, Vec<f64>)> = ["ee", "+i", "-i", "gg"]
        .iter()
        .enumerate()
        .map(|(q, name)| (*name, rec.rows.iter().map(|r| r.populations[q]).collect()))
        .chain(std::iter::once((
            "entanglement",
            rec.rows.iter().map(|r| r.entanglement).collect(),
        )))
        .collect();
    line_chart_svg("trajectory", &rec.t_grid, &series)
}

const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#7f7f7f", "#000000", "#9467bd",
];

/// A minimal line chart: one polyline per series, y axis fixed to the data range.
pub fn line_chart_svg(title: &str, x: &[f64], series: &[(&str, Vec<f64>)]) -> String {
    let (w, h, pad) = (800.0, 400.0, 40.0);
    let x0 = x.first().copied().unwrap_or(0.0);
    let x1 = x.last().copied().unwrap_or(1.0).max(x0 + 1e-12);
    let finite = series
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .filter(|v| v.is_finite());
    let (mut lo, mut hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !lo.is_finite() || !hi.is_finite() {
        lo = 0.0;
        hi = 1.0;
    }
    if hi - lo < 1e-12 {
        hi = lo + 1.0;
    }
    let sx = |t: f64| pad + (t - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |v: f64| h - pad - (v - lo) / (hi - lo) * (h - 2.0 * pad);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{pad}" y="20" font-size="14">{title}</text>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{pad} {top} V{bottom} H{right}" stroke="black" fill="none"/>"#,
        top = pad,
        bottom = h - pad,
        right = w - pad
    );
    for (k, (name, ys)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = x
            .iter()
            .zip(ys)
            .filter(|(_, y)| y.is_finite())
            .map(|(t, y)| format!("{:.2},{:.2}", sx(*t), sy(*y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">{name}</text>"#,
            w - pad - 90.0,
            pad + 14.0 * k as f64
        );
    }
    s.push_str("</svg>\n");
    s
}
