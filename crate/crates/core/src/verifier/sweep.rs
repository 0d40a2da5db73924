//! Cartesian parameter sweeps over one inequality.
//!
//! Rows are evaluated in parallel and collected in grid order (`B`, `ω₁`,
//! `ω₂`, `ω₃`, `μ`, `γ`, last axis fastest), so the output does not depend
//! on the thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::spectra::OscillatorParams;
use crate::Result;

use super::bounds::{
    sharp_constant_3d, verify_main_2d, verify_main_3d, verify_mainequiv, verify_osc1d,
};
use super::BoundReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// Physical 2D bound, axes `B, ω₁, ω₂, μ, γ`.
    Main2d,
    /// Dimensionless 2D bound at `σⱼ = ωⱼ/B`, `Λ = μ/B`.
    MainEquiv,
    /// 3D bound, axes `B, ω₁, ω₂, ω₃, μ, γ`.
    Main3d,
    /// 1D oscillator, axes `ω₁` (as `ω`), `μ` (as `Λ`), `γ`.
    Osc1d,
}

impl Target {
    pub const ALL: [Target; 4] = [
        Target::Main2d,
        Target::MainEquiv,
        Target::Main3d,
        Target::Osc1d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Main2d => "main2d",
            Target::MainEquiv => "mainequiv",
            Target::Main3d => "main3d",
            Target::Osc1d => "osc1d",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                format!("unknown target '{s}' (expected main2d, mainequiv, main3d or osc1d)")
            })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub b: Vec<f64>,
    pub omega1: Vec<f64>,
    pub omega2: Vec<f64>,
    pub omega3: Vec<f64>,
    pub mu: Vec<f64>,
    pub gamma: Vec<f64>,
    /// Constant override; otherwise the sharp constant for the target.
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub target: Target,
    pub b: Option<f64>,
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub omega3: Option<f64>,
    pub mu: Option<f64>,
    pub gamma: Option<f64>,
    /// The report, or the one-line reason the row was rejected.
    pub result: std::result::Result<BoundReport, String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub violations: usize,
    pub errors: usize,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

impl SweepSummary {
    pub fn from_rows(rows: &[SweepRow]) -> Self {
        let mut s = SweepSummary {
            rows: rows.len(),
            ..Default::default()
        };
        for row in rows {
            match &row.result {
                Err(_) => s.errors += 1,
                Ok(r) => {
                    if !r.holds {
                        s.violations += 1;
                    }
                    s.min_ratio = Some(s.min_ratio.map_or(r.ratio, |m| m.min(r.ratio)));
                    s.max_ratio = Some(s.max_ratio.map_or(r.ratio, |m| m.max(r.ratio)));
                }
            }
        }
        s
    }
}

type Point = [Option<f64>; 6];

fn axis(values: &[f64], used: bool) -> Vec<Option<f64>> {
    if used {
        values.iter().copied().map(Some).collect()
    } else {
        vec![None]
    }
}

fn points(grid: &SweepGrid, target: Target) -> Vec<Point> {
    let osc = target == Target::Osc1d;
    let axes = [
        axis(&grid.b, !osc),
        axis(&grid.omega1, true),
        axis(&grid.omega2, !osc),
        axis(&grid.omega3, target == Target::Main3d),
        axis(&grid.mu, true),
        axis(&grid.gamma, true),
    ];
    let mut out = vec![[None; 6]];
    for (i, values) in axes.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p;
                    q[i] = v;
                    q
                })
            })
            .collect();
    }
    out
}

fn evaluate(target: Target, p: &Point, rho: Option<f64>) -> Result<BoundReport> {
    let [b, w1, w2, w3, mu, gamma] = p.map(|v| v.unwrap_or(f64::NAN));
    match target {
        Target::Main2d => {
            let params = OscillatorParams::new_2d(b, w1, w2, mu, gamma)?;
            verify_main_2d(&params, rho.unwrap_or(1.0))
        }
        Target::MainEquiv => {
            let params = OscillatorParams::new_2d(b, w1, w2, mu, gamma)?;
            verify_mainequiv(params.sigma1(), params.sigma2(), params.lambda(), gamma)
        }
        Target::Main3d => {
            let params = OscillatorParams::new_3d(b, w1, w2, w3, mu, gamma)?;
            verify_main_3d(&params, rho.unwrap_or_else(|| sharp_constant_3d(gamma)))
        }
        Target::Osc1d => verify_osc1d(w1, mu, gamma),
    }
}

/// Evaluate `target` on every grid point.
pub fn sweep(grid: &SweepGrid, target: Target) -> (Vec<SweepRow>, SweepSummary) {
    let rows: Vec<SweepRow> = points(grid, target)
        .into_par_iter()
        .map(|p| SweepRow {
            target,
            b: p[0],
            omega1: p[1],
            omega2: p[2],
            omega3: p[3],
            mu: p[4],
            gamma: p[5],
            result: evaluate(target, &p, grid.rho).map_err(|e| e.to_string()),
        })
        .collect();
    let summary = SweepSummary::from_rows(&rows);
    (rows, summary)
}
