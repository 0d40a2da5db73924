//! Command-line front end.
//!
//! Parameters come from flags and, optionally, a JSON config file of the form
//!
//! ```json
//! { "parameters": { "B": 1, "omega1": 1, "mu": 5, "target": "main2d" },
//!   "grid": { "mu": [1, 5, 10], "gamma": [1, 2] },
//!   "format": "csv", "out": "report.csv", "seed": 7 }
//! ```
//!
//! Flags override file values. Exit status is 0 on success (an inequality
//! violation is a result), 2 on usage or validation errors and 3 on numeric
//! failures.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::densityfns::DensityFnContext;
use crate::report::{counterexample_table, sweep_table, Cell, ReportError, Table};
use crate::verifier::{
    check_lemma_mean, check_lemma_mono, find_counterexample, linear_hat_failure, sweep,
    BoundReport, ConvexProfile, SweepGrid, Target,
};
use crate::{Error, TWO_PI};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numeric: {0}")]
    Numeric(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::NotEligible(_) => CliError::Usage(e.to_string()),
            Error::NoConvergence(_) | Error::Numeric(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Sweep,
    Counterexample,
    Legendre,
    Lemmas,
}

/// Scalar parameters, shared by flags and the config file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub omega3: Option<f64>,
    pub mu: Option<f64>,
    pub gamma: Option<f64>,
    pub target: Option<String>,
    pub rho: Option<f64>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub points: Option<usize>,
    pub rho_max: Option<f64>,
    pub v_min: Option<f64>,
    pub v_max: Option<f64>,
    pub profiles: Option<usize>,
}

/// Sweep axes.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(rename = "B")]
    pub b: Option<Vec<f64>>,
    pub omega1: Option<Vec<f64>>,
    pub omega2: Option<Vec<f64>>,
    pub omega3: Option<Vec<f64>>,
    pub mu: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    parameters: Parameters,
    #[serde(default)]
    grid: GridSpec,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
    seed: Option<u64>,
}

macro_rules! overlay {
    ($base:expr, $top:expr; $($field:ident),+) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )+
    };
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub parameters: Parameters,
    pub grid: GridSpec,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(
    name = "magnetic-lt",
    version,
    about = "Riesz means and magnetic semiclassical bounds for harmonic oscillators in a magnetic field"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Check one inequality instance.
    Verify(FlagArgs),
    /// Check one inequality on a Cartesian parameter grid.
    Sweep(FlagArgs),
    /// Search for a γ < 1 violation of the sharp 2D bound.
    Counterexample(FlagArgs),
    /// Tabulate j, j_R, 3j(ρ/3), p and the Legendre transform of j.
    Legendre(FlagArgs),
    /// Run the randomized convexity, comparison and duality checks.
    Lemmas(FlagArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct FlagArgs {
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// main2d, mainequiv, main3d or osc1d.
    #[arg(long)]
    pub target: Option<String>,
    /// Constant on the semiclassical side; defaults to the sharp constant.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n_min: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long = "grid-B", value_delimiter = ',', allow_hyphen_values = true)]
    pub grid_b: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grid_omega1: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grid_omega2: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grid_omega3: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grid_mu: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub grid_gamma: Option<Vec<f64>>,
    /// Number of tabulation points (legendre).
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_rho_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_v_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_v_max: Option<f64>,
    /// Random profiles per convexity check (lemmas).
    #[arg(long)]
    pub profiles: Option<usize>,
}

impl RunConfig {
    /// Merge a config file (if named) with the flags.
    pub fn from_flags(command: Command, flags: &FlagArgs) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let mut parameters = file.parameters;
        let top = Parameters {
            b: flags.b,
            omega1: flags.omega1,
            omega2: flags.omega2,
            omega3: flags.omega3,
            mu: flags.mu,
            gamma: flags.gamma,
            target: flags.target.clone(),
            rho: flags.rho,
            n_min: flags.n_min,
            n_max: flags.n_max,
            points: flags.grid_points,
            rho_max: flags.grid_rho_max,
            v_min: flags.grid_v_min,
            v_max: flags.grid_v_max,
            profiles: flags.profiles,
        };
        overlay!(parameters, top; b, omega1, omega2, omega3, mu, gamma, target, rho,
                 n_min, n_max, points, rho_max, v_min, v_max, profiles);
        let mut grid = file.grid;
        let top = GridSpec {
            b: flags.grid_b.clone(),
            omega1: flags.grid_omega1.clone(),
            omega2: flags.grid_omega2.clone(),
            omega3: flags.grid_omega3.clone(),
            mu: flags.grid_mu.clone(),
            gamma: flags.grid_gamma.clone(),
        };
        overlay!(grid, top; b, omega1, omega2, omega3, mu, gamma);
        Ok(RunConfig {
            command,
            parameters,
            grid,
            output_format: flags.format.or(file.format).unwrap_or_default(),
            output_path: flags.out.clone().or(file.out),
            seed: flags.seed.or(file.seed).unwrap_or(0),
        })
    }
}

fn require(name: &str, v: Option<f64>) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing parameter --{name}")))
}

fn target_of(p: &Parameters) -> Result<Target, CliError> {
    p.target
        .as_deref()
        .unwrap_or("main2d")
        .parse()
        .map_err(CliError::Usage)
}

fn one(v: Option<f64>) -> Vec<f64> {
    v.into_iter().collect()
}

fn run_verify(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let target = target_of(p)?;
    let gamma = p.gamma.unwrap_or(1.0);
    let mu = require("mu", p.mu)?;
    let omega1 = require("omega1", p.omega1)?;
    let mut grid = SweepGrid {
        omega1: vec![omega1],
        mu: vec![mu],
        gamma: vec![gamma],
        rho: p.rho,
        ..Default::default()
    };
    if target != Target::Osc1d {
        grid.b = vec![require("B", p.b)?];
        grid.omega2 = vec![require("omega2", p.omega2)?];
    }
    if target == Target::Main3d {
        grid.omega3 = vec![require("omega3", p.omega3)?];
    }
    let (rows, _) = sweep(&grid, target);
    if let Some(Err(e)) = rows.first().map(|r| &r.result) {
        return Err(CliError::Usage(e.clone()));
    }
    Ok(sweep_table(&rows))
}

fn run_sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let g = &cfg.grid;
    let pick =
        |axis: &Option<Vec<f64>>, scalar: Option<f64>| axis.clone().unwrap_or_else(|| one(scalar));
    let grid = SweepGrid {
        b: pick(&g.b, p.b),
        omega1: pick(&g.omega1, p.omega1),
        omega2: pick(&g.omega2, p.omega2),
        omega3: pick(&g.omega3, p.omega3),
        mu: pick(&g.mu, p.mu),
        gamma: pick(&g.gamma, p.gamma),
        rho: p.rho,
    };
    let (rows, summary) = sweep(&grid, target_of(p)?);
    eprintln!(
        "rows={} violations={} errors={} min_ratio={} max_ratio={}",
        summary.rows,
        summary.violations,
        summary.errors,
        summary.min_ratio.map_or("-".into(), |r| r.to_string()),
        summary.max_ratio.map_or("-".into(), |r| r.to_string()),
    );
    Ok(sweep_table(&rows))
}

fn run_counterexample(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let gamma = require("gamma", p.gamma)?;
    let n_min = p.n_min.unwrap_or(1);
    let n_max = p.n_max.unwrap_or(1_000_000);
    let result = find_counterexample(gamma, n_min..=n_max)?;
    Ok(counterexample_table(&[result]))
}

fn run_legendre(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let b = p.b.unwrap_or(1.0);
    let ctx = DensityFnContext::new(b)?;
    let n = p.points.unwrap_or(1000);
    if n < 2 {
        return Err(CliError::Usage("--grid-points must be at least 2".into()));
    }
    let rho_max = p.rho_max.unwrap_or(10.0 * b / TWO_PI);
    let v_min = p.v_min.unwrap_or(-10.0 * b);
    let v_max = p.v_max.unwrap_or(b);
    let mut t = Table::new([
        "rho",
        "j",
        "j_rumin",
        "three_j_third",
        "v",
        "pressure",
        "legendre_of_j",
    ]);
    for i in 0..n {
        let s = i as f64 / (n - 1) as f64;
        let rho = rho_max * s;
        let v = v_min + (v_max - v_min) * s;
        t.push(vec![
            Cell::Float(rho),
            Cell::Float(ctx.j(rho)?),
            Cell::Float(ctx.j_rumin(rho)?),
            Cell::Float(3.0 * ctx.j(rho / 3.0)?),
            Cell::Float(v),
            Cell::Float(ctx.pressure(v)?),
            Cell::Float(ctx.legendre_of_j(v)?),
        ])?;
    }
    Ok(t)
}

fn lemma_row(t: &mut Table, check: &str, case: usize, r: &BoundReport) -> Result<(), CliError> {
    t.push(vec![
        Cell::Text(check.into()),
        Cell::Int(case as i64),
        Cell::Float(r.lhs),
        Cell::Float(r.rhs),
        Cell::Float(r.constant),
        Cell::Float(r.ratio),
        Cell::Bool(r.holds),
    ])?;
    Ok(())
}

fn run_lemmas(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.parameters;
    let profiles = p.profiles.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut t = Table::new(["check", "case", "lhs", "rhs", "constant", "ratio", "holds"]);

    for case in 0..profiles {
        let profile = ConvexProfile::random(&mut rng, 4, 10.0, false);
        lemma_row(
            &mut t,
            "midpoint_mean",
            case,
            &check_lemma_mean(&profile).full,
        )?;
    }
    let h_grid: Vec<f64> = (0..20).map(|i| 2.0 * 0.8f64.powi(i)).collect();
    for case in 0..profiles {
        let profile = ConvexProfile::random(&mut rng, 4, 10.0, true);
        lemma_row(
            &mut t,
            "midpoint_mono",
            case,
            &check_lemma_mono(&profile, &h_grid)?.report,
        )?;
    }
    // g(1) ≤ g(2/3) is what monotonicity would require; the hat violates it.
    let hat = linear_hat_failure();
    lemma_row(
        &mut t,
        "linear_hat_mono",
        0,
        &BoundReport::new(hat.g_one, hat.g_two_thirds, 1.0, 0.0),
    )?;

    let ctx = DensityFnContext::new(p.b.unwrap_or(1.0))?;
    let mut worst: Option<BoundReport> = None;
    for i in 0..=3000 {
        // Multiples of level/30 include every breakpoint of j(ρ/3).
        let rho = ctx.level_density() * i as f64 / 30.0;
        let r = BoundReport::new(3.0 * ctx.j(rho / 3.0)?, ctx.j_rumin(rho)?, 1.0, 1e-12);
        if worst.is_none_or(|w| r.ratio > w.ratio) {
            worst = Some(r);
        }
    }
    lemma_row(
        &mut t,
        "rumin_comparison",
        0,
        &worst.expect("nonempty grid"),
    )?;

    let mut max_gap = 0.0f64;
    for i in 0..=1000 {
        let v = -100.0 * ctx.b() + 101.0 * ctx.b() * i as f64 / 1000.0;
        let (a, b) = (ctx.pressure(v)?, ctx.legendre_of_j(v)?);
        max_gap = max_gap.max((a - b).abs() / a.abs().max(1.0));
    }
    lemma_row(
        &mut t,
        "legendre_duality_gap",
        0,
        &BoundReport::new(max_gap, 1e-13, 1.0, 0.0),
    )?;
    Ok(t)
}

/// Execute a command and return its table.
pub fn run(cfg: &RunConfig) -> Result<Table, CliError> {
    match cfg.command {
        Command::Verify => run_verify(cfg),
        Command::Sweep => run_sweep(cfg),
        Command::Counterexample => run_counterexample(cfg),
        Command::Legendre => run_legendre(cfg),
        Command::Lemmas => run_lemmas(cfg),
    }
}

pub fn render(table: &Table, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    Ok(match format {
        OutputFormat::Json => table.to_json().into_bytes(),
        OutputFormat::Csv => table.to_csv()?,
    })
}

/// Run and write the report to `--out` or stdout.
pub fn run_and_emit(cfg: &RunConfig) -> Result<(), CliError> {
    let table = run(cfg)?;
    let bytes = render(&table, cfg.output_format)?;
    match &cfg.output_path {
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Parse arguments, run, and return the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (command, flags) = match &cli.command {
        CliCommand::Verify(f) => (Command::Verify, f),
        CliCommand::Sweep(f) => (Command::Sweep, f),
        CliCommand::Counterexample(f) => (Command::Counterexample, f),
        CliCommand::Legendre(f) => (Command::Legendre, f),
        CliCommand::Lemmas(f) => (Command::Lemmas, f),
    };
    match RunConfig::from_flags(command, flags).and_then(|cfg| run_and_emit(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
