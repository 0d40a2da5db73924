//! Spectra, Riesz means and magnetic semiclassical phase-space bounds for
//! two- and three-dimensional harmonic oscillators in a homogeneous magnetic
//! field.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectra`]: mode frequencies, explicit eigenvalues and exactly truncated
//!   Riesz sums `Σ (μ − E)₊^γ`.
//! - [`semiclassics`]: closed forms of the magnetic and non-magnetic
//!   phase-space integrals for quadratic potentials.
//! - [`densityfns`]: the Landau staircase energy density `j`, Rumin's `j_R`
//!   and the pressure function `p` together with their Legendre duality.
//! - [`verifier`]: bound reports, convexity lemma checks, the γ < 1
//!   counterexample search and deterministic parameter sweeps.
//! - [`report`] and [`cli`]: table emission (CSV / JSON) and the command
//!   line front end.

pub mod cli;
pub mod densityfns;
mod error;
pub mod report;
pub mod semiclassics;
pub mod spectra;
mod sum;
pub mod verifier;

pub use error::{Error, Result};
pub use sum::CompensatedSum;

/// The constant 2π shared by every density-of-states factor `B/2π`.
pub const TWO_PI: f64 = std::f64::consts::TAU;
