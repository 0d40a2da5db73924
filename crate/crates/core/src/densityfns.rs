//! Kinetic-energy density functions of the Landau Hamiltonian and their
//! Legendre duality with the pressure function.
//!
//! With `n = 2πρ/B` counting filled Landau-level densities:
//!
//! - `j(ρ) = (B²/2π)(L² + (2L+1)r)` where `n = L + r`, `L ∈ ℕ₀`, `r ∈ [0,1)`,
//!   is the piecewise affine staircase energy. Its slope on segment `L` is
//!   `B(2L+1)`, the `L`-th Landau level.
//! - `j_R(ρ) = Bρ + 2B Σ_{k≥1} (√ρ − √(Bk/2π))₊²` is the smooth comparison
//!   function; `j_R(ρ) ≥ 3 j(ρ/3)`.
//! - `p(v) = −(B/2π) Σ_m ((2m+1)B + v)₋ = inf_{ρ≥0} (j(ρ) + vρ)`.
//!
//! `p` is an infimum of affine functions of `v`, hence concave and
//! nondecreasing, and `j(ρ) = sup_v (p(v) − vρ)`.

use crate::error::{finite, nonnegative, positive};
use crate::spectra::ladder_sum;
use crate::{CompensatedSum, Result, TWO_PI};

/// Holds the field strength `B` shared by `j`, `j_R` and `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityFnContext {
    b: f64,
}

impl DensityFnContext {
    pub fn new(b: f64) -> Result<Self> {
        Ok(Self {
            b: positive("B", b)?,
        })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Density `B/2π` of one fully occupied Landau level.
    pub fn level_density(&self) -> f64 {
        self.b / TWO_PI
    }

    /// Split `2πρ/B` into `(L, r)`. Values within a few ulps of an integer
    /// snap to it so that breakpoints `ρ = (B/2π)L` land on `r = 0`.
    fn decompose(&self, rho: f64) -> (f64, f64) {
        let n = rho * TWO_PI / self.b;
        let nearest = n.round();
        if (nearest - n).abs() <= 4.0 * f64::EPSILON * nearest {
            return (nearest, 0.0);
        }
        let l = n.floor();
        (l, n - l)
    }

    /// Staircase energy density `j(ρ)`.
    pub fn j(&self, rho: f64) -> Result<f64> {
        nonnegative("rho", rho)?;
        let (l, r) = self.decompose(rho);
        Ok(self.b * self.b / TWO_PI * (l * l + (2.0 * l + 1.0) * r))
    }

    /// Rumin-type density `j_R(ρ)`.
    pub fn j_rumin(&self, rho: f64) -> Result<f64> {
        nonnegative("rho", rho)?;
        let level = self.level_density();
        let root = rho.sqrt();
        // Terms vanish once Bk/2π ≥ ρ.
        let kmax = (rho / level).floor() as usize;
        let mut acc = CompensatedSum::new();
        for k in (1..=kmax + 1).rev() {
            let d = root - (level * k as f64).sqrt();
            if d > 0.0 {
                acc.add(d * d);
            }
        }
        Ok(self.b * rho + 2.0 * self.b * acc.value())
    }

    /// `p(v) = −(B/2π) Σ_m ((2m+1)B + v)₋`, evaluated by term enumeration.
    pub fn pressure(&self, v: f64) -> Result<f64> {
        finite("v", v)?;
        Ok(-self.level_density() * ladder_sum(-v, self.b, 1.0).value)
    }

    /// Slope-matching evaluation of `inf_{ρ≥0} (j(ρ) + vρ)`.
    ///
    /// Returns the infimum and the minimising breakpoint `ρ* = (B/2π)L*`,
    /// where `L*` is the first segment with slope `B(2L+1) ≥ −v`.
    pub fn legendre_of_j_with_minimizer(&self, v: f64) -> Result<(f64, f64)> {
        finite("v", v)?;
        if v >= -self.b {
            return Ok((0.0, 0.0));
        }
        let l = ((-v / self.b - 1.0) / 2.0).ceil();
        // j(ρ*) + vρ* = (B/2π) L* (B L* + v)
        let value = self.level_density() * l * (self.b * l + v);
        Ok((value, self.level_density() * l))
    }

    pub fn legendre_of_j(&self, v: f64) -> Result<f64> {
        self.legendre_of_j_with_minimizer(v).map(|(value, _)| value)
    }

    /// `sup_v (p(v) − vρ)`, taken over the slopes `v = −B(2L+1)` of `j`.
    ///
    /// The supremum of a concave piecewise-affine `p` is attained at one of
    /// its kinks, so the finite candidate set reproduces `j` exactly.
    pub fn conjugate_of_pressure(&self, rho: f64) -> Result<f64> {
        nonnegative("rho", rho)?;
        let n = rho / self.level_density();
        let top = n.ceil() as usize + 1;
        let mut best = f64::NEG_INFINITY;
        for l in 0..=top {
            let v = -self.b * (2 * l + 1) as f64;
            best = best.max(self.pressure(v)? - v * rho);
        }
        Ok(best)
    }
}

/// `j(ρ)` for field `B`.
pub fn j_fn(ctx: &DensityFnContext, rho: f64) -> Result<f64> {
    ctx.j(rho)
}

/// `j_R(ρ)` for field `B`.
pub fn j_rumin_fn(ctx: &DensityFnContext, rho: f64) -> Result<f64> {
    ctx.j_rumin(rho)
}

pub fn pressure_fn(ctx: &DensityFnContext, v: f64) -> Result<f64> {
    ctx.pressure(v)
}

pub fn legendre_of_j(ctx: &DensityFnContext, v: f64) -> Result<f64> {
    ctx.legendre_of_j(v)
}
