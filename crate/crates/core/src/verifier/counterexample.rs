//! Search for quadratic potentials violating the sharp bound when `γ < 1`.
//!
//! Fix `Λ = μ/B = 3` and `σ₁ = σ₂ = √t`. Then only the lowest `k = 0` row of
//! the spectrum lies below `Λ` and its levels sit at `a₊ + a₋(2l+1)`; the
//! positive terms are `2a₋(x − l)` for `l < x` where
//! `x(t) = (3 − a₊ − a₋)/(2a₋)` decreases from `+∞` to below one on
//! `t ∈ (0, 1]`. Choosing `t` with `x(t) = n` gives a violation for small
//! `t` (large `n`) whenever `γ < 1`.
//!
//! For `γ = 0` the term at `l = n` is exactly zero when `x = n`, and an
//! integer `x` never violates the count bound. The search then targets
//! `x = n + GAMMA_ZERO_OFFSET` so that the `(n+1)`-th level sits strictly
//! below `Λ`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::spectra::{mode_frequencies, ModeFrequencies};
use crate::{Error, Result};

use super::bounds::mainequiv_parts;
use super::BoundReport;

/// Bracket for the reduced squared frequency `t = σ²`.
pub const BRACKET_T: (f64, f64) = (1e-12, 1.0);
/// Offset of the target `x` above the integer `n` when `γ = 0`.
pub const GAMMA_ZERO_OFFSET: f64 = 1e-11;
/// Chemical potential in units of `B`.
const LAMBDA: f64 = 3.0;
const X_TOL: f64 = 1e-13;
const X_ACCEPT: f64 = 1e-10;
const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleResult {
    pub gamma: f64,
    pub n: u64,
    /// `t = σ²` with `σ₁ = σ₂ = σ`.
    pub t: f64,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub found: bool,
}

/// `(a±, x(t))` at `σ₁ = σ₂ = √t`.
pub fn reduced_x(t: f64) -> Result<(ModeFrequencies, f64)> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain("t", t, "must be finite and > 0"));
    }
    let s = t.sqrt();
    let m = mode_frequencies(s, s)?;
    Ok((m, (LAMBDA - m.a_plus - m.a_minus) / (2.0 * m.a_minus)))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && (0.0..1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::domain(
            "gamma",
            gamma,
            "counterexamples need 0 <= gamma < 1",
        ))
    }
}

/// Solve `x(t) = target` by bisection on [`BRACKET_T`].
///
/// Returns the endpoint with `x ≤ target` when `upper` is false and with
/// `x > target` otherwise.
fn solve_t(target: f64, upper: bool) -> Result<f64> {
    let x = |t: f64| reduced_x(t).map(|(_, x)| x);
    let (mut lo, mut hi) = BRACKET_T;
    if !(x(lo)? > target && x(hi)? <= target) {
        return Err(Error::NoConvergence(format!(
            "x = {target} is not bracketed by t in [{lo:e}, {hi:e}]"
        )));
    }
    let tol = X_TOL * target.max(1.0);
    for _ in 0..MAX_BISECTIONS {
        let side = if upper { lo } else { hi };
        if (x(side)? - target).abs() <= tol {
            return Ok(side);
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if x(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let side = if upper { lo } else { hi };
    if (x(side)? - target).abs() <= X_ACCEPT * target.max(1.0) {
        Ok(side)
    } else {
        Err(Error::NoConvergence(format!(
            "bisection for x = {target} stalled at t = {side:e}"
        )))
    }
}

/// Evaluate both sides of the sharp 2D bound at the `t` with `x(t) = n`.
///
/// Works for any `γ ≥ 0` so that `γ ≥ 1` scans can confirm the absence of
/// violations; [`find_counterexample`] restricts to `γ < 1`.
pub fn counterexample_at(gamma: f64, n: u64) -> Result<CounterexampleResult> {
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::domain("gamma", gamma, "must be finite and >= 0"));
    }
    if n == 0 {
        return Err(Error::domain("n", 0.0, "must be >= 1"));
    }
    let t = if gamma == 0.0 {
        solve_t(n as f64 + GAMMA_ZERO_OFFSET, true)?
    } else {
        solve_t(n as f64, false)?
    };
    let (modes, x) = reduced_x(t)?;
    let (lhs, rhs) = mainequiv_parts(modes, LAMBDA, gamma);
    // With a₊ > 1 the k ≥ 1 rows start above 3a₊ > Λ.
    if let Some(idx) = &lhs.max_index {
        if idx[0] != 0 {
            return Err(Error::Numeric(format!(
                "row k = {} contributes at t = {t:e}",
                idx[0]
            )));
        }
    }
    let report = BoundReport::with_default_tolerance(lhs.value, rhs, 1.0);
    Ok(CounterexampleResult {
        gamma,
        n,
        t,
        x,
        lhs: report.lhs,
        rhs: report.rhs,
        ratio: report.ratio,
        found: !report.holds,
    })
}

/// Scan `n_range` for the first `n` whose instance violates the bound.
///
/// When nothing is found the instance with the largest ratio is returned
/// with `found = false`.
pub fn find_counterexample(
    gamma: f64,
    n_range: RangeInclusive<u64>,
) -> Result<CounterexampleResult> {
    check_gamma(gamma)?;
    if n_range.is_empty() {
        return Err(Error::domain("n_range", f64::NAN, "must be nonempty"));
    }
    let mut best: Option<CounterexampleResult> = None;
    for n in n_range {
        let r = counterexample_at(gamma, n)?;
        if r.found {
            return Ok(r);
        }
        if best.is_none_or(|b| r.ratio > b.ratio) {
            best = Some(r);
        }
    }
    Ok(best.expect("nonempty range"))
}
