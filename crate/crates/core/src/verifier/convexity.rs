//! Midpoint-rule inequalities for convex test functions.
//!
//! Test functions are finite mixtures `φ(t) = Σ wᵢ (Tᵢ − t)₊^{pᵢ}` with
//! `pᵢ ∈ {1, 2}`. Every nonnegative integrable convex function on `(0, ∞)`
//! is a superposition of the `p = 1` hats, and those with concave `φ′` are
//! superpositions of the `p = 2` profiles.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::positive;
use crate::{CompensatedSum, Error, Result};

use super::BoundReport;

/// Slack allowed when comparing consecutive `g(h)` values.
const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexComponent {
    pub weight: f64,
    pub threshold: f64,
    pub power: u8,
}

impl ConvexComponent {
    fn eval(&self, t: f64) -> f64 {
        let d = self.threshold - t;
        if d <= 0.0 {
            return 0.0;
        }
        match self.power {
            1 => self.weight * d,
            _ => self.weight * d * d,
        }
    }

    /// `∫₀^upper (T − t)₊^p dt`.
    fn integral_to(&self, upper: f64) -> f64 {
        let p1 = f64::from(self.power) + 1.0;
        let tail = (self.threshold - upper).max(0.0);
        self.weight * (self.threshold.powf(p1) - tail.powf(p1)) / p1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexProfile {
    components: Vec<ConvexComponent>,
}

impl ConvexProfile {
    pub fn new(components: Vec<ConvexComponent>) -> Result<Self> {
        for c in &components {
            if !(c.weight.is_finite() && c.weight >= 0.0) {
                return Err(Error::domain("weight", c.weight, "must be finite and >= 0"));
            }
            positive("threshold", c.threshold)?;
            if c.power != 1 && c.power != 2 {
                return Err(Error::domain("power", f64::from(c.power), "must be 1 or 2"));
            }
        }
        Ok(Self { components })
    }

    /// `w (T − t)₊^p`.
    pub fn single(weight: f64, threshold: f64, power: u8) -> Result<Self> {
        Self::new(vec![ConvexComponent {
            weight,
            threshold,
            power,
        }])
    }

    /// Random profile with 1..=`max_components` components, weights in
    /// `[0, 1)`, thresholds in `(0, max_threshold]`.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        max_components: usize,
        max_threshold: f64,
        quadratic_only: bool,
    ) -> Self {
        let n = rng.gen_range(1..=max_components.max(1));
        let components = (0..n)
            .map(|_| ConvexComponent {
                weight: rng.gen::<f64>(),
                threshold: max_threshold * (1.0 - rng.gen::<f64>()),
                power: if quadratic_only {
                    2
                } else {
                    rng.gen_range(1..=2)
                },
            })
            .collect();
        Self { components }
    }

    pub fn components(&self) -> &[ConvexComponent] {
        &self.components
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.components.iter().map(|c| c.eval(t)).sum()
    }

    /// `∫₀^∞ φ(t) dt`.
    pub fn integral(&self) -> f64 {
        self.integral_to(f64::INFINITY)
    }

    pub fn integral_to(&self, upper: f64) -> f64 {
        self.components.iter().map(|c| c.integral_to(upper)).sum()
    }

    /// Right end of the support.
    pub fn support_end(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.threshold)
            .fold(0.0, f64::max)
    }

    /// All components quadratic, so `φ′` is concave.
    pub fn has_concave_derivative(&self) -> bool {
        self.components.iter().all(|c| c.power == 2)
    }
}

/// `g(h) = h Σ_{k≥0} φ(h(k+½))`.
pub fn midpoint_scaled_sum(profile: &ConvexProfile, h: f64) -> Result<f64> {
    positive("h", h)?;
    let end = profile.support_end();
    let n = (end / h - 0.5).ceil().max(0.0) as usize + 1;
    let mut acc = CompensatedSum::new();
    for k in (0..n).rev() {
        acc.add(profile.eval(h * (k as f64 + 0.5)));
    }
    Ok(h * acc.value())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanReport {
    /// `Σ_{k≥0} φ(k+½)` against `∫₀^∞ φ`.
    pub full: BoundReport,
    /// `(K, Σ_{k<K} φ(k+½)` against `∫₀^K φ)` for `K = 1..=⌈max T⌉`.
    pub partial: Vec<(usize, BoundReport)>,
    pub holds: bool,
}

/// Midpoint sum never exceeds the integral, in full and for every partial
/// range `[0, K]`.
pub fn check_lemma_mean(profile: &ConvexProfile) -> MeanReport {
    let kmax = profile.support_end().ceil() as usize;
    let mut partial = Vec::with_capacity(kmax);
    let mut acc = CompensatedSum::new();
    for k in 0..kmax {
        acc.add(profile.eval(k as f64 + 0.5));
        let big_k = k + 1;
        let rhs = profile.integral_to(big_k as f64);
        partial.push((
            big_k,
            BoundReport::with_default_tolerance(acc.value(), rhs, 1.0),
        ));
    }
    let lhs = midpoint_scaled_sum(profile, 1.0).unwrap_or(0.0);
    let full = BoundReport::with_default_tolerance(lhs, profile.integral(), 1.0);
    let holds = full.holds && partial.iter().all(|(_, r)| r.holds);
    MeanReport {
        full,
        partial,
        holds,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonoReport {
    /// `(h, g(h))` sorted by increasing `h`.
    pub values: Vec<(f64, f64)>,
    pub monotone: bool,
    /// `max_h g(h)` against `∫φ`; `holds` also requires monotonicity.
    pub report: BoundReport,
}

/// `g(h)` is nonincreasing in `h` and bounded by `∫φ`, for profiles whose
/// derivative is concave.
pub fn check_lemma_mono(profile: &ConvexProfile, h_grid: &[f64]) -> Result<MonoReport> {
    if !profile.has_concave_derivative() {
        return Err(Error::NotEligible(
            "midpoint monotonicity needs every component to have power 2".into(),
        ));
    }
    let mut values = h_grid
        .iter()
        .map(|&h| midpoint_scaled_sum(profile, h).map(|g| (h, g)))
        .collect::<Result<Vec<_>>>()?;
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = values.windows(2).all(|w| w[1].1 <= w[0].1 + MONOTONE_SLACK);
    let max_g = values.iter().map(|v| v.1).fold(0.0, f64::max);
    let mut report = BoundReport::with_default_tolerance(max_g, profile.integral(), 1.0);
    report.holds &= monotone;
    Ok(MonoReport {
        values,
        monotone,
        report,
    })
}

/// Monotonicity failure of `g` for the hat `(1 − t)₊` between `h = 2/3` and
/// `h = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearHatFailure {
    pub g_two_thirds: f64,
    pub g_one: f64,
    /// `g(2/3) < g(1)`.
    pub fails: bool,
}

pub fn linear_hat_failure() -> LinearHatFailure {
    let hat = ConvexProfile::single(1.0, 1.0, 1).expect("valid hat");
    let g_two_thirds = midpoint_scaled_sum(&hat, 2.0 / 3.0).expect("h > 0");
    let g_one = midpoint_scaled_sum(&hat, 1.0).expect("h > 0");
    LinearHatFailure {
        g_two_thirds,
        g_one,
        fails: g_two_thirds < g_one,
    }
}
