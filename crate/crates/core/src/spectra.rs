//! Eigenvalues and Riesz means of the Landau Hamiltonian plus a harmonic
//! potential.
//!
//! In two dimensions the operator `H_B + ω₁²x₁² + ω₂²x₂²` has the explicit
//! spectrum `B(a₊(2k+1) + a₋(2l+1))`, `k, l ≥ 0`, where `a±` depend only on
//! the reduced frequencies `σⱼ = ωⱼ/B`. Adding `−∂₃² + ω₃²x₃²` tensors in the
//! one-dimensional ladder `ω₃(2j+1)`.
//!
//! Every Riesz sum here has finitely many nonzero terms. The index ranges are
//! derived in closed form and then corrected so that the last included term
//! is strictly positive and the first excluded one is `<= 0`; the truncation
//! is therefore exact.

use serde::{Deserialize, Serialize};

use crate::error::{finite, nonnegative, positive};
use crate::{CompensatedSum, Error, Result};

/// Physical parameters `(B, ω₁, ω₂, [ω₃], μ, γ)` of one oscillator instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    b: f64,
    omega1: f64,
    omega2: f64,
    omega3: Option<f64>,
    mu: f64,
    gamma: f64,
}

impl OscillatorParams {
    pub fn new_2d(b: f64, omega1: f64, omega2: f64, mu: f64, gamma: f64) -> Result<Self> {
        let p = Self {
            b: positive("B", b)?,
            omega1: positive("omega1", omega1)?,
            omega2: positive("omega2", omega2)?,
            omega3: None,
            mu: finite("mu", mu)?,
            gamma: nonnegative("gamma", gamma)?,
        };
        p.check_reduced()?;
        Ok(p)
    }

    pub fn new_3d(
        b: f64,
        omega1: f64,
        omega2: f64,
        omega3: f64,
        mu: f64,
        gamma: f64,
    ) -> Result<Self> {
        let mut p = Self::new_2d(b, omega1, omega2, mu, gamma)?;
        p.omega3 = Some(positive("omega3", omega3)?);
        Ok(p)
    }

    fn check_reduced(&self) -> Result<()> {
        finite("omega1/B", self.sigma1())?;
        finite("omega2/B", self.sigma2())?;
        finite("mu/B", self.lambda())?;
        Ok(())
    }

    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn omega1(&self) -> f64 {
        self.omega1
    }
    pub fn omega2(&self) -> f64 {
        self.omega2
    }
    pub fn omega3(&self) -> Option<f64> {
        self.omega3
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `σ₁ = ω₁/B`.
    pub fn sigma1(&self) -> f64 {
        self.omega1 / self.b
    }
    /// `σ₂ = ω₂/B`.
    pub fn sigma2(&self) -> f64 {
        self.omega2 / self.b
    }
    /// `Λ = μ/B`.
    pub fn lambda(&self) -> f64 {
        self.mu / self.b
    }

    pub fn with_mu(mut self, mu: f64) -> Result<Self> {
        self.mu = finite("mu", mu)?;
        self.check_reduced()?;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        self.gamma = nonnegative("gamma", gamma)?;
        Ok(self)
    }

    /// Multiply every energy-like parameter (`B`, `ωⱼ`, `μ`) by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        positive("scale", s)?;
        match self.omega3 {
            Some(w3) => Self::new_3d(
                s * self.b,
                s * self.omega1,
                s * self.omega2,
                s * w3,
                s * self.mu,
                self.gamma,
            ),
            None => Self::new_2d(
                s * self.b,
                s * self.omega1,
                s * self.omega2,
                s * self.mu,
                self.gamma,
            ),
        }
    }

    pub fn mode_frequencies(&self) -> ModeFrequencies {
        // σⱼ > 0 and finite by construction.
        ModeFrequencies::from_reduced(self.sigma1(), self.sigma2())
    }

    fn require_omega3(&self) -> Result<f64> {
        self.omega3.ok_or(Error::domain(
            "omega3",
            f64::NAN,
            "required for 3D operations",
        ))
    }
}

/// Dimensionless mode frequencies `a₊ ≥ 1`, `a₋ ≥ 0` of the magnetic oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeFrequencies {
    pub a_plus: f64,
    pub a_minus: f64,
}

impl ModeFrequencies {
    fn from_reduced(sigma1: f64, sigma2: f64) -> Self {
        let s = 1.0 + sigma1 * sigma1 + sigma2 * sigma2;
        // s² − 4σ₁²σ₂² factored as (1 + (σ₁−σ₂)²)(1 + (σ₁+σ₂)²).
        let d = sigma1 - sigma2;
        let e = sigma1 + sigma2;
        let disc = ((1.0 + d * d) * (1.0 + e * e)).sqrt();
        let a_plus = (0.5 * (s + disc)).sqrt();
        // The small root via a₊a₋ = σ₁σ₂ avoids the cancellation in s − disc.
        let a_minus = sigma1 * sigma2 / a_plus;
        Self { a_plus, a_minus }
    }
}

/// `a±(σ₁, σ₂) = sqrt(½(1+σ₁²+σ₂² ± sqrt((1+σ₁²+σ₂²)² − 4σ₁²σ₂²)))`.
///
/// Zero reduced frequencies are accepted here (they give the pure Landau
/// ladder `a₊ = 1`, `a₋ = 0`); spectrum constructors require `σⱼ > 0`.
pub fn mode_frequencies(sigma1: f64, sigma2: f64) -> Result<ModeFrequencies> {
    nonnegative("sigma1", sigma1)?;
    nonnegative("sigma2", sigma2)?;
    Ok(ModeFrequencies::from_reduced(sigma1, sigma2))
}

/// Value of a finite Riesz sum with truncation metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSum {
    pub value: f64,
    /// Number of strictly positive terms.
    pub terms_used: u64,
    /// Largest index with a nonzero term, per summation axis; `None` when
    /// the sum is empty.
    pub max_index: Option<Vec<usize>>,
}

impl TruncatedSum {
    fn empty() -> Self {
        Self {
            value: 0.0,
            terms_used: 0,
            max_index: None,
        }
    }
}

/// `x^γ` for `x > 0`, exact for the common integer exponents.
#[inline]
pub(crate) fn pos_pow(x: f64, gamma: f64) -> f64 {
    if gamma == 0.0 {
        1.0
    } else if gamma == 1.0 {
        x
    } else if gamma == 2.0 {
        x * x
    } else {
        x.powf(gamma)
    }
}

/// Length of the leading run of indices satisfying a predicate that is
/// monotone (true, …, true, false, …). Starts at `guess` and walks to the
/// exact boundary.
fn leading_count(guess: f64, pred: impl Fn(usize) -> bool) -> usize {
    let mut n = if guess.is_finite() && guess > 0.0 {
        guess as usize
    } else {
        0
    };
    while pred(n) {
        n += 1;
    }
    while n > 0 && !pred(n - 1) {
        n -= 1;
    }
    n
}

#[inline]
fn odd(i: usize) -> f64 {
    (2 * i + 1) as f64
}

/// Number of `i ≥ 0` with `residual − spacing·(2i+1) > 0`.
fn ladder_len(residual: f64, spacing: f64) -> usize {
    let gap = residual - spacing;
    if gap.is_nan() || gap <= 0.0 {
        return 0;
    }
    let guess = ((residual / spacing - 1.0) / 2.0).ceil();
    leading_count(guess, |i| residual - spacing * odd(i) > 0.0)
}

fn ladder_accumulate(residual: f64, spacing: f64, gamma: f64, acc: &mut CompensatedSum) -> usize {
    let n = ladder_len(residual, spacing);
    for i in (0..n).rev() {
        acc.add(pos_pow(residual - spacing * odd(i), gamma));
    }
    n
}

/// `Σ_{i≥0} (top − step·(2i+1))₊^γ`.
pub(crate) fn ladder_sum(top: f64, step: f64, gamma: f64) -> TruncatedSum {
    let mut acc = CompensatedSum::new();
    let n = ladder_accumulate(top, step, gamma, &mut acc);
    if n == 0 {
        return TruncatedSum::empty();
    }
    TruncatedSum {
        value: acc.value(),
        terms_used: n as u64,
        max_index: Some(vec![n - 1]),
    }
}

/// `Σ_{k,l≥0} (top − step_k(2k+1) − step_l(2l+1))₊^γ`.
pub(crate) fn lattice_sum_2d(top: f64, step_k: f64, step_l: f64, gamma: f64) -> TruncatedSum {
    let row = |k: usize| top - step_k * odd(k);
    let guess = ((top - step_l) / step_k - 1.0) / 2.0;
    let nk = leading_count(guess.ceil(), |k| row(k) - step_l > 0.0);
    if nk == 0 {
        return TruncatedSum::empty();
    }
    let mut acc = CompensatedSum::new();
    let mut terms = 0u64;
    let mut max_l = 0;
    for k in (0..nk).rev() {
        let n = ladder_accumulate(row(k), step_l, gamma, &mut acc);
        terms += n as u64;
        max_l = max_l.max(n - 1);
    }
    TruncatedSum {
        value: acc.value(),
        terms_used: terms,
        max_index: Some(vec![nk - 1, max_l]),
    }
}

/// Three-axis analogue of [`lattice_sum_2d`].
pub(crate) fn lattice_sum_3d(
    top: f64,
    step_k: f64,
    step_l: f64,
    step_j: f64,
    gamma: f64,
) -> TruncatedSum {
    let row = |k: usize| top - step_k * odd(k);
    let guess = ((top - step_l - step_j) / step_k - 1.0) / 2.0;
    let nk = leading_count(guess.ceil(), |k| (row(k) - step_l) - step_j > 0.0);
    if nk == 0 {
        return TruncatedSum::empty();
    }
    let mut acc = CompensatedSum::new();
    let mut terms = 0u64;
    let (mut max_l, mut max_j) = (0, 0);
    for k in (0..nk).rev() {
        let r = row(k);
        let guess_l = ((r - step_j) / step_l - 1.0) / 2.0;
        let nl = leading_count(guess_l.ceil(), |l| (r - step_l * odd(l)) - step_j > 0.0);
        max_l = max_l.max(nl - 1);
        for l in (0..nl).rev() {
            let n = ladder_accumulate(r - step_l * odd(l), step_j, gamma, &mut acc);
            terms += n as u64;
            max_j = max_j.max(n - 1);
        }
    }
    TruncatedSum {
        value: acc.value(),
        terms_used: terms,
        max_index: Some(vec![nk - 1, max_l, max_j]),
    }
}

/// Eigenvalue `B(a₊(2k+1) + a₋(2l+1))` of the 2D magnetic oscillator.
pub fn eigenvalue_2d(params: &OscillatorParams, k: usize, l: usize) -> f64 {
    let m = params.mode_frequencies();
    params.b() * (m.a_plus * odd(k) + m.a_minus * odd(l))
}

/// `Σ_{k,l≥0} (μ − B a₊(2k+1) − B a₋(2l+1))₊^γ`, i.e. `Tr(H_B + V)₋^γ` for
/// `V = ω₁²x₁² + ω₂²x₂² − μ`. For `γ = 0` this counts eigenvalues strictly
/// below `μ`.
pub fn riesz_mean_2d(params: &OscillatorParams) -> TruncatedSum {
    let m = params.mode_frequencies();
    let b = params.b();
    lattice_sum_2d(params.mu(), b * m.a_plus, b * m.a_minus, params.gamma())
}

/// `Σ_{m≥0} (μ − (2m+1)B)₊^γ`.
pub fn landau_riesz_sum(b: f64, mu: f64, gamma: f64) -> Result<TruncatedSum> {
    positive("B", b)?;
    finite("mu", mu)?;
    nonnegative("gamma", gamma)?;
    Ok(ladder_sum(mu, b, gamma))
}

/// `Σ_{k,l,j≥0} (μ − B a₊(2k+1) − B a₋(2l+1) − ω₃(2j+1))₊^γ`.
pub fn riesz_mean_3d(params: &OscillatorParams) -> Result<TruncatedSum> {
    let w3 = params.require_omega3()?;
    let m = params.mode_frequencies();
    let b = params.b();
    Ok(lattice_sum_3d(
        params.mu(),
        b * m.a_plus,
        b * m.a_minus,
        w3,
        params.gamma(),
    ))
}

/// `Σ_{j≥0} (Λ − ω(2j+1))₊^γ` for the 1D oscillator `−d²/dx² + ω²x²`.
pub fn riesz_mean_osc1d(omega: f64, lambda: f64, gamma: f64) -> Result<TruncatedSum> {
    positive("omega", omega)?;
    finite("Lambda", lambda)?;
    nonnegative("gamma", gamma)?;
    Ok(ladder_sum(lambda, omega, gamma))
}
