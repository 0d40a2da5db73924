//! Closed forms of the semiclassical phase-space functionals for quadratic
//! potentials.
//!
//! All of them reduce to the ball integral
//! `∫_{ℝ^d} (E − |y|²)₊^γ dy = π^{d/2} Γ(γ+1) / Γ(γ+1+d/2) · E^{γ+d/2}`
//! after rescaling `yⱼ = ωⱼxⱼ`. Only `d = 2` and `d = 4` occur, where the
//! gamma ratio is the rational `1/(γ+1)` resp. `1/((γ+1)(γ+2))`.

use serde::{Deserialize, Serialize};

use crate::error::{finite, nonnegative, positive};
use crate::spectra::{ladder_sum, OscillatorParams};
use crate::Result;

/// Which closed form produced a [`PhaseSpaceValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaId {
    Magnetic2d,
    NonMagnetic2d,
    Magnetic3d,
    Oscillator1d,
}

impl FormulaId {
    /// Exponent `e` with `value(sμ, sB, sω) = s^e · value(μ, B, ω)`.
    ///
    /// Every closed form here carries `γ + d/2` powers of energy against
    /// `d/2` inverse frequencies, so the net degree is `γ` throughout.
    pub fn scaling_exponent(self, gamma: f64) -> f64 {
        gamma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceValue {
    pub value: f64,
    pub formula_id: FormulaId,
}

/// `(B/2π) Σ_m ∫_{ℝ²} ((2m+1)B + ω₁²x₁² + ω₂²x₂² − μ)₋^γ dx`
/// `= B/(2(γ+1)ω₁ω₂) · Σ_m (μ − (2m+1)B)₊^{γ+1}`.
pub fn magnetic_semiclassic_2d(params: &OscillatorParams) -> PhaseSpaceValue {
    let g = params.gamma();
    let landau = ladder_sum(params.mu(), params.b(), g + 1.0).value;
    let value = params.b() / (2.0 * (g + 1.0) * params.omega1() * params.omega2()) * landau;
    PhaseSpaceValue {
        value,
        formula_id: FormulaId::Magnetic2d,
    }
}

/// `(2π)⁻² ∬ (|p|² + ω₁²x₁² + ω₂²x₂² − μ)₋^γ dx dp`
/// `= μ₊^{γ+2} / (4(γ+1)(γ+2)ω₁ω₂)`.
pub fn phase_space_2d(omega1: f64, omega2: f64, mu: f64, gamma: f64) -> Result<PhaseSpaceValue> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    finite("mu", mu)?;
    nonnegative("gamma", gamma)?;
    let value = if mu > 0.0 {
        mu.powf(gamma + 2.0) / (4.0 * (gamma + 1.0) * (gamma + 2.0) * omega1 * omega2)
    } else {
        0.0
    };
    Ok(PhaseSpaceValue {
        value,
        formula_id: FormulaId::NonMagnetic2d,
    })
}

/// `B/(2π)² Σ_m ∬ ((2m+1)B + p₃² + ω₁²x₁² + ω₂²x₂² + ω₃²x₃² − μ)₋^γ dx dp₃`
/// `= B/(4(γ+1)(γ+2)ω₁ω₂ω₃) · Σ_m (μ − (2m+1)B)₊^{γ+2}`.
pub fn magnetic_semiclassic_3d(params: &OscillatorParams) -> Result<PhaseSpaceValue> {
    let w3 = params.omega3().ok_or(crate::Error::domain(
        "omega3",
        f64::NAN,
        "required for 3D operations",
    ))?;
    let g = params.gamma();
    let landau = ladder_sum(params.mu(), params.b(), g + 2.0).value;
    let denom = 4.0 * (g + 1.0) * (g + 2.0) * params.omega1() * params.omega2() * w3;
    Ok(PhaseSpaceValue {
        value: params.b() / denom * landau,
        formula_id: FormulaId::Magnetic3d,
    })
}

/// `(1/2π) ∬ (p² + ω²x² − Λ)₋^γ dx dp = Λ₊^{γ+1} / (2(γ+1)ω)`.
pub fn semiclassic_osc1d(omega: f64, lambda: f64, gamma: f64) -> Result<PhaseSpaceValue> {
    positive("omega", omega)?;
    finite("Lambda", lambda)?;
    nonnegative("gamma", gamma)?;
    let value = if lambda > 0.0 {
        lambda.powf(gamma + 1.0) / (2.0 * (gamma + 1.0) * omega)
    } else {
        0.0
    };
    Ok(PhaseSpaceValue {
        value,
        formula_id: FormulaId::Oscillator1d,
    })
}
