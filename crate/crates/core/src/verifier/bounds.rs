use crate::error::{finite, nonnegative, positive};
use crate::semiclassics::{magnetic_semiclassic_2d, magnetic_semiclassic_3d, semiclassic_osc1d};
use crate::spectra::{
    ladder_sum, lattice_sum_2d, mode_frequencies, riesz_mean_2d, riesz_mean_3d, riesz_mean_osc1d,
    ModeFrequencies, OscillatorParams, TruncatedSum,
};
use crate::Result;

use super::BoundReport;

/// Constant of the 2D bound for arbitrary potentials (`γ ≥ 1`).
pub const GENERAL_CONSTANT_2D: f64 = 3.0;

/// Sharp constant of the 3D bound for the quadratic family: `1` for `γ ≥ 1`,
/// `2(γ/(γ+1))^γ` below.
pub fn sharp_constant_3d(gamma: f64) -> f64 {
    if gamma >= 1.0 {
        1.0
    } else {
        2.0 * (gamma / (gamma + 1.0)).powf(gamma)
    }
}

/// The 1D oscillator uses the same constants as the separable 3D case.
pub fn sharp_constant_osc1d(gamma: f64) -> f64 {
    sharp_constant_3d(gamma)
}

/// Smallest tabulated 3D constant for general potentials, if any applies.
pub fn general_constant_3d(gamma: f64) -> Option<f64> {
    if gamma >= 1.5 {
        Some(3.0)
    } else if gamma >= 1.0 {
        Some(std::f64::consts::PI * 3f64.sqrt())
    } else if gamma >= 0.5 {
        Some(6.0)
    } else {
        None
    }
}

/// `Tr(H_B + V)₋^γ ≤ ρ₂ · (B/2π) Σ_m ∫ ((2m+1)B + V)₋^γ dx` for
/// `V = ω₁²x₁² + ω₂²x₂² − μ`.
pub fn verify_main_2d(params: &OscillatorParams, rho2: f64) -> Result<BoundReport> {
    positive("rho", rho2)?;
    let lhs = riesz_mean_2d(params).value;
    let rhs = magnetic_semiclassic_2d(params).value;
    Ok(BoundReport::with_default_tolerance(lhs, rhs, rho2))
}

/// Left sum and right side of the dimensionless sharp 2D bound.
pub(crate) fn mainequiv_parts(
    modes: ModeFrequencies,
    lambda: f64,
    gamma: f64,
) -> (TruncatedSum, f64) {
    let lhs = lattice_sum_2d(lambda, modes.a_plus, modes.a_minus, gamma);
    let landau = ladder_sum(lambda, 1.0, gamma + 1.0).value;
    let rhs = landau / (2.0 * (gamma + 1.0) * modes.a_minus * modes.a_plus);
    (lhs, rhs)
}

/// Dimensionless form of [`verify_main_2d`] with `ρ₂ = 1`:
/// `Σ_{k,l} (Λ − a₊(2k+1) − a₋(2l+1))₊^γ ≤ 1/(2(γ+1)a₋a₊) Σ_m (Λ − (2m+1))₊^{γ+1}`.
pub fn verify_mainequiv(sigma1: f64, sigma2: f64, lambda: f64, gamma: f64) -> Result<BoundReport> {
    positive("sigma1", sigma1)?;
    positive("sigma2", sigma2)?;
    finite("Lambda", lambda)?;
    nonnegative("gamma", gamma)?;
    let modes = mode_frequencies(sigma1, sigma2)?;
    let (lhs, rhs) = mainequiv_parts(modes, lambda, gamma);
    Ok(BoundReport::with_default_tolerance(lhs.value, rhs, 1.0))
}

/// 3D analogue: `Tr(Ĥ_B + V̂)₋^γ ≤ ρ₃ · B/(2π)² Σ_m ∬ (...)₋^γ dx dp₃`.
pub fn verify_main_3d(params: &OscillatorParams, rho3: f64) -> Result<BoundReport> {
    positive("rho", rho3)?;
    let lhs = riesz_mean_3d(params)?.value;
    let rhs = magnetic_semiclassic_3d(params)?.value;
    Ok(BoundReport::with_default_tolerance(lhs, rhs, rho3))
}

/// `Σ_j (Λ − ω(2j+1))₊^γ ≤ c_γ · Λ₊^{γ+1}/(2(γ+1)ω)` with the sharp `c_γ`.
pub fn verify_osc1d(omega: f64, lambda: f64, gamma: f64) -> Result<BoundReport> {
    let lhs = riesz_mean_osc1d(omega, lambda, gamma)?.value;
    let rhs = semiclassic_osc1d(omega, lambda, gamma)?.value;
    Ok(BoundReport::with_default_tolerance(
        lhs,
        rhs,
        sharp_constant_osc1d(gamma),
    ))
}
