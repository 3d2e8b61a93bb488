//! Bulk and quantum polarizabilities, saturation, the polarizability ratio
//! η, and the Lorentz-Lorenz effective index.
//!
//! Field conventions used across the crate: a mode of intensity I carries
//! the peak amplitude E0 = sqrt(2 I / (ε0 c)), and the Rabi frequency of an
//! orientation-averaged dipole d driven by E0 is Ω = √2 (d/√3) E0 / ħ,
//! multiplied by the Lorentz local-field factor for emitters embedded in
//! the sphere.

use num_complex::Complex64;

use crate::constants::{EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

use std::f64::consts::PI;

/// Drive and emitter rates entering the steady-state response.
#[derive(Debug, Clone, Copy)]
pub struct PolarizabilityContext {
    /// Detuning Δ = ω - ω0 (rad/s).
    pub detuning: f64,
    /// Rabi frequency Ω ≥ 0 (rad/s).
    pub rabi_frequency: f64,
    /// Natural linewidth Γ (rad/s).
    pub natural_linewidth: f64,
    /// Transverse decay γ (rad/s).
    pub transverse_decay: f64,
}

/// Static bulk polarizability of a dielectric sphere in the point-dipole
/// approximation: α_s = 3 ε0 V (n^2 - 1)/(n^2 + 2).
pub fn bulk_polarizability(radius: f64, refractive_index: f64) -> f64 {
    assert!(radius > 0.0 && refractive_index > 0.0);
    let volume = 4.0 / 3.0 * PI * radius.powi(3);
    let n2 = refractive_index * refractive_index;
    3.0 * EPSILON_0 * volume * (n2 - 1.0) / (n2 + 2.0)
}

/// Saturation parameter s = Ω^2 / [γ Γ (1 + Δ^2/γ^2)].
pub fn saturation(ctx: &PolarizabilityContext) -> f64 {
    let g = ctx.transverse_decay;
    let rel = 1.0 + (ctx.detuning / g).powi(2);
    ctx.rabi_frequency.powi(2) / (g * ctx.natural_linewidth * rel)
}

/// Dispersive quantum polarizability of a driven two-level emitter.
///
/// Evaluates the algebraically simplified form
/// α_q = -2 Δ d^2 / [3 ħ (γ^2 + Δ^2) (1 + s)], which is regular at Ω = 0
/// and equal to the s/(s+1)-weighted expression for Ω > 0.
pub fn quantum_polarizability(ctx: &PolarizabilityContext, dipole: f64) -> f64 {
    let g = ctx.transverse_decay;
    let denom = (g * g + ctx.detuning * ctx.detuning) * (1.0 + saturation(ctx));
    -2.0 * ctx.detuning * dipole * dipole / (3.0 * HBAR * denom)
}

/// Full complex steady-state polarizability; the real part is
/// [`quantum_polarizability`], the imaginary part the absorptive response.
pub fn quantum_polarizability_complex(ctx: &PolarizabilityContext, dipole: f64) -> Complex64 {
    let g = ctx.transverse_decay;
    let denom = (g * g + ctx.detuning * ctx.detuning) * (1.0 + saturation(ctx));
    Complex64::new(-ctx.detuning, g) * 2.0 * dipole * dipole / (3.0 * HBAR * denom)
}

/// Detuning magnitude maximizing |α_q|: |Δ| = γ sqrt(1 + Ω^2/(γΓ)).
pub fn optimal_detuning(rabi: f64, transverse_decay: f64, linewidth: f64) -> f64 {
    transverse_decay * (1.0 + rabi * rabi / (transverse_decay * linewidth)).sqrt()
}

/// Ratio η = |α_q/α_s| at the optimal detuning:
///
/// η = (λ^3/R^3) · 2/(4π)^3 · (n^2+2)/(n^2-1) · Γ/(nγ) · [1 + Ω^2/(γΓ)]^{-1/2}.
pub fn ratio_eta(radius: f64, refractive_index: f64, wavelength: f64, ctx: &PolarizabilityContext) -> f64 {
    let n2 = refractive_index * refractive_index;
    let drive = 1.0 + ctx.rabi_frequency.powi(2) / (ctx.transverse_decay * ctx.natural_linewidth);
    (wavelength / radius).powi(3) * 2.0 / (4.0 * PI).powi(3) * (n2 + 2.0) / (n2 - 1.0)
        * ctx.natural_linewidth
        / (refractive_index * ctx.transverse_decay)
        / drive.sqrt()
}

/// Effective refractive index of the emitter ensemble from the
/// Lorentz-Lorenz relation ρ ᾱ/(3 ε0) = (n̄^2 - 1)/(n̄^2 + 2), inverted
/// for n̄.
pub fn effective_index(density: f64, alpha: Complex64) -> Result<Complex64> {
    let l = alpha * density / (3.0 * EPSILON_0);
    if (l - 1.0).norm() < 1e-12 {
        return Err(Error::SingularInput(format!(
            "Lorentz-Lorenz pole: ρα/(3ε0) = {l}"
        )));
    }
    Ok(((1.0 + 2.0 * l) / (1.0 - l)).sqrt())
}

/// Forward Lorentz-Lorenz relation: ρᾱ/(3 ε0) from n̄.
pub fn lorentz_lorenz_mixing(effective_index: Complex64) -> Complex64 {
    let n2 = effective_index * effective_index;
    (n2 - 1.0) / (n2 + 2.0)
}

/// Lorentz local-field correction (n^2 + 2)/3 for the field inside the host.
pub fn local_field_factor(refractive_index: f64) -> f64 {
    (refractive_index * refractive_index + 2.0) / 3.0
}

/// Peak field amplitude E0 = sqrt(2 I / (ε0 c)) of a mode of intensity I.
pub fn peak_field_from_intensity(intensity: f64) -> f64 {
    assert!(intensity >= 0.0);
    (2.0 * intensity / (EPSILON_0 * SPEED_OF_LIGHT)).sqrt()
}

/// Rabi frequency of an orientation-averaged dipole in a field of peak
/// amplitude E0, enhanced by the local-field factor of the host.
pub fn rabi_from_field(dipole: f64, peak_field: f64, local_field: f64) -> f64 {
    2f64.sqrt() * dipole / 3f64.sqrt() * peak_field * local_field / HBAR
}

/// Rabi frequency directly from a mode intensity.
pub fn rabi_from_intensity(intensity: f64, dipole: f64, local_field: f64) -> f64 {
    rabi_from_field(dipole, peak_field_from_intensity(intensity), local_field)
}
