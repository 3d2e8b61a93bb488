//! Material dispersion models and the temperature-dependent silicon-vacancy
//! emitter fits.
//!
//! Everything here is a pure function of value inputs and safe to evaluate
//! concurrently.

use num_complex::Complex64;

use crate::constants::{BOLTZMANN, ELECTRON_VOLT, EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

use std::f64::consts::{PI, TAU};

/// Validity range of the emitter fits (K).
pub const EMITTER_FIT_RANGE: (f64, f64) = (0.0, 3000.0);

/// Two-level quantum emitter with temperature-dependent transition
/// frequency, natural linewidth and transverse decay.
///
/// The bundled fits describe the silicon-vacancy center in diamond:
///
/// * zero-phonon line `λ0(T)/nm = 737 + 19.2e-8 (T/K)^2.78`,
/// * linewidth `Γ(T)/(2π GHz) = (1/9.74) [1 + 3.3 exp(-55 meV / kB T)]`,
/// * dephasing `γ_fit(T)/(2π MHz) = 16.39 + 1.9e-2 (T/K)^3`.
///
/// The transverse decay rate is `max(γ_fit, Γ/2)`: the cubic dephasing fit
/// alone drops below the radiative floor `Γ/2` under ~13 K, which would make
/// the coherence decay `γ_c = γ - Γ/2` negative.
#[derive(Debug, Clone, Copy)]
pub struct EmitterSpec {
    /// Volume density of emitters (1/m^3).
    pub density: f64,
    zpl_nm: f64,
    zpl_drift_nm: f64,
    zpl_exponent: f64,
    linewidth_base_hz: f64,
    linewidth_weight: f64,
    activation_energy: f64,
    dephasing_base_hz: f64,
    dephasing_cubic_hz: f64,
}

impl EmitterSpec {
    /// Silicon-vacancy center at the reference doping density 1.4 nm^-3.
    pub fn siv() -> Self {
        Self::siv_with_density(1.4e27)
    }

    /// Silicon-vacancy fits with an explicit emitter density (1/m^3).
    pub fn siv_with_density(density: f64) -> Self {
        assert!(density >= 0.0, "emitter density must be nonnegative");
        Self {
            density,
            zpl_nm: 737.0,
            zpl_drift_nm: 19.2e-8,
            zpl_exponent: 2.78,
            linewidth_base_hz: 1e9 / 9.74,
            linewidth_weight: 3.3,
            activation_energy: 55e-3 * ELECTRON_VOLT,
            dephasing_base_hz: 16.39e6,
            dephasing_cubic_hz: 1.9e-2 * 1e6,
        }
    }

    fn check_range(temperature: f64) -> Result<()> {
        let (lo, hi) = EMITTER_FIT_RANGE;
        if !(lo..=hi).contains(&temperature) || !temperature.is_finite() {
            return Err(Error::OutOfRange {
                what: "emitter temperature",
                value: temperature,
                lo,
                hi,
            });
        }
        Ok(())
    }

    /// Zero-phonon-line wavelength (m) at bulk temperature `t` (K).
    pub fn zpl_wavelength(&self, t: f64) -> Result<f64> {
        Self::check_range(t)?;
        Ok((self.zpl_nm + self.zpl_drift_nm * t.powf(self.zpl_exponent)) * 1e-9)
    }

    /// Transition frequency ω0 (rad/s); decreasing in temperature.
    pub fn transition_frequency(&self, t: f64) -> Result<f64> {
        Ok(TAU * SPEED_OF_LIGHT / self.zpl_wavelength(t)?)
    }

    /// Natural linewidth Γ (rad/s); increasing in temperature.
    pub fn natural_linewidth(&self, t: f64) -> Result<f64> {
        Self::check_range(t)?;
        let boltz = (-self.activation_energy / (BOLTZMANN * t)).exp(); // t = 0 -> 0
        Ok(TAU * self.linewidth_base_hz * (1.0 + self.linewidth_weight * boltz))
    }

    /// Raw cubic dephasing fit γ_fit (rad/s), before the radiative floor.
    pub fn dephasing_fit(&self, t: f64) -> Result<f64> {
        Self::check_range(t)?;
        Ok(TAU * (self.dephasing_base_hz + self.dephasing_cubic_hz * t.powi(3)))
    }

    /// Transverse decay rate γ = max(γ_fit, Γ/2) (rad/s).
    pub fn transverse_decay(&self, t: f64) -> Result<f64> {
        Ok(self.dephasing_fit(t)?.max(0.5 * self.natural_linewidth(t)?))
    }

    /// Pure coherence decay γ_c = γ - Γ/2 ≥ 0 (rad/s).
    pub fn coherence_decay(&self, t: f64) -> Result<f64> {
        Ok(self.transverse_decay(t)? - 0.5 * self.natural_linewidth(t)?)
    }

    /// Dipole moment (C m) inferred from the linewidth at temperature `t`
    /// inside a host of refractive index `n`.
    ///
    /// Uses the free-space relation Γ0 = d^2 ω0^3 / (3 ε0 π ħ c^3) together
    /// with Γ ≈ n Γ0 for an emitter embedded in the host.
    pub fn dipole_moment(&self, t: f64, host_index: f64) -> Result<f64> {
        assert!(host_index > 1.0, "host index must exceed 1");
        let gamma0 = self.natural_linewidth(t)? / host_index;
        let omega0 = self.transition_frequency(t)?;
        Ok((3.0 * EPSILON_0 * PI * HBAR * SPEED_OF_LIGHT.powi(3) * gamma0 / omega0.powi(3)).sqrt())
    }
}

/// Free-space spontaneous emission rate for a dipole moment `d` (C m) at
/// transition frequency `omega0` (rad/s).
pub fn free_space_linewidth(dipole: f64, omega0: f64) -> f64 {
    dipole * dipole * omega0.powi(3) / (3.0 * EPSILON_0 * PI * HBAR * SPEED_OF_LIGHT.powi(3))
}

/// Convenience wrappers over the bundled SiV fits.
pub fn siv_transition(t: f64) -> Result<f64> {
    EmitterSpec::siv().transition_frequency(t)
}

pub fn siv_linewidth(t: f64) -> Result<f64> {
    EmitterSpec::siv().natural_linewidth(t)
}

pub fn siv_dephasing(t: f64) -> Result<f64> {
    EmitterSpec::siv().dephasing_fit(t)
}

pub fn siv_dipole_moment(t: f64, host_index: f64) -> Result<f64> {
    EmitterSpec::siv().dipole_moment(t, host_index)
}

/// Nanosphere host: geometry, dispersion, bulk thermal constants, and the
/// embedded emitter ensemble.
#[derive(Debug, Clone, Copy)]
pub struct SphereSpec {
    /// Sphere radius (m).
    pub radius: f64,
    /// Real part of the host refractive index (held constant).
    pub refractive_index: f64,
    /// Bulk mass density (kg/m^3).
    pub mass_density: f64,
    /// Specific heat (J/(kg K)).
    pub specific_heat: f64,
    pub emitter: EmitterSpec,
}

/// Extinction band of the diamond fit: amplitude and center in wavenumbers
/// (1/cm). All bands share the Gaussian width parameter 2e5 cm^-2.
const DIAMOND_BANDS: [(f64, f64); 3] = [(15.0, 2100.0), (1.5, 3200.0), (0.35, 4400.0)];
const DIAMOND_BAND_WIDTH_SQ: f64 = 2e5;
const DIAMOND_EXTINCTION_FLOOR: f64 = 1e-8;

impl SphereSpec {
    /// Nanodiamond doped with SiV at the reference density.
    ///
    /// Bulk constants: mass density 3515 kg/m^3, specific heat
    /// 509 J/(kg K), Re n = 2.4.
    pub fn nanodiamond_siv(radius: f64) -> Self {
        assert!(radius > 0.0);
        Self {
            radius,
            refractive_index: 2.4,
            mass_density: 3515.0,
            specific_heat: 509.0,
            emitter: EmitterSpec::siv(),
        }
    }

    pub fn volume(&self) -> f64 {
        4.0 / 3.0 * PI * self.radius.powi(3)
    }

    pub fn mass(&self) -> f64 {
        self.mass_density * self.volume()
    }

    /// Number of embedded emitters N = ρ_q V.
    pub fn emitter_count(&self) -> f64 {
        self.emitter.density * self.volume()
    }

    /// Imaginary part of the host refractive index at `omega` (rad/s).
    pub fn extinction(&self, omega: f64) -> f64 {
        diamond_extinction(omega)
    }

    /// Complex dielectric function ε(ω) = (Re n + i Im n)^2.
    pub fn epsilon(&self, omega: f64) -> Complex64 {
        let n = Complex64::new(self.refractive_index, self.extinction(omega));
        n * n
    }

    /// Im[(ε - 1)/(ε + 2)] at `omega`, the small-sphere absorption factor.
    pub fn clausius_mossotti_im(&self, omega: f64) -> f64 {
        let eps = self.epsilon(omega);
        ((eps - 1.0) / (eps + 2.0)).im
    }
}

/// Imaginary part of the diamond refractive index.
///
/// Three Gaussian multi-phonon bands on top of a 1e-8 floor, parameterized
/// by the wavenumber x = ω/(100 · 2πc) in 1/cm:
///
/// `Im n = 1e-8 + (1/4πx) Σ_i A_i exp(-(x_i - x)^2 / 2e5)`.
pub fn diamond_extinction(omega: f64) -> f64 {
    assert!(omega > 0.0, "extinction needs a positive frequency");
    let x = omega / (100.0 * TAU * SPEED_OF_LIGHT);
    let mut bands = 0.0;
    for (amp, center) in DIAMOND_BANDS {
        let d = center - x;
        bands += amp * (-d * d / DIAMOND_BAND_WIDTH_SQ).exp();
    }
    DIAMOND_EXTINCTION_FLOOR + bands / (4.0 * PI * x)
}

/// Dielectric response of a semi-infinite half space evaluated on the
/// imaginary frequency axis: ε(ix) = 1 + Σ_j B_j ω_j^2 / (ω_j^2 + x^2).
///
/// Real, ≥ 1 and monotonically nonincreasing in x for positive oscillator
/// strengths.
#[derive(Debug, Clone)]
pub struct HalfSpaceOptics {
    /// (strength B_j, resonance ω_j in rad/s)
    terms: Vec<(f64, f64)>,
}

impl HalfSpaceOptics {
    /// Fused silica, Sellmeier coefficients of the standard three-term fit
    /// (B = 0.6961663, 0.4079426, 0.8974794 at 68.4043 nm, 116.2414 nm,
    /// 9.896161 um).
    pub fn silica() -> Self {
        let coeffs = [
            (0.696_166_3, 0.068_404_3e-6),
            (0.407_942_6, 0.116_241_4e-6),
            (0.897_479_4, 9.896_161e-6),
        ];
        Self {
            terms: coeffs
                .iter()
                .map(|&(b, lambda)| (b, TAU * SPEED_OF_LIGHT / lambda))
                .collect(),
        }
    }

    /// Trivial half space with ε ≡ 1 (no surface).
    pub fn vacuum() -> Self {
        Self { terms: Vec::new() }
    }

    /// Near-ideal mirror: a single oscillator of strength `epsilon_static`
    /// resonating far above any frequency of interest. Useful for limit
    /// checks against the perfect-conductor result.
    pub fn mirror_like(epsilon_static: f64) -> Self {
        Self {
            terms: vec![(epsilon_static, 1e25)],
        }
    }

    /// ε(ix) for x ≥ 0 (rad/s).
    pub fn epsilon_imag_axis(&self, x: f64) -> f64 {
        assert!(x >= 0.0);
        1.0 + self
            .terms
            .iter()
            .map(|&(b, w)| b * w * w / (w * w + x * x))
            .sum::<f64>()
    }

    /// Static limit ε(i·0).
    pub fn static_epsilon(&self) -> f64 {
        self.epsilon_imag_axis(0.0)
    }
}

/// Silica ε(ix) through the bundled Sellmeier continuation.
pub fn silica_epsilon_imag_axis(x: f64) -> f64 {
    HalfSpaceOptics::silica().epsilon_imag_axis(x)
}

/// Material presets addressable by name from the configuration layer.
pub enum MaterialPreset {
    NanodiamondSiv(SphereSpec),
    Silica(HalfSpaceOptics),
}

pub fn material_preset(name: &str) -> Result<MaterialPreset> {
    match name {
        "nanodiamond-siv" => Ok(MaterialPreset::NanodiamondSiv(SphereSpec::nanodiamond_siv(
            15e-9,
        ))),
        "silica" => Ok(MaterialPreset::Silica(HalfSpaceOptics::silica())),
        other => Err(Error::Config(format!("unknown material preset '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn zpl_at_zero_kelvin_is_737_nm() {
        let siv = EmitterSpec::siv();
        assert_abs_diff_eq!(siv.zpl_wavelength(0.0).unwrap(), 737e-9, epsilon = 1e-20);
        assert_relative_eq!(
            siv.transition_frequency(0.0).unwrap(),
            2.556e15,
            max_relative = 1e-3
        );
    }

    #[test]
    fn zpl_shift_below_one_kelvin_is_negligible() {
        let siv = EmitterSpec::siv();
        let d = siv.zpl_wavelength(1.0).unwrap() - siv.zpl_wavelength(0.0).unwrap();
        assert!(d.abs() < 1e-6 * 1e-9);
    }

    #[test]
    fn zpl_matches_direct_fit_arithmetic() {
        // Direct evaluation of the printed fit, written out independently.
        let t: f64 = 587.0;
        let expected_nm = 737.0 + 19.2e-8 * t.powf(2.78);
        let got = EmitterSpec::siv().zpl_wavelength(t).unwrap();
        assert_relative_eq!(got, expected_nm * 1e-9, max_relative = 1e-12);
    }

    #[test]
    fn transition_decreases_with_temperature() {
        let siv = EmitterSpec::siv();
        let mut prev = f64::INFINITY;
        for i in 0..30 {
            let t = 100.0 * i as f64;
            let w = siv.transition_frequency(t).unwrap();
            assert!(w < prev);
            prev = w;
        }
    }

    #[test]
    fn linewidth_zero_kelvin_limit() {
        let g = siv_linewidth(0.0).unwrap();
        assert_relative_eq!(g / TAU, 1.027e8, max_relative = 1e-3);
    }

    #[test]
    fn linewidth_matches_direct_fit_arithmetic() {
        let t = 300.0;
        let expected =
            TAU * 1e9 / 9.74 * (1.0 + 3.3 * (-55e-3 * ELECTRON_VOLT / (BOLTZMANN * t)).exp());
        assert_relative_eq!(siv_linewidth(t).unwrap(), expected, max_relative = 1e-12);
    }

    #[test]
    fn linewidth_monotone() {
        assert!(siv_linewidth(600.0).unwrap() > siv_linewidth(300.0).unwrap());
    }

    #[test]
    fn dephasing_zero_kelvin_constant_term() {
        assert_relative_eq!(siv_dephasing(0.0).unwrap() / TAU, 16.39e6, max_relative = 1e-12);
    }

    #[test]
    fn dephasing_at_100_kelvin() {
        // 16.39 + 1.9e-2 * 100^3 MHz = 1.90006e4 MHz
        let expected = TAU * (16.39 + 1.9e-2 * 1e6) * 1e6;
        assert_relative_eq!(siv_dephasing(100.0).unwrap(), expected, max_relative = 1e-12);
    }

    #[test]
    fn transverse_decay_dominates_radiative_floor_at_300_kelvin() {
        let siv = EmitterSpec::siv();
        assert!(siv.dephasing_fit(300.0).unwrap() >= 0.5 * siv.natural_linewidth(300.0).unwrap());
    }

    #[test]
    fn transverse_decay_keeps_radiative_floor_everywhere() {
        let siv = EmitterSpec::siv();
        for i in 0..=300 {
            let t = 10.0 * i as f64;
            let gamma = siv.transverse_decay(t).unwrap();
            let floor = 0.5 * siv.natural_linewidth(t).unwrap();
            assert!(gamma >= floor * (1.0 - 1e-14), "floor violated at {t} K");
            assert!(siv.coherence_decay(t).unwrap() >= -1e-6);
        }
    }

    #[test]
    fn fits_positive_and_nondecreasing() {
        let siv = EmitterSpec::siv();
        let mut prev_g = 0.0;
        let mut prev_dep = 0.0;
        let mut prev_l = 0.0;
        for i in 0..=600 {
            let t = 5.0 * i as f64;
            let g = siv.natural_linewidth(t).unwrap();
            let dep = siv.transverse_decay(t).unwrap();
            let l = siv.zpl_wavelength(t).unwrap();
            assert!(g > 0.0 && dep > 0.0 && l > 0.0);
            assert!(g >= prev_g && dep >= prev_dep && l >= prev_l);
            prev_g = g;
            prev_dep = dep;
            prev_l = l;
        }
    }

    #[test]
    fn out_of_range_temperature_rejected() {
        assert!(siv_transition(-1.0).is_err());
        assert!(siv_transition(3000.1).is_err());
    }

    #[test]
    fn dipole_round_trips_to_linewidth() {
        let siv = EmitterSpec::siv();
        for &t in &[0.0, 300.0, 587.0, 1500.0] {
            let d = siv.dipole_moment(t, 2.4).unwrap();
            let gamma0 = free_space_linewidth(d, siv.transition_frequency(t).unwrap());
            assert_relative_eq!(
                gamma0,
                siv.natural_linewidth(t).unwrap() / 2.4,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn dipole_zero_kelvin_reference_value() {
        // Independent arithmetic: Γ/2π = 1e9/9.74 Hz, λ0 = 737 nm, n = 2.4.
        let gamma0 = TAU * 1e9 / 9.74 / 2.4;
        let omega0 = TAU * SPEED_OF_LIGHT / 737e-9;
        let expected =
            (3.0 * EPSILON_0 * PI * HBAR * SPEED_OF_LIGHT.powi(3) * gamma0 / omega0.powi(3))
                .sqrt();
        assert_relative_eq!(
            siv_dipole_moment(0.0, 2.4).unwrap(),
            expected,
            max_relative = 1e-12
        );
        // ~6.2e-29 C m
        assert!(expected > 5e-29 && expected < 8e-29);
    }

    #[test]
    fn dipole_varies_continuously() {
        // One-kelvin step near room temperature moves d by ~1.0e-3
        // relative (dominated by the linewidth activation term).
        let siv = EmitterSpec::siv();
        let d300 = siv.dipole_moment(300.0, 2.4).unwrap();
        let d299 = siv.dipole_moment(299.0, 2.4).unwrap();
        let step = ((d300 - d299) / d300).abs();
        assert!(step < 1.5e-3, "step {step:.3e}");
        assert!(step > 1e-4, "suspiciously flat: {step:.3e}");
    }

    #[test]
    fn extinction_peak_of_first_band() {
        // At x = 2100 1/cm the first band contributes 15/(4π·2100); the
        // others are Gaussian-suppressed by hundreds of widths.
        let x = 2100.0;
        let omega = x * 100.0 * TAU * SPEED_OF_LIGHT;
        let f2 = 1.5 * (-(3200.0f64 - x).powi(2) / 2e5).exp();
        let f3 = 0.35 * (-(4400.0f64 - x).powi(2) / 2e5).exp();
        let expected = 1e-8 + (15.0 + f2 + f3) / (4.0 * PI * x);
        assert_relative_eq!(diamond_extinction(omega), expected, max_relative = 1e-12);
        assert_relative_eq!(expected, 5.68e-4, max_relative = 2e-3);
    }

    #[test]
    fn extinction_floor_far_from_bands() {
        // 200 nm -> x = 5e4 1/cm, all bands dead.
        let omega = TAU * SPEED_OF_LIGHT / 200e-9;
        assert_abs_diff_eq!(diamond_extinction(omega), 1e-8, epsilon = 1e-12);
    }

    #[test]
    fn diamond_is_passive_across_band() {
        let sphere = SphereSpec::nanodiamond_siv(15e-9);
        for i in 0..1000 {
            // 0.1 um to 20 um
            let lambda = 0.1e-6 * (200.0f64).powf(i as f64 / 999.0);
            let omega = TAU * SPEED_OF_LIGHT / lambda;
            assert!(sphere.epsilon(omega).im >= 0.0);
            assert!(sphere.clausius_mossotti_im(omega) > 0.0);
        }
    }

    #[test]
    fn sphere_derived_quantities() {
        let sphere = SphereSpec::nanodiamond_siv(15e-9);
        assert_relative_eq!(sphere.volume(), 1.4137167e-23, max_relative = 1e-6);
        assert_relative_eq!(sphere.mass(), 3515.0 * 1.4137167e-23, max_relative = 1e-6);
        assert_relative_eq!(sphere.emitter_count(), 1.98e4, max_relative = 2e-2);
    }

    #[test]
    fn silica_static_value_matches_sellmeier_sum() {
        // 1 + ΣB_j evaluated independently.
        let expected = 1.0 + 0.6961663 + 0.4079426 + 0.8974794;
        assert_relative_eq!(
            HalfSpaceOptics::silica().static_epsilon(),
            expected,
            max_relative = 1e-12
        );
    }

    #[test]
    fn silica_transparent_at_high_frequency() {
        let eps = silica_epsilon_imag_axis(1e18);
        assert!(eps - 1.0 < 1e-3);
        assert!(eps >= 1.0);
    }

    #[test]
    fn silica_monotone_nonincreasing_on_log_grid() {
        let silica = HalfSpaceOptics::silica();
        let mut prev = f64::INFINITY;
        for i in 0..100 {
            let x = 1e10 * (1e8f64).powf(i as f64 / 99.0);
            let eps = silica.epsilon_imag_axis(x);
            assert!(eps <= prev && eps >= 1.0);
            prev = eps;
        }
    }

    #[test]
    fn presets_resolve_by_name() {
        assert!(matches!(
            material_preset("nanodiamond-siv"),
            Ok(MaterialPreset::NanodiamondSiv(_))
        ));
        assert!(matches!(
            material_preset("silica"),
            Ok(MaterialPreset::Silica(_))
        ));
        assert!(material_preset("unobtainium").is_err());
    }
}
