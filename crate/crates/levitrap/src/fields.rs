//! Parameterized evanescent modes and the intensity/amplitude/Rabi
//! conversions along the single modeled axis.
//!
//! The trap axis z runs from the fiber surface at z = 0 toward the cavity
//! surface at z = D (when present). A mode carries a single surface
//! intensity; its transverse profile is collapsed to that scalar. A fiber
//! mode decays as e^{-Λ z}, a cavity mode as e^{-Λ (D - z)}.

use crate::error::{Error, Result};
use crate::polarizability;

/// Which surface launches the evanescent field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceSide {
    Fiber,
    Cavity,
}

/// One exponentially decaying evanescent mode.
#[derive(Debug, Clone)]
pub struct EvanescentMode {
    /// Mode family label ("EH21", "HE11", "cavity-WGM", ...).
    pub label: String,
    /// Intensity at the launching surface (W/m^2).
    pub surface_intensity: f64,
    /// Field decay rate Λ (1/m); intensity decays at 2Λ.
    pub decay_rate: f64,
    /// Detuning of the mode from the emitter transition, ω - ω0 (rad/s).
    pub detuning: f64,
    /// Projection of the mode polarization on the dipole, in (0, 1].
    pub polarization_overlap: f64,
    pub side: SurfaceSide,
    /// Relative phase at t = 0; stored but not used by the time-averaged
    /// steady-state observables.
    pub phase: f64,
}

impl EvanescentMode {
    pub fn new(
        label: &str,
        surface_intensity: f64,
        decay_length: f64,
        detuning: f64,
        side: SurfaceSide,
    ) -> Self {
        assert!(surface_intensity >= 0.0);
        assert!(decay_length > 0.0);
        Self {
            label: label.to_string(),
            surface_intensity,
            decay_rate: 1.0 / decay_length,
            detuning,
            polarization_overlap: 1.0,
            side,
            phase: 0.0,
        }
    }

    /// Fiber mode EH21 (decay length 210 nm).
    pub fn eh21(surface_intensity: f64, detuning: f64) -> Self {
        Self::new("EH21", surface_intensity, 210e-9, detuning, SurfaceSide::Fiber)
    }

    /// Fiber mode HE11 (decay length 135 nm).
    pub fn he11(surface_intensity: f64, detuning: f64) -> Self {
        Self::new("HE11", surface_intensity, 135e-9, detuning, SurfaceSide::Fiber)
    }

    /// Far-detuned HE11 variant at its shorter decay length (81 nm).
    pub fn he11_far_detuned(surface_intensity: f64, detuning: f64) -> Self {
        Self::new("HE11", surface_intensity, 81e-9, detuning, SurfaceSide::Fiber)
    }

    /// Whispering-gallery trap field launched from the cavity surface
    /// (decay length 85 nm).
    pub fn cavity_wgm(surface_intensity: f64, detuning: f64) -> Self {
        Self::new("cavity-WGM", surface_intensity, 85e-9, detuning, SurfaceSide::Cavity)
    }

    /// Mode preset addressable by name.
    pub fn preset(name: &str, surface_intensity: f64, detuning: f64) -> Result<Self> {
        match name {
            "EH21" => Ok(Self::eh21(surface_intensity, detuning)),
            "HE11" => Ok(Self::he11(surface_intensity, detuning)),
            "HE11-far" => Ok(Self::he11_far_detuned(surface_intensity, detuning)),
            "cavity-WGM" => Ok(Self::cavity_wgm(surface_intensity, detuning)),
            other => Err(Error::Config(format!("unknown mode preset '{other}'"))),
        }
    }

    /// Distance from the launching surface for a point at axis position z.
    /// `gap` is the fiber-cavity distance D, required for cavity modes.
    pub fn distance_from_surface(&self, z: f64, gap: Option<f64>) -> f64 {
        match self.side {
            SurfaceSide::Fiber => z,
            SurfaceSide::Cavity => {
                let d = gap.expect("cavity mode needs a fiber-cavity gap");
                d - z
            }
        }
    }

    /// Local intensity at axis position z (W/m^2).
    pub fn intensity_at(&self, z: f64, gap: Option<f64>) -> f64 {
        let s = self.distance_from_surface(z, gap);
        self.surface_intensity * (-2.0 * self.decay_rate * s).exp()
    }

    /// Peak field amplitude E0(z) = sqrt(2 I(z) / ε0 c) (V/m).
    pub fn field_amplitude_at(&self, z: f64, gap: Option<f64>) -> f64 {
        polarizability::peak_field_from_intensity(self.intensity_at(z, gap))
    }

    /// Rabi frequency magnitude at z for a dipole `d` with the given
    /// local-field factor; includes the polarization overlap.
    pub fn rabi_at(&self, z: f64, gap: Option<f64>, dipole: f64, local_field: f64) -> f64 {
        polarizability::rabi_from_field(dipole, self.field_amplitude_at(z, gap), local_field)
            * self.polarization_overlap
    }

    /// z-component of ∇ log Ω: -Λ for fiber modes, +Λ for cavity modes.
    /// Independent of z for a pure exponential.
    pub fn grad_log_rabi(&self) -> f64 {
        match self.side {
            SurfaceSide::Fiber => -self.decay_rate,
            SurfaceSide::Cavity => self.decay_rate,
        }
    }

    /// Absolute mode frequency given the emitter transition ω0.
    pub fn angular_frequency(&self, omega0: f64) -> f64 {
        omega0 + self.detuning
    }
}

/// Distance pair across the fiber-cavity gap: a point at `z_fiber` from the
/// fiber surface sits at `gap - z_fiber` from the cavity surface.
pub fn opposing_geometry(z_fiber: f64, gap: f64) -> (f64, f64) {
    (z_fiber, gap - z_fiber)
}

/// Beat frequency of a symmetric red/blue pair: δ = ω2 - ω1 = 2Δ.
pub fn beat_frequency(red: &EvanescentMode, blue: &EvanescentMode) -> f64 {
    blue.detuning - red.detuning
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{EPSILON_0, SPEED_OF_LIGHT};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn surface_amplitude_convention() {
        let m = EvanescentMode::he11(1.85e9, 1.0e13);
        let e0 = m.field_amplitude_at(0.0, None);
        assert_relative_eq!(
            e0,
            (2.0 * 1.85e9 / (EPSILON_0 * SPEED_OF_LIGHT)).sqrt(),
            max_relative = 1e-12
        );
        // one decay length drops the field by e
        let e1 = m.field_amplitude_at(135e-9, None);
        assert_relative_eq!(e1, e0 / std::f64::consts::E, max_relative = 1e-12);
    }

    #[test]
    fn generic_amplitude_point() {
        let m = EvanescentMode::eh21(0.62e9, -1.0e13);
        let z = 287e-9;
        let expected = (2.0 * 0.62e9 * (-2.0 * z / 210e-9f64).exp() / (EPSILON_0 * SPEED_OF_LIGHT))
            .sqrt();
        assert_relative_eq!(m.field_amplitude_at(z, None), expected, max_relative = 1e-12);
    }

    #[test]
    fn zero_intensity_gives_zero_rabi() {
        let m = EvanescentMode::he11(0.0, 1.0e13);
        assert_abs_diff_eq!(m.rabi_at(100e-9, None, 6e-29, 2.5867), 0.0);
    }

    #[test]
    fn log_gradient_is_decay_rate() {
        let m = EvanescentMode::he11(1.85e9, 1.0e13);
        // |∇log Ω| = Λ independent of z: finite differences of log Ω.
        let d = 6e-29;
        for &z in &[50e-9, 287e-9, 900e-9] {
            let h = 1e-12;
            let lp = m.rabi_at(z + h, None, d, 1.0).ln();
            let lm = m.rabi_at(z - h, None, d, 1.0).ln();
            let grad = (lp - lm) / (2.0 * h);
            assert_relative_eq!(grad, m.grad_log_rabi(), max_relative = 1e-6);
            assert_relative_eq!(grad.abs(), m.decay_rate, max_relative = 1e-6);
        }
    }

    #[test]
    fn amplitude_gradient_matches_finite_differences() {
        let m = EvanescentMode::cavity_wgm(1.72e9, 1.0e15);
        let gap = Some(565e-9);
        for &z in &[200e-9, 270e-9, 400e-9] {
            let h = 1e-12;
            let fd = (m.field_amplitude_at(z + h, gap) - m.field_amplitude_at(z - h, gap))
                / (2.0 * h);
            let analytic = m.grad_log_rabi() * m.field_amplitude_at(z, gap);
            assert_relative_eq!(fd, analytic, max_relative = 1e-8);
        }
    }

    #[test]
    fn rabi_reference_point() {
        // Mode 2 of the near-resonant trap at 287 nm, direct arithmetic.
        let m = EvanescentMode::he11(1.85e9, 2.0 * std::f64::consts::PI * 1e13);
        let d = 9.0e-29;
        let lfc = 2.5867;
        let intensity = 1.85e9 * (-2.0 * 287e-9 / 135e-9f64).exp();
        let e0 = (2.0 * intensity / (EPSILON_0 * SPEED_OF_LIGHT)).sqrt();
        let expected = 2f64.sqrt() * d / 3f64.sqrt() * e0 * lfc / crate::constants::HBAR;
        assert_relative_eq!(
            m.rabi_at(287e-9, None, d, lfc),
            expected,
            max_relative = 1e-12
        );
    }

    #[test]
    fn opposing_geometry_distances() {
        assert_abs_diff_eq!(opposing_geometry(0.0, 900e-9).1, 900e-9);
        let (zf, zc) = opposing_geometry(450e-9, 900e-9);
        assert_abs_diff_eq!(zf, zc);
        // 565 nm gap with the sphere 270 nm from the fiber
        let (_, zc) = opposing_geometry(270e-9, 565e-9);
        assert_abs_diff_eq!(zc, 295e-9, epsilon = 1e-15);
    }

    #[test]
    fn symmetric_pair_beats_at_twice_detuning() {
        let delta = 2.0 * std::f64::consts::PI * 1e13;
        let red = EvanescentMode::eh21(0.62e9, -delta);
        let blue = EvanescentMode::he11(1.85e9, delta);
        assert_relative_eq!(beat_frequency(&red, &blue), 2.0 * delta, max_relative = 1e-12);
    }

    #[test]
    fn cavity_mode_decays_toward_fiber() {
        let m = EvanescentMode::cavity_wgm(1.72e9, 1e15);
        let gap = Some(565e-9);
        assert!(m.intensity_at(100e-9, gap) < m.intensity_at(400e-9, gap));
        assert_relative_eq!(m.intensity_at(565e-9, gap), 1.72e9, max_relative = 1e-12);
    }

    #[test]
    fn preset_lookup() {
        assert!(EvanescentMode::preset("EH21", 1e9, 1e13).is_ok());
        assert!(EvanescentMode::preset("nope", 1e9, 1e13).is_err());
    }
}
