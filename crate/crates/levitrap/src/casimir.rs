//! Casimir-Polder potential of a polarizable object above a dielectric
//! half space.
//!
//! For a polarizability α(iξ) at distance z from a half space of
//! permittivity ε(iξ),
//!
//! ```text
//! U(z) = ħ/(8 c² π² ε0) ∫0∞ dx x² α(ix) ∫x/c∞ dk e^{-2kz}
//!        × [ (k-g)/(k+g) + (1 - 2k²c²/x²) (εk-g)/(εk+g) ],
//! g(x,k) = sqrt(x²/c² (ε(ix)-1) + k²),
//! ```
//!
//! which is negative (attractive) for the positive α models used here. The
//! inner integral is mapped with k = (x/c) cosh t; the outer integral runs
//! on geometric panels up to 1000 c/z.

use crate::constants::{EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::materials::HalfSpaceOptics;
use crate::numerics;

use std::f64::consts::PI;

/// Polarizability model entering the potential.
#[derive(Debug, Clone, Copy)]
pub enum CasimirPolarizability {
    /// Two-level emitter: α(ix) = 2 d² ω0 / [3ħ (ω0² + x²)].
    Emitter { dipole: f64, transition: f64 },
    /// Dispersionless dielectric sphere: α = 3 ε0 V (n²-1)/(n²+2).
    Sphere { alpha_static: f64 },
}

impl CasimirPolarizability {
    /// α(ix) on the imaginary frequency axis (F m²).
    pub fn imag_axis(&self, x: f64) -> f64 {
        match *self {
            CasimirPolarizability::Emitter { dipole, transition } => {
                alpha_emitter_imag_axis(x, dipole, transition)
            }
            CasimirPolarizability::Sphere { alpha_static } => alpha_static,
        }
    }
}

/// Emitter polarizability continued to the imaginary axis.
pub fn alpha_emitter_imag_axis(x: f64, dipole: f64, transition: f64) -> f64 {
    2.0 * dipole * dipole * transition / (3.0 * HBAR * (transition * transition + x * x))
}

/// Inputs of one potential evaluation.
#[derive(Debug, Clone)]
pub struct CasimirInputs<'a> {
    /// Distance from the half-space surface (m), > 0.
    pub distance: f64,
    pub half_space: &'a HalfSpaceOptics,
    pub model: CasimirPolarizability,
}

/// Angular bracket of the reflection integrand at p = cosh t.
fn bracket(eps: f64, p: f64) -> f64 {
    // q/p parameterization keeps everything well-conditioned for large p.
    let q = (p * p - 1.0 + eps).sqrt();
    (p - q) / (p + q) + (1.0 - 2.0 * p * p) * (eps * p - q) / (eps * p + q)
}

/// Inner k-integral after the substitution k = (x/c) cosh t:
///
/// I(x) = (x/c) ∫0∞ dt sinh t e^{-2 (xz/c) cosh t} B(cosh t).
fn inner_integral(eps: f64, x_over_c: f64, z: f64) -> f64 {
    if eps == 1.0 {
        return 0.0;
    }
    let s = 2.0 * x_over_c * z; // exponent scale, e^{-s cosh t}
    // Truncate where the exponential is 1e-20 below its t = 0 value.
    let reach = 1.0 + 46.0 / s.max(1e-300);
    let t_max = reach.min(1e300).acosh();
    let f = |t: f64| {
        let p = t.cosh();
        t.sinh() * (-s * p).exp() * bracket(eps, p)
    };
    // Scale estimate from a coarse pass keeps the tolerance relative.
    let coarse = numerics::adaptive_simpson(&f, 0.0, t_max, f64::INFINITY).abs();
    let tol = 1e-9 * coarse.max(1e-280);
    x_over_c * numerics::adaptive_simpson(&f, 0.0, t_max, tol)
}

/// Casimir-Polder potential (J); negative for the models used here.
pub fn cp_potential(inputs: &CasimirInputs) -> Result<f64> {
    cp_moment(inputs, 0)
}

/// Casimir-Polder force -dU/dz (J/m = N), obtained by differentiating
/// under the integral (the e^{-2kz} factor brings down -2k). Negative
/// toward the surface.
pub fn cp_force(inputs: &CasimirInputs) -> Result<f64> {
    cp_moment(inputs, 1)
}

/// Shared quadrature: moment 0 is the potential, moment 1 the force.
fn cp_moment(inputs: &CasimirInputs, moment: u8) -> Result<f64> {
    let z = inputs.distance;
    if z <= 0.0 || !z.is_finite() {
        return Err(Error::OutOfRange {
            what: "surface distance",
            value: z,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }

    let c = SPEED_OF_LIGHT;
    let prefactor = HBAR / (8.0 * c * c * PI * PI * EPSILON_0);

    let outer = |x: f64| -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let eps = inputs.half_space.epsilon_imag_axis(x);
        let alpha = inputs.model.imag_axis(x);
        let x_over_c = x / c;
        let inner = match moment {
            0 => inner_integral(eps, x_over_c, z),
            _ => inner_force_integral(eps, x_over_c, z),
        };
        x * x * alpha * inner
    };

    // Geometric panels from well below the 1/z scale up to 1000 c/z, with a
    // linear panel closing the x -> 0 end where the integrand tends to a
    // constant.
    let x_scale = c / z;
    let x_lo = 1e-4 * x_scale;
    let x_hi = 1e3 * x_scale;
    let head = numerics::adaptive_simpson(&outer, 0.0, x_lo, f64::INFINITY);
    let head = numerics::adaptive_simpson(&outer, 0.0, x_lo, 1e-8 * head.abs().max(1e-300));
    let tail = numerics::integrate_log_panels(&outer, x_lo, x_hi, 8, 1e-8);
    Ok(prefactor * (head + tail))
}

/// Inner integral of the force: d/dz of e^{-2kz} gives -2k; the reported
/// value is -dU/dz, so the sign flips once more.
fn inner_force_integral(eps: f64, x_over_c: f64, z: f64) -> f64 {
    if eps == 1.0 {
        return 0.0;
    }
    let s = 2.0 * x_over_c * z;
    let reach = 1.0 + 46.0 / s.max(1e-300);
    let t_max = reach.min(1e300).acosh();
    let f = |t: f64| {
        let p = t.cosh();
        // extra factor +2k = 2 (x/c) p from -d/dz, sign from F = -dU/dz
        2.0 * x_over_c * p * t.sinh() * (-s * p).exp() * bracket(eps, p)
    };
    let coarse = numerics::adaptive_simpson(&f, 0.0, t_max, f64::INFINITY).abs();
    let tol = 1e-9 * coarse.max(1e-280);
    x_over_c * numerics::adaptive_simpson(&f, 0.0, t_max, tol)
}

/// Total Casimir-Polder potential of the doped sphere:
/// U(z) = N U_emitter(z) + U_sphere(z).
pub fn cp_total(
    z: f64,
    emitter_count: f64,
    emitter: CasimirPolarizability,
    sphere: CasimirPolarizability,
    half_space: &HalfSpaceOptics,
) -> Result<f64> {
    let uq = cp_potential(&CasimirInputs {
        distance: z,
        half_space,
        model: emitter,
    })?;
    let us = cp_potential(&CasimirInputs {
        distance: z,
        half_space,
        model: sphere,
    })?;
    Ok(emitter_count * uq + us)
}
