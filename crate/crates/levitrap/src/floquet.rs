//! Steady state of a two-level emitter under symmetric bichromatic driving.
//!
//! Mode 1 sits at ω0 - Δ and mode 2 at ω0 + Δ, so the beat is δ = 2Δ. In
//! the frame of mode 1 the optical Bloch equations close on the Fourier
//! coefficients u_n = ⟨σ-⟩_n, v_n = ⟨σ+⟩_n, w_n = ⟨σz⟩_n of the periodic
//! steady state:
//!
//! ```text
//! 0 = -[γ + iδ(n+1/2)] u_n + i(Ω1/2)(w_n + Ξ w_{n+1})
//! 0 = -[γ + iδ(n-1/2)] v_n - i(Ω1/2)(w_n + Ξ w_{n-1})
//! 0 = -(Γ + inδ) w_n - iΩ1(v_n + Ξ v_{n+1}) + iΩ1(u_n + Ξ u_{n-1}) - Γ δ_{n0}
//! ```
//!
//! Eliminating u and v leaves a complex tridiagonal system
//! `a_n w_n + b_n w_{n+1} + c_n w_{n-1} = d_n` that is solved directly for a
//! fixed harmonic cutoff.

use num_complex::Complex64;

use crate::constants::HBAR;
use crate::error::{Error, Result};

/// Symmetric two-color drive seen by one emitter.
#[derive(Debug, Clone, Copy)]
pub struct BichromaticDrive {
    /// Rabi frequency of mode 1 (rad/s), ≥ 0.
    pub rabi_1: f64,
    /// Amplitude ratio Ξ = Ω2/Ω1.
    pub ratio: f64,
    /// Half the beat: mode 1 at ω0 - Δ, mode 2 at ω0 + Δ. May be negative,
    /// which exchanges the red/blue roles of the two modes.
    pub detuning: f64,
    /// Natural linewidth Γ (rad/s).
    pub linewidth: f64,
    /// Transverse decay γ (rad/s).
    pub transverse_decay: f64,
}

impl BichromaticDrive {
    /// Beat frequency δ = 2Δ of the symmetric drive.
    pub fn beat(&self) -> f64 {
        2.0 * self.detuning
    }

    /// Saturation parameter of mode 1 alone at detuning Δ.
    pub fn saturation_1(&self) -> f64 {
        saturation_single(
            self.rabi_1,
            self.detuning,
            self.linewidth,
            self.transverse_decay,
        )
    }

    /// Saturation parameter of mode 2 alone.
    pub fn saturation_2(&self) -> f64 {
        saturation_single(
            self.rabi_1 * self.ratio,
            self.detuning,
            self.linewidth,
            self.transverse_decay,
        )
    }

    fn validate(&self) -> Result<()> {
        if self.rabi_1 < 0.0 || !self.rabi_1.is_finite() {
            return Err(Error::InvalidDrive(format!("rabi_1 = {}", self.rabi_1)));
        }
        if self.linewidth <= 0.0 || self.transverse_decay <= 0.0 {
            return Err(Error::InvalidDrive(format!(
                "rates must be positive: Γ = {}, γ = {}",
                self.linewidth, self.transverse_decay
            )));
        }
        if self.ratio < 0.0 {
            return Err(Error::InvalidDrive(format!("ratio = {}", self.ratio)));
        }
        Ok(())
    }
}

fn saturation_single(rabi: f64, detuning: f64, linewidth: f64, transverse: f64) -> f64 {
    rabi * rabi / (transverse * linewidth * (1.0 + (detuning / transverse).powi(2)))
}

/// Fourier coefficients of the driven steady state. The inversion
/// harmonics w_n live on -N..=N; the coherences u_n, v_n extend one index
/// further since each couples to its w neighbors.
#[derive(Debug, Clone)]
pub struct BlochFourierSolution {
    pub drive: BichromaticDrive,
    pub cutoff: usize,
    u: Vec<Complex64>, // indices -(N+1)..=(N+1)
    v: Vec<Complex64>, // indices -(N+1)..=(N+1)
    w: Vec<Complex64>, // indices -N..=N
    /// Relative residual of the tridiagonal solve.
    pub residual: f64,
    /// Set by [`converge_cutoff`] once the observables are cutoff-stable.
    pub converged: bool,
}

impl BlochFourierSolution {
    /// Coefficient of ⟨σ-⟩ at harmonic n; zero beyond the stored range.
    pub fn u(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.cutoff + 1 {
            Complex64::ZERO
        } else {
            self.u[(n + self.cutoff as i64 + 1) as usize]
        }
    }

    /// Coefficient of ⟨σ+⟩ at harmonic n.
    pub fn v(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.cutoff + 1 {
            Complex64::ZERO
        } else {
            self.v[(n + self.cutoff as i64 + 1) as usize]
        }
    }

    /// Coefficient of ⟨σz⟩ at harmonic n.
    pub fn w(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.cutoff {
            Complex64::ZERO
        } else {
            self.w[(n + self.cutoff as i64) as usize]
        }
    }
}

fn tridiagonal_coefficients(
    drive: &BichromaticDrive,
    n: i64,
) -> (Complex64, Complex64, Complex64) {
    let g = drive.transverse_decay;
    let gamma = drive.linewidth;
    let delta = drive.beat();
    let o2 = drive.rabi_1 * drive.rabi_1;
    let xi = drive.ratio;
    let nf = n as f64;

    let denom = Complex64::new(
        4.0 * g * g + delta * delta * (1.0 - 4.0 * nf * nf),
        8.0 * nf * g * delta,
    );
    let a = Complex64::new(-gamma, -nf * delta)
        - Complex64::new(g, nf * delta) * 4.0 * o2 * (1.0 + xi * xi) / denom;
    let b = -Complex64::new(2.0 * xi * o2, 0.0) / Complex64::new(2.0 * g, delta * (2.0 * nf + 1.0));
    let c = -Complex64::new(2.0 * xi * o2, 0.0) / Complex64::new(2.0 * g, delta * (2.0 * nf - 1.0));
    (a, b, c)
}

/// Solve the steady-state Bloch system at a fixed harmonic cutoff.
///
/// The w recursion is assembled as a (2N+1)-dimensional complex
/// tridiagonal system with w_{±(N+1)} = 0 and solved by Thomas
/// elimination; u and v follow from the eliminated relations.
pub fn solve_bloch_fourier(drive: &BichromaticDrive, cutoff: usize) -> Result<BlochFourierSolution> {
    drive.validate()?;
    let size = 2 * cutoff + 1;

    // Undriven emitter: ground state, w0 = -1.
    if drive.rabi_1 == 0.0 {
        let mut w = vec![Complex64::ZERO; size];
        w[cutoff] = Complex64::new(-1.0, 0.0);
        return Ok(BlochFourierSolution {
            drive: *drive,
            cutoff,
            u: vec![Complex64::ZERO; size + 2],
            v: vec![Complex64::ZERO; size + 2],
            w,
            residual: 0.0,
            converged: true,
        });
    }

    let mut sub = vec![Complex64::ZERO; size]; // c_n, coefficient of w_{n-1}
    let mut diag = vec![Complex64::ZERO; size];
    let mut sup = vec![Complex64::ZERO; size]; // b_n, coefficient of w_{n+1}
    let mut rhs = vec![Complex64::ZERO; size];
    for k in 0..size {
        let n = k as i64 - cutoff as i64;
        let (a, b, c) = tridiagonal_coefficients(drive, n);
        diag[k] = a;
        if k + 1 < size {
            sup[k] = b;
        }
        if k > 0 {
            sub[k] = c;
        }
        if n == 0 {
            rhs[k] = Complex64::new(drive.linewidth, 0.0);
        }
    }

    let w = thomas_solve(&sub, &diag, &sup, &rhs)?;

    // Residual of the original system, relative to the source norm.
    let mut res = 0.0f64;
    for k in 0..size {
        let mut lhs = diag[k] * w[k];
        if k + 1 < size {
            lhs += sup[k] * w[k + 1];
        }
        if k > 0 {
            lhs += sub[k] * w[k - 1];
        }
        res += (lhs - rhs[k]).norm_sqr();
    }
    let residual = (res.sqrt()) / drive.linewidth;
    if !residual.is_finite() || residual > 1e-9 {
        return Err(Error::IllConditioned { residual, cutoff });
    }

    // Reconstruct u_n and v_n, one harmonic beyond the w cutoff.
    let g = drive.transverse_decay;
    let delta = drive.beat();
    let xi = drive.ratio;
    let half_rabi = Complex64::new(0.0, 0.5 * drive.rabi_1);
    let w_at = |n: i64| -> Complex64 {
        if n.unsigned_abs() as usize > cutoff {
            Complex64::ZERO
        } else {
            w[(n + cutoff as i64) as usize]
        }
    };
    let ext = size + 2;
    let mut u = vec![Complex64::ZERO; ext];
    let mut v = vec![Complex64::ZERO; ext];
    for k in 0..ext {
        let n = k as i64 - cutoff as i64 - 1;
        let nf = n as f64;
        u[k] = half_rabi * (w_at(n) + xi * w_at(n + 1))
            / Complex64::new(g, delta * (nf + 0.5));
        v[k] = -half_rabi * (w_at(n) + xi * w_at(n - 1))
            / Complex64::new(g, delta * (nf - 0.5));
    }

    Ok(BlochFourierSolution {
        drive: *drive,
        cutoff,
        u,
        v,
        w,
        residual,
        converged: false,
    })
}

fn thomas_solve(
    sub: &[Complex64],
    diag: &[Complex64],
    sup: &[Complex64],
    rhs: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut r = rhs.to_vec();
    for i in 1..n {
        let denom = d[i - 1];
        if denom.norm() == 0.0 {
            return Err(Error::IllConditioned {
                residual: f64::INFINITY,
                cutoff: (n - 1) / 2,
            });
        }
        let m = sub[i] / denom;
        d[i] -= m * sup[i - 1];
        r[i] = r[i] - m * r[i - 1];
    }
    let mut x = vec![Complex64::ZERO; n];
    if d[n - 1].norm() == 0.0 {
        return Err(Error::IllConditioned {
            residual: f64::INFINITY,
            cutoff: (n - 1) / 2,
        });
    }
    x[n - 1] = r[n - 1] / d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = (r[i] - sup[i] * x[i + 1]) / d[i];
    }
    Ok(x)
}

/// Increase the cutoff until the force ingredients and excited population
/// change by less than `tol` (relative) under doubling; returns the smaller
/// converged solution.
pub fn converge_cutoff(drive: &BichromaticDrive, tol: f64) -> Result<BlochFourierSolution> {
    drive.validate()?;
    if drive.rabi_1 == 0.0 {
        return solve_bloch_fourier(drive, 0);
    }

    // Coupling between neighbors scales with Ω/δ; start above it.
    let delta = drive.beat().abs().max(f64::MIN_POSITIVE);
    let guess = (4.0 * drive.rabi_1 * (1.0 + drive.ratio) / delta).ceil() as usize;
    let mut cutoff = guess.clamp(2, 256);

    let mut current = solve_bloch_fourier(drive, cutoff)?;
    loop {
        let next_cutoff = (cutoff * 2).max(cutoff + 2);
        if next_cutoff > 2048 {
            return Err(Error::ConvergenceFailure {
                what: "converge_cutoff",
                details: format!("no convergence below cutoff 2048 (tol {tol:.1e})"),
            });
        }
        let next = solve_bloch_fourier(drive, next_cutoff)?;
        let close = |a: Complex64, b: Complex64| -> bool {
            (a - b).norm() <= tol * b.norm().max(1e-300)
        };
        let p_now = excited_population(&current);
        let p_next = excited_population(&next);
        let ok = close(current.v(0) + current.u(0), next.v(0) + next.u(0))
            && close(current.v(1) + current.u(-1), next.v(1) + next.u(-1))
            && (p_now - p_next).abs() <= tol * p_next.abs().max(1e-300);
        if ok {
            current.converged = true;
            return Ok(current);
        }
        cutoff = next_cutoff;
        current = next;
    }
}

/// Time-averaged dipole force along z for one emitter:
///
/// F = -(ħ ∇Ω1 / 2)(v0 + u0) - (ħ ∇(Ω1 Ξ) / 2)(v1 + u_{-1}).
///
/// `grad_rabi_1` is ∇Ω1 and `grad_rabi_2` is ∇(Ω1 Ξ) = ∇Ω2, both in
/// rad/(s m). The conjugation symmetries make both brackets real; the
/// imaginary residue is asserted negligible.
pub fn time_averaged_force(
    solution: &BlochFourierSolution,
    grad_rabi_1: f64,
    grad_rabi_2: f64,
) -> f64 {
    let carrier = solution.v(0) + solution.u(0);
    let sideband = solution.v(1) + solution.u(-1);
    let force = -0.5 * HBAR * (grad_rabi_1 * carrier + grad_rabi_2 * sideband);
    debug_assert!(
        force.im.abs() <= 1e-10 * force.re.abs().max(1e-300),
        "force picked up an imaginary part: {force}"
    );
    force.re
}

/// Steady excited-state population p_e = (w0 + 1)/2 ∈ [0, 1/2].
///
/// Also evaluated through the equivalent drive-side expression
/// (i Ω1 / 2Γ)[u0 - v0 + Ξ(u_{-1} - v1)]; the two must agree, which is
/// asserted in debug builds and tested explicitly.
pub fn excited_population(solution: &BlochFourierSolution) -> f64 {
    let p = 0.5 * (solution.w(0).re + 1.0);
    debug_assert!({
        let alt = excited_population_drive_side(solution);
        (p - alt).abs() <= 1e-10 * p.abs().max(1e-12)
    });
    p
}

/// The drive-side form of p_e, used for consistency checks.
pub fn excited_population_drive_side(solution: &BlochFourierSolution) -> f64 {
    let d = &solution.drive;
    let xi = d.ratio;
    let combo = solution.u(0) - solution.v(0) + xi * (solution.u(-1) - solution.v(1));
    (Complex64::new(0.0, 0.5 * d.rabi_1 / d.linewidth) * combo).re
}

/// Closed-form force at the lowest Floquet order (cutoff 0):
///
/// F = ħ Δ (Γ/2γ) (s1 g1 - s2 g2) / (1 + s1 + s2)
///
/// with per-mode saturations s_i and logarithmic gradients g_i (1/m).
#[allow(clippy::too_many_arguments)]
pub fn lowest_order_force(
    s1: f64,
    s2: f64,
    g1: f64,
    g2: f64,
    detuning: f64,
    linewidth: f64,
    transverse_decay: f64,
) -> f64 {
    HBAR * detuning * linewidth / (2.0 * transverse_decay) * (s1 * g1 - s2 * g2)
        / (1.0 + s1 + s2)
}

/// Excited population at the lowest Floquet order.
pub fn lowest_order_population(s1: f64, s2: f64) -> f64 {
    0.5 * (1.0 - 1.0 / (1.0 + s1 + s2))
}
