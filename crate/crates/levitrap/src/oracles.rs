//! Brute-force reference implementations used by the test suite: a
//! time-domain optical Bloch integrator with periodic steady-state
//! extraction, dense trapezoid quadratures for the Casimir-Polder and
//! blackbody integrals, and a bisection fixed point for the thermal
//! balance.
//!
//! Nothing here shares quadrature, ODE, or linear-algebra code with the
//! main modules; convergence comes from brute node counts rather than
//! adaptivity.

use num_complex::Complex64;

use crate::casimir::CasimirInputs;
use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::floquet::BichromaticDrive;
use crate::materials::SphereSpec;
use crate::thermal::ThermalEnvironment;

use std::f64::consts::{PI, TAU};

/// Value with an error estimate and a tag describing how it was produced.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: f64,
    pub estimated_error: f64,
    pub method: &'static str,
}

/// Periodic steady state extracted from a time-domain integration.
#[derive(Debug, Clone)]
pub struct BlochOdeSteadyState {
    /// Harmonics -N..=N of ⟨σ-⟩, ⟨σ+⟩, ⟨σz⟩ over one beat period.
    pub cutoff: usize,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    w: Vec<Complex64>,
    /// Period-averaged excited population.
    pub excited_population: f64,
    /// Period-to-period drift of the period-averaged inversion; the
    /// integration is flagged unsettled if it exceeds 1e-8.
    pub drift: f64,
    pub settled: bool,
}

impl BlochOdeSteadyState {
    pub fn u(&self, n: i64) -> Complex64 {
        self.coeff(&self.u, n)
    }
    pub fn v(&self, n: i64) -> Complex64 {
        self.coeff(&self.v, n)
    }
    pub fn w(&self, n: i64) -> Complex64 {
        self.coeff(&self.w, n)
    }

    fn coeff(&self, v: &[Complex64], n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.cutoff {
            Complex64::ZERO
        } else {
            v[(n + self.cutoff as i64) as usize]
        }
    }

    /// Time-averaged force from the extracted harmonics, same composition
    /// as the steady-state formula.
    pub fn force(&self, grad_rabi_1: f64, grad_rabi_2: f64) -> f64 {
        let carrier = self.v(0) + self.u(0);
        let sideband = self.v(1) + self.u(-1);
        (-0.5 * HBAR * (grad_rabi_1 * carrier + grad_rabi_2 * sideband)).re
    }
}

/// State vector (u, v, q) with q = w + 1; keeping the deviation from the
/// ground state resolves weak drives to full relative precision.
type State = [Complex64; 3];

fn bloch_rhs(drive: &BichromaticDrive, t: f64, y: &State) -> State {
    let g = drive.transverse_decay;
    let gamma = drive.linewidth;
    let delta = drive.beat();
    let xi = drive.ratio;
    let half = 0.5 * drive.rabi_1;
    let (u, v, q) = (y[0], y[1], y[2]);
    let w = q - 1.0;
    let e_minus = Complex64::from_polar(1.0, -delta * t);
    let e_plus = Complex64::from_polar(1.0, delta * t);
    let drive_minus = 1.0 + xi * e_minus;
    let drive_plus = 1.0 + xi * e_plus;
    let i = Complex64::I;
    [
        -Complex64::new(g, drive.detuning) * u + i * half * drive_minus * w,
        -Complex64::new(g, -drive.detuning) * v - i * half * drive_plus * w,
        -gamma * q - i * drive.rabi_1 * (drive_plus * v - drive_minus * u),
    ]
}

/// One adaptive Dormand-Prince 5(4) step; returns (new_state, error_norm).
fn dp54_step(drive: &BichromaticDrive, t: f64, y: &State, h: f64, scale: &[f64; 3]) -> (State, f64) {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
    const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];

    let mut k = [[Complex64::ZERO; 3]; 7];
    k[0] = bloch_rhs(drive, t, y);
    for stage in 0..6 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(stage + 1) {
            for c in 0..3 {
                ys[c] += h * A[stage][j] * kj[c];
            }
        }
        k[stage + 1] = bloch_rhs(drive, t + C[stage] * h, &ys);
    }
    // 5th-order solution is the last stage evaluation point (FSAL pair).
    let mut y5 = *y;
    for (j, kj) in k.iter().enumerate().take(6) {
        for c in 0..3 {
            y5[c] += h * A[5][j] * kj[c];
        }
    }
    let mut err = 0.0f64;
    for c in 0..3 {
        let mut e = Complex64::ZERO;
        for (j, kj) in k.iter().enumerate() {
            e += E[j] * kj[c];
        }
        err = err.max((h * e).norm() / scale[c]);
    }
    (y5, err)
}

fn settle(drive: &BichromaticDrive, t_end: f64, rtol: f64) -> State {
    // Error weights sized to the expected steady amplitudes.
    let g = drive.transverse_decay;
    let delta = drive.detuning.abs().max(g);
    let coherence_scale =
        (drive.rabi_1 * (1.0 + drive.ratio) / (2.0 * (g * g + delta * delta).sqrt())).max(1e-12);
    let population_scale = (drive.saturation_1() + drive.saturation_2()).clamp(1e-12, 1.0);
    let scale = [coherence_scale, coherence_scale, population_scale];

    let mut y: State = [Complex64::ZERO; 3];
    let mut t = 0.0;
    let mut h = 1e-3 / (drive.beat().abs().max(g).max(drive.linewidth));
    while t < t_end {
        h = h.min(t_end - t);
        let (y_new, err) = dp54_step(drive, t, &y, h, &scale);
        if err <= rtol {
            t += h;
            y = y_new;
            h *= (0.9 * (rtol / err.max(1e-300)).powf(0.2)).clamp(0.5, 4.0);
        } else {
            h *= (0.9 * (rtol / err).powf(0.25)).max(0.1);
        }
    }
    y
}

/// Integrate the driven Bloch equations to the periodic steady state and
/// Fourier-transform `beat_periods` final beat periods.
///
/// Settling runs for at least 25 lifetimes of the slowest decay channel.
/// The extraction uses fixed-step RK4 with 4096 steps per period, which is
/// far below the 5th-order adaptive error at the chosen tolerance.
pub fn bloch_ode_steady_state(drive: &BichromaticDrive, beat_periods: usize) -> BlochOdeSteadyState {
    assert!(beat_periods >= 1);
    let cutoff = 12usize;

    if drive.rabi_1 == 0.0 {
        let size = 2 * cutoff + 1;
        let mut w = vec![Complex64::ZERO; size];
        w[cutoff] = Complex64::new(-1.0, 0.0);
        return BlochOdeSteadyState {
            cutoff,
            u: vec![Complex64::ZERO; size],
            v: vec![Complex64::ZERO; size],
            w,
            excited_population: 0.0,
            drift: 0.0,
            settled: true,
        };
    }

    let slow = drive.linewidth.min(drive.transverse_decay);
    let period = TAU / drive.beat().abs().max(slow * 1e-6);
    let t_settle = 25.0 / slow + 2.0 * period;
    let mut y = settle(drive, t_settle, 1e-10);

    // Fixed-step RK4 over the sampled periods with trapezoid-DFT (periodic,
    // hence spectrally accurate).
    let steps_per_period = 4096usize;
    let h = period / steps_per_period as f64;
    let size = 2 * cutoff + 1;
    let mut coeffs_per_period: Vec<[Vec<Complex64>; 3]> = Vec::new();
    let mut averages = Vec::new();
    let mut t = t_settle;
    for _ in 0..beat_periods.max(2) {
        let mut acc: [Vec<Complex64>; 3] = [
            vec![Complex64::ZERO; size],
            vec![Complex64::ZERO; size],
            vec![Complex64::ZERO; size],
        ];
        let mut q_avg = Complex64::ZERO;
        let t0 = t;
        for step in 0..steps_per_period {
            // accumulate the DFT at the left sample
            let phase0 = drive.beat() * (t - t0);
            for n in -(cutoff as i64)..=(cutoff as i64) {
                let e = Complex64::from_polar(1.0, -(n as f64) * phase0);
                let k = (n + cutoff as i64) as usize;
                acc[0][k] += y[0] * e;
                acc[1][k] += y[1] * e;
                acc[2][k] += (y[2] - 1.0) * e;
            }
            q_avg += y[2];
            // RK4 advance
            let k1 = bloch_rhs(drive, t, &y);
            let mut y2 = y;
            for c in 0..3 {
                y2[c] += 0.5 * h * k1[c];
            }
            let k2 = bloch_rhs(drive, t + 0.5 * h, &y2);
            let mut y3 = y;
            for c in 0..3 {
                y3[c] += 0.5 * h * k2[c];
            }
            let k3 = bloch_rhs(drive, t + 0.5 * h, &y3);
            let mut y4 = y;
            for c in 0..3 {
                y4[c] += h * k3[c];
            }
            let k4 = bloch_rhs(drive, t + h, &y4);
            for c in 0..3 {
                y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
            t = t0 + (step + 1) as f64 * h;
        }
        for part in acc.iter_mut() {
            for c in part.iter_mut() {
                *c /= steps_per_period as f64;
            }
        }
        averages.push(q_avg / steps_per_period as f64);
        coeffs_per_period.push(acc);
    }

    let last = coeffs_per_period.last().unwrap();
    let prev_avg = averages[averages.len() - 2].re;
    let last_avg = averages[averages.len() - 1].re;
    let scale = (drive.saturation_1() + drive.saturation_2()).clamp(1e-12, 1.0);
    let drift = (last_avg - prev_avg).abs() / scale;

    let pe = 0.5 * last_avg;
    BlochOdeSteadyState {
        cutoff,
        u: last[0].clone(),
        v: last[1].clone(),
        w: last[2]
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                if k == cutoff {
                    c - 1.0
                } else {
                    c
                }
            })
            .collect(),
        excited_population: pe,
        drift,
        settled: drift < 1e-8,
    }
}

/// Dense 2-D midpoint evaluation of the Casimir-Polder integral.
///
/// Variables are compactified as x = (c/2z) u/(1-u) and k = (x/c)/(1-v),
/// both sampled at `nodes` uniform midpoints; the error estimate is the
/// change from a half-resolution pass.
pub fn dense_cp_quadrature(inputs: &CasimirInputs, nodes: usize) -> OracleResult {
    let coarse = dense_cp_pass(inputs, nodes / 2);
    let fine = dense_cp_pass(inputs, nodes);
    OracleResult {
        value: fine,
        estimated_error: (fine - coarse).abs(),
        method: "2-D dense midpoint, rational compactification",
    }
}

fn dense_cp_pass(inputs: &CasimirInputs, nodes: usize) -> f64 {
    let z = inputs.distance;
    let c = SPEED_OF_LIGHT;
    let x_c = 0.5 * c / z;
    let n = nodes.max(8);
    let du = 1.0 / n as f64;
    let dv = 1.0 / n as f64;

    let mut total = 0.0;
    for iu in 0..n {
        let u = (iu as f64 + 0.5) * du;
        let x = x_c * u / (1.0 - u);
        let jac_x = x_c / ((1.0 - u) * (1.0 - u));
        let eps = inputs.half_space.epsilon_imag_axis(x);
        if eps == 1.0 {
            continue;
        }
        let alpha = inputs.model.imag_axis(x);
        let k0 = x / c;

        let mut inner = 0.0;
        for iv in 0..n {
            let v = (iv as f64 + 0.5) * dv;
            let k = k0 / (1.0 - v);
            let jac_k = k0 / ((1.0 - v) * (1.0 - v));
            let g = (x * x / (c * c) * (eps - 1.0) + k * k).sqrt();
            let bracket = (k - g) / (k + g)
                + (1.0 - 2.0 * k * k * c * c / (x * x)) * (eps * k - g) / (eps * k + g);
            inner += (-2.0 * k * z).exp() * bracket * jac_k * dv;
        }

        total += x * x * alpha * inner * jac_x * du;
    }
    HBAR / (8.0 * c * c * PI * PI * crate::constants::EPSILON_0) * total
}

/// Dense trapezoid of the blackbody net power on a log-frequency grid.
pub fn dense_bb_net_power(
    sphere: &SphereSpec,
    env_temperature: f64,
    t_internal: f64,
    nodes: usize,
) -> OracleResult {
    let f = |omega: f64| {
        let x_abs = HBAR * omega / (BOLTZMANN * env_temperature);
        let bose = 1.0 / x_abs.exp_m1();
        let wien = (-HBAR * omega / (BOLTZMANN * t_internal)).exp();
        4.0 / PI * (omega * sphere.radius / SPEED_OF_LIGHT).powi(3)
            * (bose - wien)
            * sphere.clausius_mossotti_im(omega)
            * HBAR
            * omega
    };
    let coarse = log_trapezoid(&f, nodes / 2);
    let fine = log_trapezoid(&f, nodes);
    OracleResult {
        value: fine,
        estimated_error: (fine - coarse).abs(),
        method: "log-grid trapezoid",
    }
}

/// Dense trapezoid of the emitted blackbody power at `t_internal`.
pub fn dense_bb_emitted_power(sphere: &SphereSpec, t_internal: f64, nodes: usize) -> OracleResult {
    let f = |omega: f64| {
        let wien = (-HBAR * omega / (BOLTZMANN * t_internal)).exp();
        4.0 / PI * (omega * sphere.radius / SPEED_OF_LIGHT).powi(3)
            * wien
            * sphere.clausius_mossotti_im(omega)
            * HBAR
            * omega
    };
    let coarse = log_trapezoid(&f, nodes / 2);
    let fine = log_trapezoid(&f, nodes);
    OracleResult {
        value: fine,
        estimated_error: (fine - coarse).abs(),
        method: "log-grid trapezoid",
    }
}

fn log_trapezoid<F: Fn(f64) -> f64>(f: &F, nodes: usize) -> f64 {
    let n = nodes.max(16);
    let lo = (TAU * SPEED_OF_LIGHT / 100e-6).ln();
    let hi = (TAU * SPEED_OF_LIGHT / 0.1e-6).ln();
    let h = (hi - lo) / (n - 1) as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let s = lo + i as f64 * h;
        let omega = s.exp();
        let weight = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        sum += weight * f(omega) * omega; // dω = ω d(ln ω)
    }
    sum * h
}

/// Steady-state temperature by bisection on the dense-trapezoid balance.
pub fn dense_steady_state_temperature(
    sphere: &SphereSpec,
    env: &ThermalEnvironment,
    nodes: usize,
) -> f64 {
    let laser: f64 = env
        .lines
        .iter()
        .map(|l| {
            4.0 * PI * l.intensity * l.frequency * sphere.radius.powi(3) / SPEED_OF_LIGHT
                * sphere.clausius_mossotti_im(l.frequency)
        })
        .sum();
    let net = |t: f64| laser + dense_bb_net_power(sphere, env.temperature, t, nodes).value;
    let mut lo = env.temperature;
    let mut hi = 5000.0;
    if net(lo) <= 0.0 {
        return lo;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if net(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
