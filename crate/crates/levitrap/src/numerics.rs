//! Small numerical toolbox used by the main computation paths: adaptive
//! Simpson quadrature, geometric panel splitting, bisection, and a natural
//! cubic spline.
//!
//! The reference implementations in [`crate::oracles`] deliberately do not
//! use anything from this module.

use crate::error::{Error, Result};

/// Adaptive Simpson integration of `f` on `[a, b]`.
///
/// `tol` is an absolute tolerance on the panel; recursion splits until the
/// Richardson estimate of the error drops below it.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // Second disjunct: refinement is already at the rounding floor of the
    // panel value, no point descending further.
    if depth == 0 || delta.abs() <= 15.0 * tol || delta.abs() <= 1e-15 * (left + right).abs() {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Fixed composite Simpson rule with `segments` subintervals.
pub fn composite_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, segments: usize) -> f64 {
    let n = segments.max(2) & !1; // even
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Integrate `f` over `[a, b]` with `a > 0` on geometrically spaced panels
/// (`per_decade` panels per decade), each panel integrated adaptively to a
/// relative tolerance `rel_tol` of the running total.
pub fn integrate_log_panels<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    per_decade: usize,
    rel_tol: f64,
) -> f64 {
    assert!(a > 0.0 && b > a, "log panels need 0 < a < b");
    let decades = (b / a).log10();
    let n = ((decades * per_decade as f64).ceil() as usize).max(1);
    let ratio = (b / a).powf(1.0 / n as f64);

    // Coarse fixed-order pass to learn the overall scale, then an adaptive
    // pass with per-panel tolerances relative to it.
    let mut scale = 0.0f64;
    let mut lo = a;
    for _ in 0..n {
        let hi = (lo * ratio).min(b);
        scale += composite_simpson(f, lo, hi, 16).abs();
        lo = hi;
    }
    if scale == 0.0 {
        return 0.0;
    }
    let mut total = 0.0;
    let mut lo = a;
    for _ in 0..n {
        let hi = (lo * ratio).min(b);
        total += adaptive_simpson(f, lo, hi, rel_tol * scale / n as f64);
        lo = hi;
    }
    total
}

/// Bisection root finder on a bracket with a sign change.
///
/// Returns the midpoint once the bracket is narrower than `xtol`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::ConvergenceFailure {
            what: "bisect",
            details: format!("no sign change on [{lo:.6e}, {hi:.6e}] (f: {flo:.3e}, {fhi:.3e})"),
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < xtol {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::ConvergenceFailure {
        what: "bisect",
        details: format!("bracket [{lo:.6e}, {hi:.6e}] not reduced below {xtol:.1e}"),
    })
}

/// Natural cubic spline through strictly increasing knots.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>, // second derivatives at the knots
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 3, "spline needs at least 3 knots");
        assert_eq!(n, y.len());
        assert!(
            x.windows(2).all(|w| w[1] > w[0]),
            "spline knots must be strictly increasing"
        );

        // Tridiagonal system for the natural spline second derivatives.
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        diag[0] = 1.0;
        diag[n - 1] = 1.0;
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            sub[i] = h0;
            diag[i] = 2.0 * (h0 + h1);
            sup[i] = h1;
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        // Thomas elimination.
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        Self { x, y, m }
    }

    /// Evaluate the spline; outside the knot span extrapolates linearly.
    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        if xq <= self.x[0] {
            let slope = self.slope_at(0);
            return self.y[0] + slope * (xq - self.x[0]);
        }
        if xq >= self.x[n - 1] {
            let slope = self.slope_at(n - 2);
            return self.y[n - 1] + slope * (xq - self.x[n - 1]);
        }
        let i = match self
            .x
            .binary_search_by(|v| v.partial_cmp(&xq).expect("finite knot"))
        {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - xq) / h;
        let b = (xq - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    fn slope_at(&self, i: usize) -> f64 {
        let h = self.x[i + 1] - self.x[i];
        (self.y[i + 1] - self.y[i]) / h - h / 6.0 * (2.0 * self.m[i] + self.m[i + 1])
    }
}
