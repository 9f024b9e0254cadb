//! Independent numerical check on the census: integrate the Reeb flow of a
//! toric form from a point of `T(θ)` and watch for returns to the starting
//! point in the universal cover.
//!
//! The integrator is an adaptive Dormand–Prince 5(4) scheme on `(x, y, θ)`;
//! `θ' = 0` along the flow, so each accepted step is a straight segment and
//! a closure is detected when that segment passes within tolerance of a
//! lattice point `2π (m, n)`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::census::OrbitClass;
use crate::contact::ToricContactForm;
use crate::error::ContactError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Maximum distance in the `(x, y)` cover counted as a return.
    pub closure_tolerance: f64,
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub max_step: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { closure_tolerance: 1e-8, rtol: 1e-12, atol: 1e-12, initial_step: 1e-3, max_step: 0.25 }
    }
}

/// One return of the flow line to its starting point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Closure {
    /// Displacement `(m, n)` in units of 2π; not necessarily primitive.
    pub class: OrbitClass,
    /// Flow time, equal to the action since `λ(R) = 1`.
    pub period: f64,
    /// Distance by which the segment misses `2π (m, n)`.
    pub miss: f64,
}

type State = [f64; 3];

// Dormand–Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One trial step; returns the 5th-order state and an error norm.
fn dp_step<F: Fn(f64, &State) -> State>(f: &F, t: f64, y: &State, h: f64, opts: &OracleOptions) -> (State, f64) {
    let mut k = [[0.0; 3]; 7];
    for i in 0..7 {
        let mut yi = *y;
        for (j, kj) in k.iter().enumerate().take(i) {
            for d in 0..3 {
                yi[d] += h * A[i][j] * kj[d];
            }
        }
        k[i] = f(t + C[i] * h, &yi);
    }
    let mut y5 = *y;
    let mut err: f64 = 0.0;
    for d in 0..3 {
        let mut e = 0.0;
        for i in 0..7 {
            y5[d] += h * B5[i] * k[i][d];
            e += h * (B5[i] - B4[i]) * k[i][d];
        }
        let scale = opts.atol + opts.rtol * y[d].abs().max(y5[d].abs());
        err = err.max((e / scale).abs());
    }
    (y5, err)
}

/// Lattice points `2π k`, `k ≠ 0`, within `tol` of the segment `p0 → p1`,
/// with the segment parameter of closest approach.
fn lattice_hits(p0: (f64, f64), p1: (f64, f64), tol: f64) -> Vec<(OrbitClass, f64, f64)> {
    let two_pi = 2.0 * PI;
    let range = |a: f64, b: f64| {
        let lo = ((a.min(b) - tol) / two_pi).ceil() as i64;
        let hi = ((a.max(b) + tol) / two_pi).floor() as i64;
        lo..=hi
    };
    let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
    let len2 = dx * dx + dy * dy;
    let mut hits = Vec::new();
    if len2 == 0.0 {
        return hits;
    }
    for m in range(p0.0, p1.0) {
        for n in range(p0.1, p1.1) {
            if m == 0 && n == 0 {
                continue;
            }
            let (tx, ty) = (two_pi * m as f64, two_pi * n as f64);
            let s = ((tx - p0.0) * dx + (ty - p0.1) * dy) / len2;
            let s = s.clamp(0.0, 1.0);
            let miss = (p0.0 + s * dx - tx).hypot(p0.1 + s * dy - ty);
            if miss <= tol {
                hits.push((OrbitClass::new(m, n), s, miss));
            }
        }
    }
    hits
}

/// Integrates the Reeb flow from `(0, 0, start_theta)` up to time `horizon`
/// and lists every return, ordered by period.
pub fn numeric_flow_oracle(form: &ToricContactForm, start_theta: f64, horizon: f64) -> Result<Vec<Closure>, ContactError> {
    numeric_flow_oracle_with(form, start_theta, horizon, &OracleOptions::default())
}

pub fn numeric_flow_oracle_with(
    form: &ToricContactForm,
    start_theta: f64,
    horizon: f64,
    opts: &OracleOptions,
) -> Result<Vec<Closure>, ContactError> {
    form.ensure_certified()?;
    let field = |_t: f64, y: &State| {
        let (vx, vy) = form.reeb_unchecked(y[2]);
        [vx, vy, 0.0]
    };
    let mut t = 0.0;
    let mut y: State = [0.0, 0.0, start_theta];
    let mut h = opts.initial_step.min(opts.max_step);
    let mut seen = BTreeSet::new();
    let mut closures = Vec::new();
    while t < horizon && horizon.is_finite() {
        let step = h.min(horizon - t);
        let (y_new, err) = dp_step(&field, t, &y, step, opts);
        if err <= 1.0 {
            for (class, s, miss) in lattice_hits((y[0], y[1]), (y_new[0], y_new[1]), opts.closure_tolerance) {
                if seen.insert(class) {
                    closures.push(Closure { class, period: t + s * step, miss });
                }
            }
            t += step;
            y = y_new;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (step * factor).min(opts.max_step);
        if h < 1e-14 {
            break;
        }
    }
    closures.sort_by(|a, b| a.period.total_cmp(&b.period));
    Ok(closures)
}
