//! Dormand–Prince 5(4) with FSAL for autonomous systems.

use crate::error::{Error, Result};

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus the embedded fourth-order ones
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Debug)]
pub struct Options {
    pub t_end: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    pub max_step: Option<f64>,
    /// Reject states that leave the open positive orthant.
    pub positive: bool,
}

impl Options {
    pub fn new(t_end: f64) -> Options {
        Options { t_end, rel_tol: 1e-8, abs_tol: 1e-10, max_steps: 2_000_000, max_step: None, positive: true }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Solution {
    pub t: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    /// Right-hand side at each recorded state.
    pub dx: Vec<Vec<f64>>,
    pub steps: usize,
    pub rejections: usize,
    pub evaluations: usize,
}

fn error_norm(x: &[f64], y: &[f64], err: &[f64], o: &Options) -> f64 {
    let n = x.len() as f64;
    let s: f64 = (0..x.len())
        .map(|i| {
            let sc = o.abs_tol + o.rel_tol * x[i].abs().max(y[i].abs());
            (err[i] / sc).powi(2)
        })
        .sum();
    (s / n).sqrt()
}

fn initial_step<F>(f: &mut F, x: &[f64], f0: &[f64], o: &Options) -> Result<f64>
where
    F: FnMut(&[f64], &mut [f64]) -> Result<()>,
{
    let sc: Vec<f64> = x.iter().map(|v| o.abs_tol + o.rel_tol * v.abs()).collect();
    let rms = |v: &[f64]| (v.iter().zip(&sc).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / v.len() as f64).sqrt();
    let (d0, d1) = (rms(x), rms(f0));
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let x1: Vec<f64> = x.iter().zip(f0).map(|(a, b)| a + h0 * b).collect();
    let mut f1 = vec![0.0; x.len()];
    f(&x1, &mut f1)?;
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(1.0 / 5.0) };
    Ok((100.0 * h0).min(h1).min(o.t_end))
}

/// Integrates `x' = f(x)` from `t = 0` and records every accepted step.
pub fn solve<F>(mut f: F, x0: &[f64], o: &Options) -> Result<Solution>
where
    F: FnMut(&[f64], &mut [f64]) -> Result<()>,
{
    if !(o.rel_tol > 0.0 && o.abs_tol > 0.0) {
        return Err(Error::Precondition("tolerances must be positive".into()));
    }
    if o.max_step.is_some_and(|h| !(h > 0.0)) {
        return Err(Error::Precondition("max_step must be positive".into()));
    }
    if !(o.t_end > 0.0 && o.t_end.is_finite()) {
        return Err(Error::Precondition(format!("t_end = {} must be positive", o.t_end)));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("initial state is not finite".into()));
    }
    if o.positive && x0.iter().any(|&v| v <= 0.0) {
        return Err(Error::Precondition(format!("initial state {x0:?} is not in the open positive orthant")));
    }
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    f(&x, &mut k[0])?;
    let mut sol = Solution { t: vec![0.0], x: vec![x.clone()], dx: vec![k[0].clone()], evaluations: 1, ..Default::default() };
    let mut t = 0.0;
    let mut h = initial_step(&mut f, &x, &k[0], o)?;
    sol.evaluations += 1;
    let mut stage = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut err = vec![0.0; n];
    while t < o.t_end {
        if sol.steps + sol.rejections >= o.max_steps {
            return Err(Error::Integration(format!("step limit {} reached at t = {t}", o.max_steps)));
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Integration(format!("step size underflow at t = {t}, state {x:?}")));
        }
        if let Some(hm) = o.max_step {
            h = h.min(hm);
        }
        let last = t + h >= o.t_end;
        if last {
            h = o.t_end - t;
        }
        let mut domain = None;
        for s in 1..7 {
            for i in 0..n {
                stage[i] = x[i] + h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
            }
            if let Err(e) = f(&stage, &mut k[s]) {
                domain = Some(e);
                break;
            }
        }
        sol.evaluations += 6;
        // the last stage point is the fifth-order solution
        y.copy_from_slice(&stage);
        let e_norm = match domain {
            Some(Error::Domain(_)) => f64::INFINITY,
            Some(e) => return Err(e),
            None => {
                for i in 0..n {
                    err[i] = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
                }
                error_norm(&x, &y, &err, o)
            }
        };
        let ok = e_norm <= 1.0 && y.iter().all(|v| v.is_finite());
        if !ok {
            sol.rejections += 1;
            let fac = if e_norm.is_finite() { (0.9 * e_norm.powf(-0.2)).clamp(0.2, 1.0) } else { 0.25 };
            h *= fac;
            continue;
        }
        if o.positive && y.iter().any(|&v| v <= 0.0) {
            return Err(Error::Integration(format!(
                "state left the positive orthant at t = {}: {y:?}",
                if last { o.t_end } else { t + h }
            )));
        }
        t = if last { o.t_end } else { t + h };
        x.copy_from_slice(&y);
        k.swap(0, 6);
        sol.steps += 1;
        sol.t.push(t);
        sol.x.push(x.clone());
        sol.dx.push(k[0].clone());
        let fac = if e_norm == 0.0 { 5.0 } else { (0.9 * e_norm.powf(-0.2)).clamp(0.2, 5.0) };
        h *= fac;
    }
    Ok(sol)
}

/// Cubic Hermite coefficients `a + b u + c u^2 + d u^3` on one step, `u` in `[0, 1]`.
pub fn hermite(y0: f64, y1: f64, f0: f64, f1: f64, h: f64) -> [f64; 4] {
    [y0, h * f0, -3.0 * y0 - 2.0 * h * f0 + 3.0 * y1 - h * f1, 2.0 * y0 + h * f0 - 2.0 * y1 + h * f1]
}

pub fn eval_cubic(c: &[f64; 4], u: f64) -> f64 {
    c[0] + u * (c[1] + u * (c[2] + u * c[3]))
}

/// Interior critical points of the cubic in `(0, 1)`, increasing.
pub fn critical_points(c: &[f64; 4]) -> Vec<f64> {
    let (a, b, cc) = (3.0 * c[3], 2.0 * c[2], c[1]);
    let mut out = Vec::new();
    if a.abs() < 1e-300 {
        if b.abs() > 1e-300 {
            out.push(-cc / b);
        }
    } else {
        let disc = b * b - 4.0 * a * cc;
        if disc >= 0.0 {
            let q = -0.5 * (b + b.signum() * disc.sqrt());
            out.push(q / a);
            if q != 0.0 {
                out.push(cc / q);
            }
        }
    }
    out.retain(|u| *u > 0.0 && *u < 1.0);
    out.sort_by(f64::total_cmp);
    out
}
