use serde::Serialize;

use super::dopri::{critical_points, eval_cubic};
use super::Trajectory;
use crate::error::{Error, Result};
use crate::models::ModelId;

/// Residual below which a trajectory counts as converged.
pub const CONVERGED_RESIDUAL: f64 = 1e-6;
/// Half-width of the crossing band relative to the target coordinate.
pub const HYSTERESIS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oscillation {
    DampedOscillation,
    Monotone,
}

#[derive(Clone, Debug, Serialize)]
pub struct DampingMetrics {
    pub target: Vec<f64>,
    pub crossings: Vec<usize>,
    /// Largest `(x_i(t) - x_i*) / x_i*` over components that start below target.
    pub overshoot: f64,
    pub terminal_residual: f64,
    pub terminal_deviation: f64,
    /// Exponential rate fitted to the relative deviation, when it is above noise.
    pub decay_rate: Option<f64>,
    pub converged: bool,
    pub classification: Oscillation,
}

/// Values of component `i` in time order: step ends plus interior extrema
/// of the dense output.
fn dense_values(tr: &Trajectory, i: usize) -> Vec<f64> {
    let mut out = vec![tr.x[0][i]];
    for k in 0..tr.t.len().saturating_sub(1) {
        let c = tr.segment(k, i);
        for u in critical_points(&c) {
            out.push(eval_cubic(&c, u));
        }
        out.push(tr.x[k + 1][i]);
    }
    out
}

fn count_crossings(values: &[f64], target: f64) -> usize {
    let band = HYSTERESIS * target.abs().max(1e-12);
    let mut side = 0i8;
    let mut n = 0;
    for &v in values {
        let s = if v > target + band {
            1
        } else if v < target - band {
            -1
        } else {
            0
        };
        if s != 0 {
            if side != 0 && s != side {
                n += 1;
            }
            side = s;
        }
    }
    n
}

fn fit_decay(tr: &Trajectory, target: &[f64]) -> Option<f64> {
    let noise = 1e3 * tr.stats.rel_tol.max(1e-15);
    let pts: Vec<(f64, f64)> = tr
        .t
        .iter()
        .zip(&tr.x)
        .map(|(t, x)| {
            let dev = x.iter().zip(target).map(|(a, b)| ((a - b) / b.abs().max(1e-300)).abs()).fold(0.0, f64::max);
            (*t, dev)
        })
        .filter(|(_, d)| *d > noise)
        .collect();
    if pts.len() < 4 {
        return None;
    }
    let tail = &pts[pts.len() / 2..];
    let n = tail.len() as f64;
    let (mt, ml) = tail.iter().fold((0.0, 0.0), |(a, b), (t, d)| (a + t / n, b + d.ln() / n));
    let (num, den) = tail
        .iter()
        .fold((0.0, 0.0), |(a, b), (t, d)| (a + (t - mt) * (d.ln() - ml), b + (t - mt) * (t - mt)));
    if den <= 0.0 {
        return None;
    }
    Some(-num / den)
}

pub fn damping_metrics(tr: &Trajectory, target: &[f64]) -> Result<DampingMetrics> {
    if target.len() != tr.dim() {
        return Err(Error::Precondition(format!("target has {} coordinates, trajectory {}", target.len(), tr.dim())));
    }
    let crossings: Vec<usize> = (0..tr.dim()).map(|i| count_crossings(&dense_values(tr, i), target[i])).collect();
    let mut overshoot: f64 = 0.0;
    for i in 0..tr.dim() {
        if tr.x0[i] < target[i] {
            let top = dense_values(tr, i).into_iter().fold(f64::NEG_INFINITY, f64::max);
            overshoot = overshoot.max((top - target[i]) / target[i]);
        }
    }
    let last = tr.last();
    let terminal_deviation = last.iter().zip(target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let terminal_residual = tr.terminal_residual();
    let classification =
        if crossings.iter().any(|&c| c >= 2) { Oscillation::DampedOscillation } else { Oscillation::Monotone };
    Ok(DampingMetrics {
        target: target.to_vec(),
        crossings,
        overshoot,
        terminal_residual,
        terminal_deviation,
        decay_rate: fit_decay(tr, target),
        converged: terminal_residual < CONVERGED_RESIDUAL,
        classification,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairDecay {
    pub pair: [usize; 2],
    pub initial_difference: f64,
    pub max_relative_error: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairwiseDecayReport {
    pub g: f64,
    pub tolerance: f64,
    pub pairs: Vec<PairDecay>,
    pub passed: bool,
}

/// Checks `|x_a(t) - x_b(t)| = |x_a(0) - x_b(0)| e^{-g t}` at every recorded
/// time for the pairs `(x1, x2)`, `(x3, x4)`, `(x5, x6)` of a 6D run.
pub fn pairwise_decay_check(tr: &Trajectory, g: f64, tolerance: f64) -> Result<PairwiseDecayReport> {
    match tr.model {
        Some(ModelId::Fwd6d | ModelId::Bwd6d) => {}
        other => {
            let name = other.map(|m| m.to_string()).unwrap_or_else(|| "an untagged trajectory".into());
            return Err(Error::Unsupported(format!("pairwise decay applies to the 6D models, not {name}")));
        }
    }
    let pairs: Vec<PairDecay> = [[0, 1], [2, 3], [4, 5]]
        .iter()
        .map(|&[a, b]| {
            let d0 = (tr.x0[a] - tr.x0[b]).abs();
            let scale = tr.x0[a].abs().max(tr.x0[b].abs()).max(1.0);
            let mut worst: f64 = 0.0;
            for (t, x) in tr.t.iter().zip(&tr.x) {
                let d = (x[a] - x[b]).abs();
                let err = if d0 == 0.0 { d / scale } else { (d - d0 * (-g * t).exp()).abs() / (d0 * (-g * t).exp()) };
                worst = worst.max(err);
            }
            PairDecay { pair: [a + 1, b + 1], initial_difference: d0, max_relative_error: worst, passed: worst <= tolerance }
        })
        .collect();
    let passed = pairs.iter().all(|p| p.passed);
    Ok(PairwiseDecayReport { g, tolerance, pairs, passed })
}
