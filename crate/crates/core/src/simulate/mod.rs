//! Time integration of the models, equilibrium-crossing metrics and
//! parameter sweeps.

mod dopri;
mod metrics;
mod sweep;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::models::{ModelDef, ModelId, ParameterSet};

pub use dopri::Options;
pub use metrics::{damping_metrics, pairwise_decay_check, DampingMetrics, Oscillation, PairDecay, PairwiseDecayReport};
pub use sweep::{sweep, sweep_csv, SweepRow, SweepSpec, X0Policy};

/// Default horizon used when none is given.
pub fn default_t_end(m: ModelId) -> f64 {
    match m {
        ModelId::Fwd6d | ModelId::Bwd6d => 60.0,
        _ => 40.0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegratorStats {
    pub steps: usize,
    pub rejections: usize,
    pub evaluations: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub model: Option<ModelId>,
    pub params: Option<Value>,
    pub state_names: Vec<String>,
    pub x0: Vec<f64>,
    pub t: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    #[serde(skip)]
    pub dx: Vec<Vec<f64>>,
    pub stats: IntegratorStats,
}

impl Trajectory {
    fn from_solution(sol: dopri::Solution, x0: &[f64], o: &Options, names: Vec<String>) -> Trajectory {
        Trajectory {
            model: None,
            params: None,
            state_names: names,
            x0: x0.to_vec(),
            t: sol.t,
            x: sol.x,
            dx: sol.dx,
            stats: IntegratorStats {
                steps: sol.steps,
                rejections: sol.rejections,
                evaluations: sol.evaluations,
                rel_tol: o.rel_tol,
                abs_tol: o.abs_tol,
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.x0.len()
    }

    pub fn t_end(&self) -> f64 {
        *self.t.last().unwrap()
    }

    pub fn last(&self) -> &[f64] {
        self.x.last().unwrap()
    }

    /// Cubic Hermite coefficients of component `i` on step `k` (from `t[k]` to `t[k+1]`).
    pub fn segment(&self, k: usize, i: usize) -> [f64; 4] {
        let h = self.t[k + 1] - self.t[k];
        dopri::hermite(self.x[k][i], self.x[k + 1][i], self.dx[k][i], self.dx[k + 1][i], h)
    }

    /// Dense output at `t` in `[0, t_end]`.
    pub fn at(&self, t: f64) -> Result<Vec<f64>> {
        if !(t >= 0.0 && t <= self.t_end()) {
            return Err(Error::Domain(format!("t = {t} outside [0, {}]", self.t_end())));
        }
        let k = match self.t.partition_point(|&s| s <= t) {
            0 => 0,
            p => (p - 1).min(self.t.len() - 2),
        };
        if self.t.len() == 1 {
            return Ok(self.x[0].clone());
        }
        let u = (t - self.t[k]) / (self.t[k + 1] - self.t[k]);
        Ok((0..self.dim()).map(|i| dopri::eval_cubic(&self.segment(k, i), u)).collect())
    }

    /// Euclidean norm of the right-hand side at the final state.
    pub fn terminal_residual(&self) -> f64 {
        self.dx.last().unwrap().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// CSV with header `t,<state names>` and one row per recorded step.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["t".to_string()];
        header.extend(self.state_names.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (t, x) in self.t.iter().zip(&self.x) {
            let mut row = vec![t.to_string()];
            row.extend(x.iter().map(f64::to_string));
            w.write_record(&row).map_err(csv_err)?;
        }
        finish_csv(w)
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Integration(format!("csv: {e}"))
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Integration(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Integration(format!("csv: {e}")))
}

/// Integrates an arbitrary autonomous system.
pub fn integrate_fn<F>(f: F, x0: &[f64], o: &Options) -> Result<Trajectory>
where
    F: FnMut(&[f64], &mut [f64]) -> Result<()>,
{
    let sol = dopri::solve(f, x0, o)?;
    let names = (1..=x0.len()).map(|i| format!("x{i}")).collect();
    Ok(Trajectory::from_solution(sol, x0, o, names))
}

/// Integrates model `m` at `p` from `x0`, keeping the state in the open
/// positive orthant.
pub fn integrate(m: &ModelDef, p: &ParameterSet, x0: &[f64], o: &Options) -> Result<Trajectory> {
    p.validate(m.id)?;
    if x0.len() != m.dim() {
        return Err(Error::Precondition(format!("{} needs {} initial values, got {}", m.id, m.dim(), x0.len())));
    }
    let rhs = m.compile(p)?;
    let o = Options { positive: true, ..o.clone() };
    let sol = dopri::solve(|x, out| rhs.eval(x, out), x0, &o)?;
    let names = (1..=m.dim()).map(|i| format!("x{i}")).collect();
    let mut tr = Trajectory::from_solution(sol, x0, &o, names);
    tr.model = Some(m.id);
    tr.params = Some(p.to_json_value());
    Ok(tr)
}

#[cfg(test)]
mod tests;
