use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::metrics::{damping_metrics, Oscillation};
use super::{csv_err, default_t_end, finish_csv, integrate, Options};
use crate::error::{Error, Result};
use crate::exactalg::rational::to_f64;
use crate::models::{steady_states, ModelDef, ModelId, ParameterSet};
use crate::sampling::ParamGrid;
use crate::stability::{eigen_numeric, verdict_of, Verdict};

/// Where each grid point's run starts.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum X0Policy {
    Fixed(Vec<f64>),
    /// The positive steady state scaled componentwise by `1 + rel * u`,
    /// `u` uniform in `[-1, 1]` from the sweep seed.
    Perturbed { rel: f64 },
}

impl X0Policy {
    /// `"fixed:1,2,2"` or `"perturb:0.1"`.
    pub fn parse(text: &str) -> Result<X0Policy> {
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        match kind {
            "fixed" => Ok(X0Policy::Fixed(rest.split(',').map(num).collect::<Result<_>>()?)),
            "perturb" => Ok(X0Policy::Perturbed { rel: if rest.is_empty() { 0.1 } else { num(rest)? } }),
            _ => Err(Error::Parse(format!("x0 policy {text:?} is neither fixed:... nor perturb:..."))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub model: ModelId,
    pub grid: ParamGrid,
    pub base: ParameterSet,
    pub x0: X0Policy,
    pub seed: u64,
    pub t_end: Option<f64>,
    /// Skip the simulations and report the eigenvalue verdict only.
    pub eigen_only: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub params: Value,
    pub verdict: Option<Verdict>,
    pub max_real_part: Option<f64>,
    /// `damped`, `monotone` or `sustained` (still oscillating at the horizon
    /// around an unstable state).
    pub oscillation: Option<String>,
    pub crossings: Vec<usize>,
    pub converged: Option<bool>,
    pub error: Option<String>,
}

fn run_point(spec: &SweepSpec, m: &ModelDef, index: usize) -> Result<SweepRow> {
    let p = spec.grid.point(index, &spec.base)?;
    let mut row = SweepRow {
        index,
        params: p.to_json_value(),
        verdict: None,
        max_real_part: None,
        oscillation: None,
        crossings: vec![],
        converged: None,
        error: None,
    };
    p.validate(m.id)?;
    let st = steady_states(m, &p)?
        .into_iter()
        .find(|s| s.positive)
        .ok_or_else(|| Error::Numerical("no positive steady state".into()))?;
    let xs = st.coords_f64();
    let jac = m.jacobian_f64(&p, &xs)?;
    let scale = jac.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    let (verdict, max_re) = verdict_of(&eigen_numeric(&jac)?, scale);
    row.verdict = Some(verdict);
    row.max_real_part = Some(max_re);
    if spec.eigen_only {
        return Ok(row);
    }
    let x0 = match &spec.x0 {
        X0Policy::Fixed(v) => v.clone(),
        X0Policy::Perturbed { rel } => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(index as u64);
            xs.iter().map(|x| x * (1.0 + rel * rng.gen_range(-1.0..=1.0))).collect()
        }
    };
    let o = Options::new(spec.t_end.unwrap_or_else(|| default_t_end(m.id)));
    let tr = integrate(m, &p, &x0, &o)?;
    let dm = damping_metrics(&tr, &xs)?;
    row.oscillation = Some(
        match (dm.classification, dm.converged, verdict) {
            (Oscillation::Monotone, _, _) => "monotone",
            (Oscillation::DampedOscillation, false, Verdict::Unstable) => "sustained",
            (Oscillation::DampedOscillation, _, _) => "damped",
        }
        .into(),
    );
    row.crossings = dm.crossings;
    row.converged = Some(dm.converged);
    Ok(row)
}

/// Classifies every grid point; per-point failures are recorded in the row.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let hill = match spec.base.hill() {
        Ok(n) => n,
        Err(_) if !spec.model.has_hill() => 1,
        Err(e) => return Err(e),
    };
    let m = ModelDef::new(spec.model, hill)?;
    let rows = (0..spec.grid.len())
        .into_par_iter()
        .map(|i| {
            run_point(spec, &m, i).unwrap_or_else(|e| SweepRow {
                index: i,
                params: spec.grid.point(i, &spec.base).map(|p| p.to_json_value()).unwrap_or(Value::Null),
                verdict: None,
                max_real_part: None,
                oscillation: None,
                crossings: vec![],
                converged: None,
                error: Some(e.to_string()),
            })
        })
        .collect();
    Ok(rows)
}

/// One row per grid point: swept parameters, verdict, largest real part,
/// oscillation class and crossing counts.
pub fn sweep_csv(spec: &SweepSpec, rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = spec.grid.axes.iter().map(|a| a.name.clone()).collect();
    header.extend(["verdict", "max_re", "oscillation", "converged"].map(String::from));
    header.extend((1..=spec.model.dim()).map(|i| format!("crossings_x{i}")));
    header.push("error".into());
    w.write_record(&header).map_err(csv_err)?;
    for r in rows {
        let p = spec.grid.point(r.index, &spec.base)?;
        let mut rec: Vec<String> =
            spec.grid.axes.iter().map(|a| p.get(&a.name).map(|v| to_f64(v).to_string()).unwrap_or_default()).collect();
        rec.push(r.verdict.map(|v| serde_json::to_value(v).unwrap().as_str().unwrap().to_string()).unwrap_or_default());
        rec.push(r.max_real_part.map(|v| v.to_string()).unwrap_or_default());
        rec.push(r.oscillation.clone().unwrap_or_default());
        rec.push(r.converged.map(|c| c.to_string()).unwrap_or_default());
        for i in 0..spec.model.dim() {
            rec.push(r.crossings.get(i).map(|c| c.to_string()).unwrap_or_default());
        }
        rec.push(r.error.clone().unwrap_or_default());
        w.write_record(&rec).map_err(csv_err)?;
    }
    finish_csv(w)
}
