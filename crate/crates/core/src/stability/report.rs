use std::cmp::Ordering;
use std::fmt::Display;

use serde::Serialize;

use super::eigen::{bwd6d_factors, eigen_closed_form, eigen_numeric, flatten, max_relative_discrepancy, C64};
use super::hurwitz::{hurwitz_determinants, hurwitz_stable};
use super::interval::RatInterval;
use crate::error::{Error, Result};
use crate::exactalg::matrix::char_poly;
use crate::exactalg::rational::int;
use crate::exactalg::{OrderedField, QuadSurd, Rational};
use crate::models::{steady_states, Coordinate, ModelDef, ModelId, ParameterSet, SteadyState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AsymptoticallyStable,
    Unstable,
    Marginal,
}

/// Relative band around zero for the marginal verdict.
pub const MARGINAL_TOL: f64 = 1e-9;

/// Exact value with its floating mirror. `sign` is `None` when an interval
/// enclosure could not decide it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub value: f64,
    pub sign: Option<i8>,
}

fn ord_i8(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl ExactValue {
    pub fn of_surd(q: &QuadSurd) -> Self {
        ExactValue { exact: q.to_string(), value: q.to_f64(), sign: Some(ord_i8(q.sign())) }
    }

    pub fn of_interval(r: &RatInterval) -> Self {
        let s = r.sign();
        let decided = s != Ordering::Equal || r.lo == r.hi;
        ExactValue { exact: r.to_string(), value: r.to_f64(), sign: decided.then(|| ord_i8(s)) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairDamping {
    pub re_abs: f64,
    pub im_abs: f64,
    /// `|Re| / |Im|`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateSummary {
    pub label: String,
    pub coords: Vec<f64>,
    pub exact: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub model: ModelId,
    pub params: serde_json::Value,
    pub steady_state: StateSummary,
    /// `[1, a1, ..., an]` of `det(lambda I - J)`.
    pub char_poly: Vec<ExactValue>,
    /// `Delta_1, ..., Delta_n`.
    pub hurwitz: Vec<ExactValue>,
    pub a_n: ExactValue,
    pub hurwitz_stable: Option<bool>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub closed_form_eigenvalues: Option<Vec<[f64; 2]>>,
    pub closed_form_discrepancy: Option<f64>,
    pub max_real_part: f64,
    pub verdict: Verdict,
    pub complex_pairs: Vec<PairDamping>,
    /// bwd6d only: `-b + g (1 + 2f)^2 > 0`, decided exactly.
    pub linear_factor_positive: Option<bool>,
    /// Numeric verdict and exact Routh–Hurwitz test agree.
    pub consistent: bool,
}

fn pairs_of(ev: &[C64], scale: f64) -> Vec<PairDamping> {
    ev.iter()
        .filter(|z| z.im > MARGINAL_TOL * scale)
        .map(|z| PairDamping { re_abs: z.re.abs(), im_abs: z.im.abs(), ratio: z.re.abs() / z.im.abs() })
        .collect()
}

pub fn verdict_of(ev: &[C64], scale: f64) -> (Verdict, f64) {
    let max_re = ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let v = if max_re.abs() < MARGINAL_TOL * scale {
        Verdict::Marginal
    } else if max_re < 0.0 {
        Verdict::AsymptoticallyStable
    } else {
        Verdict::Unstable
    };
    (v, max_re)
}

/// Exact characteristic polynomial and Hurwitz determinants at a steady state.
pub struct ExactSpectrum {
    pub char_poly: Vec<ExactValue>,
    pub hurwitz: Vec<ExactValue>,
    pub hurwitz_stable: Option<bool>,
}

fn spectrum_in<F: OrderedField>(jac: &[Vec<F>], show: impl Fn(&F) -> ExactValue) -> Result<(Vec<F>, ExactSpectrum)> {
    let cp = char_poly(jac);
    let deltas = hurwitz_determinants(&cp)?;
    let stable = hurwitz_stable(&cp)?;
    let spec = ExactSpectrum {
        char_poly: cp.iter().map(&show).collect(),
        hurwitz: deltas.iter().map(&show).collect(),
        hurwitz_stable: stable,
    };
    Ok((cp, spec))
}

/// Exact spectrum data at `st`: `Q(sqrt d)` arithmetic for closed forms,
/// refined rational enclosures for algebraic coordinates.
pub fn exact_spectrum(m: &ModelDef, p: &ParameterSet, st: &SteadyState) -> Result<ExactSpectrum> {
    if let Some(xs) = st.surds() {
        let d = xs.iter().find(|q| !q.is_rational()).map(|q| q.d.clone()).unwrap_or_else(|| int(0));
        let params: Vec<QuadSurd> = p.values_for(m.id)?.into_iter().map(|v| QuadSurd::rational(v, &d)).collect();
        let jac = m.jacobian_in(&params, &xs)?;
        return Ok(spectrum_in(&jac, ExactValue::of_surd)?.1);
    }
    let params: Vec<RatInterval> = p.values_for(m.id)?.into_iter().map(RatInterval::point).collect();
    let mut eps = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(40));
    let mut last = None;
    for _ in 0..6 {
        let xs: Vec<RatInterval> = st
            .coords
            .iter()
            .map(|c| match c {
                Coordinate::Surd(q) => {
                    let v = crate::exactalg::rational::from_f64_exact(q.to_f64()).unwrap_or_else(|_| int(0));
                    RatInterval::point(v)
                }
                Coordinate::Algebraic(a) => {
                    let iv = a.refined(&eps).interval;
                    RatInterval::new(iv.lo, iv.hi)
                }
            })
            .collect();
        match m.jacobian_in(&params, &xs) {
            Ok(jac) => {
                let (_, spec) = spectrum_in(&jac, ExactValue::of_interval)?;
                let decided = spec.hurwitz_stable.is_some();
                last = Some(spec);
                if decided {
                    break;
                }
            }
            // an enclosure of a denominator can still meet zero
            Err(Error::Domain(_)) => {}
            Err(e) => return Err(e),
        }
        eps = &eps * &eps;
    }
    last.ok_or_else(|| Error::Numerical("interval enclosure of the Jacobian never excluded zero denominators".into()))
}

fn positive_state(m: &ModelDef, p: &ParameterSet) -> Result<SteadyState> {
    steady_states(m, p)?
        .into_iter()
        .find(|s| s.positive)
        .ok_or_else(|| Error::Numerical(format!("no positive steady state for {}", m.id)))
}

fn fmt_coord(c: &Coordinate) -> String {
    match c {
        Coordinate::Surd(q) => q.to_string(),
        Coordinate::Algebraic(a) => format!("root of {} in {}", a.poly, display_iv(&a.interval.lo, &a.interval.hi)),
    }
}

fn display_iv(lo: &impl Display, hi: &impl Display) -> String {
    format!("({lo}, {hi})")
}

/// Stability of the positive steady state.
pub fn classify(m: &ModelDef, p: &ParameterSet) -> Result<StabilityReport> {
    p.validate(m.id)?;
    let st = positive_state(m, p)?;
    let x = st.coords_f64();
    let jf = m.jacobian_f64(p, &x)?;
    let scale = jf.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    let ev = eigen_numeric(&jf)?;
    let (verdict, max_re) = verdict_of(&ev, scale);
    let spec = exact_spectrum(m, p, &st)?;
    let closed = if m.id.is_repressilator() { Some(flatten(&eigen_closed_form(m.id, p)?)) } else { None };
    let discrepancy = closed.as_ref().map(|c| max_relative_discrepancy(c, &ev));
    let linear_factor_positive = if m.id == ModelId::Bwd6d {
        Some(bwd6d_factors(p)?.linear_constant.sign() == Ordering::Greater)
    } else {
        None
    };
    let consistent = match (verdict, spec.hurwitz_stable) {
        (Verdict::Marginal, _) | (_, None) => true,
        (v, Some(h)) => (v == Verdict::AsymptoticallyStable) == h,
    };
    // constant term of det(lambda I - J) is (-1)^n det J
    let a_n = spec.char_poly.last().unwrap().clone();
    let to_pairs = |v: &[C64]| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
    Ok(StabilityReport {
        model: m.id,
        params: p.to_json_value(),
        steady_state: StateSummary { label: st.label.clone(), coords: x, exact: st.coords.iter().map(fmt_coord).collect() },
        a_n,
        char_poly: spec.char_poly,
        hurwitz: spec.hurwitz,
        hurwitz_stable: spec.hurwitz_stable,
        eigenvalues: to_pairs(&ev),
        closed_form_eigenvalues: closed.as_deref().map(to_pairs),
        closed_form_discrepancy: discrepancy,
        max_real_part: max_re,
        verdict,
        complex_pairs: pairs_of(&ev, scale),
        linear_factor_positive,
        consistent,
    })
}

/// Damping ratio of the complex pair at the 3D model's positive steady state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub params: serde_json::Value,
    pub re: f64,
    pub im: f64,
    pub ratio: f64,
    /// The statement `|Re| >= |Im|` checked at this point.
    pub claim: String,
    pub claim_holds: bool,
    /// `Re < 0`, decided exactly.
    pub stable: bool,
}

pub fn ratio_report(p: &ParameterSet) -> Result<RatioReport> {
    let ev = eigen_closed_form(ModelId::Rep3d, p)?;
    let super::eigen::ExactEigen::Pair { re, im_sq } = &ev[1] else {
        return Err(Error::Numerical("expected a complex pair".into()));
    };
    // |Re| >= |Im|  <=>  Re^2 - Im^2 >= 0, exactly
    let diff = crate::exactalg::Ring::sub_ref(&crate::exactalg::Ring::mul_ref(re, re), im_sq);
    let (r, i) = (re.to_f64(), im_sq.to_f64().max(0.0).sqrt());
    Ok(RatioReport {
        params: p.to_json_value(),
        re: r,
        im: i,
        ratio: r.abs() / i,
        claim: "|Re(lambda_2,3)| >= |Im(lambda_2,3)|".into(),
        claim_holds: diff.sign() != Ordering::Less,
        stable: re.sign() == Ordering::Less,
    })
}
