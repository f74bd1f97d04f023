use std::cmp::Ordering;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::hurwitz::hurwitz_determinants;
use super::report::exact_spectrum;
use crate::error::{Error, Result};
use crate::exactalg::matrix::determinant;
use crate::exactalg::{OrderedField, Polynomial, QuadSurd, Rational, Ring, VarContext};
use crate::models::{steady_states, ModelDef, ModelId, ParameterSet, RatFun, MODEL_ORDER};
use crate::sampling::{log_uniform_samples, ParamGrid};

/// `num / den` whose sign is what matters.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Fraction {
    fn sign_at<F: OrderedField>(&self, pt: &[F]) -> Result<Ordering> {
        let n = self.num.eval_in(pt)?.sign();
        let d = self.den.eval_in(pt)?.sign();
        if d == Ordering::Equal {
            return Err(Error::Domain("formula denominator vanishes".into()));
        }
        Ok(if d == Ordering::Less { n.reverse() } else { n })
    }
}

/// Necessary conditions for a Hopf point:
/// stationarity, nonzero denominators, `a_n > 0`, `Delta_(n-1) = 0`,
/// `Delta_1, ..., Delta_(n-2) > 0`, and every variable positive.
#[derive(Clone, Debug)]
pub struct HopfFormula {
    pub vars: VarContext,
    pub stationarity: Vec<Polynomial>,
    pub denominators: Vec<Polynomial>,
    pub a_n: Fraction,
    /// `Delta_(n-1)`; absent in dimension one, where the formula is false.
    pub delta_top: Option<Fraction>,
    pub delta_lower: Vec<Fraction>,
    pub positive_vars: Vec<usize>,
}

/// Truth values of the conjuncts at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub stationary: bool,
    pub denominators_nonzero: bool,
    pub a_n_positive: bool,
    pub delta_top_zero: bool,
    pub delta_lower_positive: bool,
    pub positive: bool,
    pub satisfied: bool,
}

impl HopfFormula {
    /// Assembles the formula for `ds/dt = rhs` with `states` the indices of
    /// the state variables in `vars`; all variables are required positive.
    pub fn build(vars: &VarContext, states: &[usize], rhs: &[RatFun]) -> Result<HopfFormula> {
        let n = rhs.len();
        if n != states.len() || n == 0 {
            return Err(Error::Precondition("one right-hand side per state variable".into()));
        }
        let dens: Vec<Polynomial> = rhs.iter().map(|f| f.den.clone()).collect();
        let d2: Vec<Polynomial> = dens.iter().map(|d| d * d).collect();
        // J_ij = m[i][j] / D_i^2
        let m: Vec<Vec<Polynomial>> = rhs
            .iter()
            .map(|f| {
                states
                    .iter()
                    .map(|&v| &(&f.num.derivative(v) * &f.den) - &(&f.num * &f.den.derivative(v)))
                    .collect()
            })
            .collect();
        let one = Polynomial::one(vars, MODEL_ORDER);
        let zero = Polynomial::zero(vars, MODEL_ORDER);
        // P_k = (-1)^k sum_{|S|=k} det(m_S) prod_{i not in S} D_i^2, P_0 = prod D_i^2
        let mut p = vec![zero.clone(); n + 1];
        for mask in 0usize..(1 << n) {
            let sel: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let k = sel.len();
            let minor = if k == 0 {
                one.clone()
            } else {
                let sub: Vec<Vec<Polynomial>> =
                    sel.iter().map(|&i| sel.iter().map(|&j| m[i][j].clone()).collect()).collect();
                determinant(&sub)
            };
            let mut term = minor;
            for i in (0..n).filter(|i| mask >> i & 1 == 0) {
                term = &term * &d2[i];
            }
            p[k] = if k % 2 == 0 { &p[k] + &term } else { &p[k] - &term };
        }
        // distinct nonconstant denominators with multiplicity in D = prod D_i^2
        let mut factors: Vec<(Polynomial, u32)> = Vec::new();
        for d in &dens {
            if d.is_constant() {
                continue;
            }
            match factors.iter_mut().find(|(f, _)| f == d) {
                Some(e) => e.1 += 2,
                None => factors.push((d.clone(), 2)),
            }
        }
        let a_n = cancel(p[n].clone(), &factors, 1)?;
        let deltas = if n >= 2 { hurwitz_determinants(&p)? } else { Vec::new() };
        let mut fr = Vec::new();
        for (k, dk) in deltas.into_iter().enumerate().take(n.saturating_sub(1)) {
            fr.push(cancel(dk, &factors, k as u32 + 1)?);
        }
        let delta_top = if n >= 2 { fr.pop() } else { None };
        Ok(HopfFormula {
            vars: vars.clone(),
            stationarity: rhs.iter().map(|f| f.num.clone()).collect(),
            denominators: dens,
            a_n,
            delta_top,
            delta_lower: fr,
            positive_vars: (0..vars.len()).collect(),
        })
    }

    /// Symbolic formula for a model of dimension at most 4; larger systems
    /// are evaluated pointwise by [`hopf_falsify`] instead.
    pub fn for_model(m: &ModelDef) -> Result<HopfFormula> {
        if m.dim() > 4 {
            return Err(Error::Unsupported(format!("symbolic Hopf formula for the {}-dimensional {}", m.dim(), m.id)));
        }
        let states: Vec<usize> = (0..m.dim()).map(|k| m.state_index(k)).collect();
        HopfFormula::build(m.vars(), &states, m.rhs())
    }

    /// Structurally false (no Hurwitz condition of order `n - 1` exists).
    pub fn is_trivially_false(&self) -> bool {
        self.delta_top.is_none()
    }

    pub fn evaluate<F: OrderedField>(&self, pt: &[F]) -> Result<FormulaValue> {
        let stationary = self.stationarity.iter().map(|q| q.eval_in(pt)).collect::<Result<Vec<F>>>()?.iter().all(Ring::vanishes);
        let denominators_nonzero =
            self.denominators.iter().map(|q| q.eval_in(pt)).collect::<Result<Vec<F>>>()?.iter().all(|v| !v.vanishes());
        let positive = self.positive_vars.iter().all(|&i| pt[i].sign() == Ordering::Greater);
        let mut a_n_positive = false;
        let mut delta_top_zero = false;
        let mut delta_lower_positive = false;
        if denominators_nonzero {
            a_n_positive = self.a_n.sign_at(pt)? == Ordering::Greater;
            delta_top_zero = match &self.delta_top {
                Some(d) => d.sign_at(pt)? == Ordering::Equal,
                None => false,
            };
            delta_lower_positive = true;
            for d in &self.delta_lower {
                if d.sign_at(pt)? != Ordering::Greater {
                    delta_lower_positive = false;
                }
            }
        }
        let satisfied =
            stationary && denominators_nonzero && a_n_positive && delta_top_zero && delta_lower_positive && positive;
        Ok(FormulaValue {
            stationary,
            denominators_nonzero,
            a_n_positive,
            delta_top_zero,
            delta_lower_positive,
            positive,
            satisfied,
        })
    }
}

/// `num / D^power` with `D = prod f^e`, after dividing out factors of `D`
/// that divide `num`.
fn cancel(mut num: Polynomial, factors: &[(Polynomial, u32)], power: u32) -> Result<Fraction> {
    let mut den = Polynomial::one(num.vars(), MODEL_ORDER);
    for (f, e) in factors {
        let mut left = e * power;
        while left > 0 && !num.is_zero() {
            match num.exact_div(f)? {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        den = &den * &f.pow(left);
    }
    Ok(Fraction { num, den })
}

fn ord_i8(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Where to evaluate.
#[derive(Clone, Debug)]
pub enum ScanSpec {
    Grid(ParamGrid),
    /// Log-uniform samples of the named parameters in `[lo, hi]`.
    Random { names: Vec<String>, lo: f64, hi: f64, count: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub index: usize,
    pub params: serde_json::Value,
    pub state: String,
    /// Sign of `Delta_(n-1)`; `None` when undecided.
    pub delta_top_sign: Option<i8>,
    pub delta_top: f64,
    pub witness: bool,
    /// Formula evaluation agreed with the direct computation.
    pub formula_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HopfScanReport {
    pub model: ModelId,
    pub points: usize,
    pub seed: u64,
    pub states_checked: usize,
    pub witnesses: Vec<ScanPoint>,
    pub undecided: Vec<ScanPoint>,
    pub min_delta_top: Option<f64>,
    /// Neighbouring grid points where `Delta_(n-1)` changes sign.
    pub sign_changes: Vec<[usize; 2]>,
    pub formula_checked: usize,
    pub formula_disagreements: usize,
    pub result: String,
}

fn point_results(
    m: &ModelDef,
    formula: Option<&HopfFormula>,
    index: usize,
    p: &ParameterSet,
) -> Result<Vec<ScanPoint>> {
    let n = m.dim();
    let mut out = Vec::new();
    for st in steady_states(m, p)?.into_iter().filter(|s| s.positive) {
        let spec = exact_spectrum(m, p, &st)?;
        let cp = &spec.char_poly;
        let dt = if n >= 2 { Some(&spec.hurwitz[n - 2]) } else { None };
        let a_n_pos = cp[n].sign == Some(1);
        let lower_pos = spec.hurwitz[..n.saturating_sub(2)].iter().all(|d| d.sign == Some(1));
        let top_zero = dt.is_some_and(|d| d.sign == Some(0));
        let witness = a_n_pos && lower_pos && top_zero;
        let formula_agrees = match (formula, st.surds()) {
            (Some(f), Some(xs)) => {
                let d = xs.iter().find(|q| !q.is_rational()).map(|q| q.d.clone()).unwrap_or_else(Rational::zero);
                let params: Vec<QuadSurd> =
                    p.values_for(m.id)?.into_iter().map(|v| QuadSurd::rational(v, &d)).collect();
                let pt = m.point(&params, &xs)?;
                let v = f.evaluate(&pt)?;
                let top_sign = match &f.delta_top {
                    Some(fd) => Some(ord_i8(fd.sign_at(&pt)?)),
                    None => None,
                };
                Some(v.satisfied == witness && v.stationary && top_sign == dt.and_then(|d| d.sign))
            }
            _ => None,
        };
        out.push(ScanPoint {
            index,
            params: p.to_json_value(),
            state: st.label.clone(),
            delta_top_sign: dt.and_then(|d| d.sign),
            delta_top: dt.map(|d| d.value).unwrap_or(f64::NAN),
            witness,
            formula_agrees,
        });
    }
    Ok(out)
}

/// Evaluates the Hopf conditions at the positive steady states of every
/// sampled parameter point, in exact arithmetic. Output order is the
/// sample order regardless of scheduling.
pub fn hopf_falsify(
    m: &ModelDef,
    base: &ParameterSet,
    spec: &ScanSpec,
    seed: u64,
    formula: Option<&HopfFormula>,
) -> Result<HopfScanReport> {
    let params: Vec<ParameterSet> = match spec {
        ScanSpec::Grid(g) => (0..g.len()).map(|i| g.point(i, base)).collect::<Result<_>>()?,
        ScanSpec::Random { names, lo, hi, count } => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            log_uniform_samples(&names, *lo, *hi, *count, seed)?
                .into_iter()
                .map(|s| {
                    let mut p = base.clone();
                    for (k, v) in s.iter() {
                        p.set(k, v.clone());
                    }
                    p
                })
                .collect()
        }
    };
    for p in &params {
        p.validate(m.id)?;
    }
    let results: Vec<Vec<ScanPoint>> =
        params.par_iter().enumerate().map(|(i, p)| point_results(m, formula, i, p)).collect::<Result<_>>()?;
    let flat: Vec<&ScanPoint> = results.iter().flatten().collect();
    let witnesses: Vec<ScanPoint> = flat.iter().filter(|r| r.witness).map(|r| (*r).clone()).collect();
    let undecided: Vec<ScanPoint> = flat.iter().filter(|r| r.delta_top_sign.is_none()).map(|r| (*r).clone()).collect();
    let min_delta_top = flat.iter().map(|r| r.delta_top).filter(|v| v.is_finite()).reduce(f64::min);
    let mut sign_changes = Vec::new();
    if let ScanSpec::Grid(g) = spec {
        let sign = |i: usize| -> Option<i8> {
            let r = &results[i];
            if r.len() == 1 {
                r[0].delta_top_sign
            } else {
                None
            }
        };
        for (a, b) in g.neighbours() {
            if let (Some(x), Some(y)) = (sign(a), sign(b)) {
                if x * y < 0 {
                    sign_changes.push([a, b]);
                }
            }
        }
    }
    let formula_checked = flat.iter().filter(|r| r.formula_agrees.is_some()).count();
    let formula_disagreements = flat.iter().filter(|r| r.formula_agrees == Some(false)).count();
    let result = if !witnesses.is_empty() {
        "witness found"
    } else if !sign_changes.is_empty() {
        "no witness at sample points; sign changes between neighbours"
    } else {
        "no witness found"
    };
    Ok(HopfScanReport {
        model: m.id,
        points: params.len(),
        seed,
        states_checked: flat.len(),
        witnesses,
        undecided,
        min_delta_top,
        sign_changes,
        formula_checked,
        formula_disagreements,
        result: result.to_string(),
    })
}
