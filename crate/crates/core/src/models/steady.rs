use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{ModelDef, ModelId, ParameterSet};
use crate::error::{Error, Result};
use crate::exactalg::rational::{int, to_f64};
use crate::exactalg::{OrderedField, QuadSurd, Rational};
use crate::realroots::{isolate_roots, AlgebraicReal, Domain, UniPoly};

/// One coordinate of a steady state.
#[derive(Clone, Debug, PartialEq)]
pub enum Coordinate {
    /// Closed form `a + b sqrt(d)`.
    Surd(QuadSurd),
    /// Root of a univariate polynomial in an isolating interval.
    Algebraic(AlgebraicReal),
}

impl Coordinate {
    pub fn to_f64(&self) -> f64 {
        match self {
            Coordinate::Surd(q) => q.to_f64(),
            Coordinate::Algebraic(a) => a.to_f64(),
        }
    }

    pub fn sign(&self) -> Ordering {
        match self {
            Coordinate::Surd(q) => q.sign(),
            Coordinate::Algebraic(a) => a.sign(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteadyState {
    pub model: ModelId,
    pub label: String,
    pub coords: Vec<Coordinate>,
    /// Every coordinate is strictly positive.
    pub positive: bool,
}

impl SteadyState {
    fn new(model: ModelId, label: &str, coords: Vec<Coordinate>) -> Self {
        let positive = coords.iter().all(|c| c.sign() == Ordering::Greater);
        SteadyState { model, label: label.to_string(), coords, positive }
    }

    pub fn coords_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Coordinate::to_f64).collect()
    }

    /// Coordinates as surds when they all are.
    pub fn surds(&self) -> Option<Vec<QuadSurd>> {
        self.coords
            .iter()
            .map(|c| match c {
                Coordinate::Surd(q) => Some(q.clone()),
                Coordinate::Algebraic(_) => None,
            })
            .collect()
    }

    /// Largest absolute stationarity-numerator value in floating point.
    pub fn residual_f64(&self, m: &ModelDef, p: &ParameterSet) -> Result<f64> {
        let pf: Vec<f64> = p.values_for(m.id)?.iter().map(to_f64).collect();
        let pt = m.point(&pf, &self.coords_f64())?;
        let mut worst = 0.0f64;
        for n in m.stationarity_numerators() {
            worst = worst.max(n.eval_f64(&pt)?.abs());
        }
        Ok(worst)
    }

    /// Exact check that every stationarity numerator vanishes, available
    /// when the coordinates are surds.
    pub fn vanishes_exactly(&self, m: &ModelDef, p: &ParameterSet) -> Result<Option<bool>> {
        let Some(xs) = self.surds() else { return Ok(None) };
        let d = xs.iter().find(|q| !q.is_rational()).map(|q| q.d.clone()).unwrap_or_else(Rational::zero);
        let params: Vec<QuadSurd> = p.values_for(m.id)?.into_iter().map(|v| QuadSurd::rational(v, &d)).collect();
        let pt = m.point(&params, &xs)?;
        for n in m.stationarity_numerators() {
            if n.eval_in(&pt)?.sign() != Ordering::Equal {
                return Ok(Some(false));
            }
        }
        Ok(Some(true))
    }
}

/// The two symmetric fixed-point values `(a, b)` of the 3D model:
/// `(s - g -+ u) / (2g)` with `u = sqrt(4bg + (g + s)^2)`.
pub fn rep3d_points(p: &ParameterSet) -> Result<(QuadSurd, QuadSurd)> {
    let (s, b, g) = (p.s()?, p.b()?, p.g()?);
    let d = int(4) * b * g + (g + s) * (g + s);
    let two_g = int(2) * g;
    let a0 = (s - g) / &two_g;
    let c = two_g.recip();
    Ok((QuadSurd::new(a0.clone(), -&c, d.clone()), QuadSurd::new(a0, c, d)))
}

/// The two symmetric fixed-point values `(f, h)` of the 6D models, roots of
/// `2g x^2 + (g - 2s - b) x - s`.
pub fn sixd_points(p: &ParameterSet) -> Result<(QuadSurd, QuadSurd)> {
    let (s, b, g) = (p.s()?, p.b()?, p.g()?);
    let lin = g - int(2) * s - b;
    let d = &lin * &lin + int(8) * g * s;
    let four_g = int(4) * g;
    let a0 = -&lin / &four_g;
    let c = four_g.recip();
    Ok((QuadSurd::new(a0.clone(), c.clone(), d.clone()), QuadSurd::new(a0, -c, d)))
}

/// Closed-form steady states of the repressilator models: `A`, `B` for the
/// 3D model and `F`, `H` for the 6D ones. The positive point comes second
/// for the 3D model and first for the 6D ones.
pub fn closed_form_steady_states(m: ModelId, p: &ParameterSet) -> Result<Vec<SteadyState>> {
    p.validate(m)?;
    let diag = |v: &QuadSurd, n: usize| vec![Coordinate::Surd(v.clone()); n];
    match m {
        ModelId::Rep3d => {
            let (a, b) = rep3d_points(p)?;
            Ok(vec![SteadyState::new(m, "A", diag(&a, 3)), SteadyState::new(m, "B", diag(&b, 3))])
        }
        ModelId::Fwd6d | ModelId::Bwd6d => {
            let (f, h) = sixd_points(p)?;
            Ok(vec![SteadyState::new(m, "F", diag(&f, 6)), SteadyState::new(m, "H", diag(&h, 6))])
        }
        _ => Err(Error::Unsupported(format!("no closed-form steady states for {m}"))),
    }
}

/// The positive fixed point of Goodwin or Elowitz–Leibler from its scalar
/// equation, by exact root isolation.
pub fn symmetric_fixed_point(m: &ModelDef, p: &ParameterSet) -> Result<SteadyState> {
    p.validate(m.id)?;
    let n = m.hill as usize;
    match m.id {
        ModelId::Goodwin => {
            let k = |i: usize| p.get(&format!("k{i}")).cloned();
            let c = k(4)? * k(6)? / (k(5)? * k(7)?);
            // k3 x (k2 + (c x)^n) - k1
            let mut coeffs = vec![Rational::zero(); n + 2];
            coeffs[0] = -k(1)?;
            coeffs[1] = k(3)? * k(2)?;
            coeffs[n + 1] += k(3)? * num_traits::pow(c.clone(), n);
            let x = positive_root(UniPoly::new(coeffs))?;
            let y = x.scaled(&(k(4)? / k(5)?));
            let z = x.scaled(&c);
            let coords = [x, y, z].into_iter().map(Coordinate::Algebraic).collect();
            Ok(SteadyState::new(m.id, "P", coords))
        }
        ModelId::Elowitz => {
            let (a0, a) = (p.get("alpha0")?.clone(), p.get("alpha")?.clone());
            // (u - alpha0)(1 + u^n) - alpha
            let mut coeffs = vec![Rational::zero(); n + 2];
            coeffs[0] -= &a0 + &a;
            coeffs[1] += Rational::one();
            coeffs[n] -= &a0;
            coeffs[n + 1] += Rational::one();
            let u = positive_root(UniPoly::new(coeffs))?;
            Ok(SteadyState::new(m.id, "P", vec![Coordinate::Algebraic(u); 6]))
        }
        _ => Err(Error::Unsupported(format!("{} has closed-form steady states", m.id))),
    }
}

fn positive_root(q: UniPoly) -> Result<AlgebraicReal> {
    let roots = isolate_roots(&q, &Domain::Positive);
    if roots.len() != 1 {
        return Err(Error::Numerical(format!("expected one positive root of {q}, found {}", roots.len())));
    }
    Ok(AlgebraicReal::new(q, roots.into_iter().next().unwrap()))
}

/// All steady states the toolkit can describe for the model.
pub fn steady_states(m: &ModelDef, p: &ParameterSet) -> Result<Vec<SteadyState>> {
    if m.id.is_repressilator() {
        closed_form_steady_states(m.id, p)
    } else {
        Ok(vec![symmetric_fixed_point(m, p)?])
    }
}
