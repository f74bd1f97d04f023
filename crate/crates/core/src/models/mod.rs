//! ODE models: the 3D and two 6D repressilators, plus Goodwin and
//! Elowitz–Leibler with a Hill exponent. Right-hand sides are stored as
//! rational functions over a context holding the parameters first and the
//! state variables after them.

mod compiled;
mod params;
mod steady;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use compiled::CompiledRhs;
pub use params::{ModelConfig, ParameterSet};
pub use steady::{
    closed_form_steady_states, rep3d_points, sixd_points, steady_states, symmetric_fixed_point,
    Coordinate, SteadyState,
};

use crate::error::{Error, Result};
use crate::exactalg::matrix;
use crate::exactalg::rational::to_f64;
use crate::exactalg::{parse_polynomial, OrderedField, Polynomial, Rational, TermOrder, VarContext};
use crate::realroots::UniPoly;

pub const MODEL_ORDER: TermOrder = TermOrder::DegRevLex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Rep3d,
    Fwd6d,
    Bwd6d,
    Goodwin,
    Elowitz,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [ModelId::Rep3d, ModelId::Fwd6d, ModelId::Bwd6d, ModelId::Goodwin, ModelId::Elowitz];

    pub fn parse(text: &str) -> Result<ModelId> {
        match text.trim().to_ascii_lowercase().as_str() {
            "rep3d" => Ok(ModelId::Rep3d),
            "fwd6d" => Ok(ModelId::Fwd6d),
            "bwd6d" => Ok(ModelId::Bwd6d),
            "goodwin" => Ok(ModelId::Goodwin),
            "elowitz" | "elowitz-leibler" => Ok(ModelId::Elowitz),
            other => Err(Error::Parse(format!("unknown model {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Rep3d => "rep3d",
            ModelId::Fwd6d => "fwd6d",
            ModelId::Bwd6d => "bwd6d",
            ModelId::Goodwin => "goodwin",
            ModelId::Elowitz => "elowitz",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ModelId::Rep3d | ModelId::Fwd6d | ModelId::Bwd6d => &["s", "b", "g"],
            ModelId::Goodwin => &["k1", "k2", "k3", "k4", "k5", "k6", "k7"],
            ModelId::Elowitz => &["alpha0", "alpha", "beta"],
        }
    }

    pub fn state_names(self) -> &'static [&'static str] {
        match self {
            ModelId::Rep3d | ModelId::Goodwin => &["x", "y", "z"],
            ModelId::Fwd6d | ModelId::Bwd6d => &["x1", "x2", "x3", "x4", "x5", "x6"],
            ModelId::Elowitz => &["X1", "X2", "X3", "Y1", "Y2", "Y3"],
        }
    }

    pub fn dim(self) -> usize {
        self.state_names().len()
    }

    /// Whether the model takes an integer Hill exponent `n`.
    pub fn has_hill(self) -> bool {
        matches!(self, ModelId::Goodwin | ModelId::Elowitz)
    }

    /// The three models with closed-form steady states and exact analysis.
    pub fn is_repressilator(self) -> bool {
        matches!(self, ModelId::Rep3d | ModelId::Fwd6d | ModelId::Bwd6d)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `num / den` with both polynomials in the model context.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFun {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RatFun {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        RatFun { num, den }
    }

    pub fn derivative(&self, var: usize) -> RatFun {
        let n = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        RatFun { num: n, den: &self.den * &self.den }
    }

    /// Value at `point`; a vanishing denominator is a domain error.
    pub fn eval_in<F: OrderedField>(&self, point: &[F]) -> Result<F> {
        let d = self.den.eval_in(point)?;
        if d.sign() == Ordering::Equal {
            return Err(Error::Domain(format!("denominator {} vanishes", self.den)));
        }
        let n = self.num.eval_in(point)?;
        Ok(n.div(&d).expect("nonzero denominator"))
    }
}

/// Symmetry-reduced stationarity system of a 6D model.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub vars: VarContext,
    pub polys: Vec<Polynomial>,
    /// Full-model state indices that remain.
    pub kept_states: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ModelDef {
    pub id: ModelId,
    /// Hill exponent; 1 for the repressilator models.
    pub hill: u32,
    vars: VarContext,
    rhs: Vec<RatFun>,
    jac: Vec<Vec<RatFun>>,
    /// Pairs `(i, j)` with `d(x_i - x_j)/dt = -g (x_i - x_j)` identically.
    symmetry: Vec<(usize, usize)>,
}

fn x6(i: usize) -> String {
    format!("x{i}")
}

impl ModelDef {
    /// Builds a model. `hill` is ignored by the repressilator models.
    pub fn new(id: ModelId, hill: u32) -> Result<ModelDef> {
        if id.has_hill() && hill == 0 {
            return Err(Error::Domain("Hill exponent must be at least 1".into()));
        }
        let hill = if id.has_hill() { hill } else { 1 };
        let names: Vec<&str> = id.param_names().iter().chain(id.state_names()).copied().collect();
        let vars = VarContext::new(&names);
        let p = |t: &str| parse_polynomial(t, &vars, MODEL_ORDER);
        let mut rhs = Vec::new();
        let mut symmetry = Vec::new();
        match id {
            ModelId::Rep3d => {
                for (u, w) in [("x", "z"), ("y", "x"), ("z", "y")] {
                    rhs.push(RatFun::new(p(&format!("s*(1+{w}) + b - g*{u}*(1+{w})"))?, p(&format!("1+{w}"))?));
                }
            }
            ModelId::Fwd6d | ModelId::Bwd6d => {
                let args: [(usize, usize, usize); 6] = if id == ModelId::Fwd6d {
                    [(1, 2, 5), (2, 2, 5), (3, 4, 1), (4, 4, 1), (5, 6, 3), (6, 6, 3)]
                } else {
                    [(1, 4, 5), (2, 4, 5), (3, 6, 1), (4, 6, 1), (5, 2, 3), (6, 2, 3)]
                };
                for (u, v, w) in args {
                    let (u, v, w) = (x6(u), x6(v), x6(w));
                    rhs.push(RatFun::new(
                        p(&format!("(s - g*{u})*(1+{v}+{w}) + b*{v}"))?,
                        p(&format!("1+{v}+{w}"))?,
                    ));
                }
                symmetry = vec![(0, 1), (2, 3), (4, 5)];
            }
            ModelId::Goodwin => {
                let n = hill;
                rhs.push(RatFun::new(p(&format!("k1 - k3*x*(k2+z^{n})"))?, p(&format!("k2+z^{n}"))?));
                rhs.push(RatFun::new(p("k4*x - k5*y")?, p("1")?));
                rhs.push(RatFun::new(p("k6*y - k7*z")?, p("1")?));
            }
            ModelId::Elowitz => {
                let n = hill;
                for i in 1..=3 {
                    let prev = if i == 1 { 3 } else { i - 1 };
                    rhs.push(RatFun::new(
                        p(&format!("(alpha0 - X{i})*(1+Y{prev}^{n}) + alpha"))?,
                        p(&format!("1+Y{prev}^{n}"))?,
                    ));
                }
                for i in 1..=3 {
                    rhs.push(RatFun::new(p(&format!("-beta*(Y{i} - X{i})"))?, p("1")?));
                }
            }
        }
        let np = id.param_names().len();
        let jac = rhs
            .iter()
            .map(|f| (0..id.dim()).map(|j| f.derivative(np + j)).collect())
            .collect();
        Ok(ModelDef { id, hill, vars, rhs, jac, symmetry })
    }

    /// Model with the Hill exponent taken from `p` where the model needs one.
    pub fn for_params(id: ModelId, p: &ParameterSet) -> Result<ModelDef> {
        let hill = if id.has_hill() { p.hill()? } else { 1 };
        ModelDef::new(id, hill)
    }

    pub fn dim(&self) -> usize {
        self.id.dim()
    }

    pub fn vars(&self) -> &VarContext {
        &self.vars
    }

    pub fn nparams(&self) -> usize {
        self.id.param_names().len()
    }

    pub fn state_index(&self, k: usize) -> usize {
        self.nparams() + k
    }

    pub fn rhs(&self) -> &[RatFun] {
        &self.rhs
    }

    pub fn jacobian_symbolic(&self) -> &[Vec<RatFun>] {
        &self.jac
    }

    pub fn symmetry(&self) -> &[(usize, usize)] {
        &self.symmetry
    }

    /// RHS numerators; their common positive zeros are the positive steady
    /// states since every denominator is positive there.
    pub fn stationarity_numerators(&self) -> Vec<Polynomial> {
        self.rhs.iter().map(|f| f.num.clone()).collect()
    }

    /// For the 6D models, the numerators of the odd equations after setting
    /// `x2 = x1`, `x4 = x3`, `x6 = x5`, in the context `s, b, g, x1, x3, x5`.
    pub fn reduced_numerators(&self) -> Option<ReducedSystem> {
        if self.symmetry.is_empty() {
            return None;
        }
        let vars = VarContext::new(&["s", "b", "g", "x1", "x3", "x5"]);
        let map = [0, 1, 2, 3, 3, 4, 4, 5, 5];
        let kept_states = vec![0, 2, 4];
        let polys = kept_states.iter().map(|&k| self.rhs[k].num.map_vars(&vars, &map, MODEL_ORDER)).collect();
        Some(ReducedSystem { vars, polys, kept_states })
    }

    /// First stationarity numerator on the diagonal `x_1 = ... = x_n = u`,
    /// in the context of the parameters followed by `u`. Defined for the
    /// cyclically symmetric models.
    pub fn symmetric_equation(&self) -> Option<Polynomial> {
        if self.id == ModelId::Goodwin {
            return None;
        }
        let mut names: Vec<&str> = self.id.param_names().to_vec();
        names.push("u");
        let vars = VarContext::new(&names);
        let np = self.nparams();
        let map: Vec<usize> = (0..self.vars.len()).map(|i| i.min(np)).collect();
        Some(self.rhs[0].num.map_vars(&vars, &map, MODEL_ORDER))
    }

    /// Parameter values followed by the state, ready for evaluation.
    pub fn point<F: OrderedField>(&self, params: &[F], state: &[F]) -> Result<Vec<F>> {
        if params.len() != self.nparams() || state.len() != self.dim() {
            return Err(Error::Precondition(format!(
                "{} expects {} parameters and {} state values",
                self.id,
                self.nparams(),
                self.dim()
            )));
        }
        Ok(params.iter().chain(state).cloned().collect())
    }

    /// Denominators must be positive at the point.
    fn check_domain<F: OrderedField>(&self, point: &[F]) -> Result<()> {
        for f in &self.rhs {
            if f.den.eval_in(point)?.sign() != Ordering::Greater {
                return Err(Error::Domain(format!("denominator {} is not positive", f.den)));
            }
        }
        Ok(())
    }

    pub fn rhs_in<F: OrderedField>(&self, params: &[F], state: &[F]) -> Result<Vec<F>> {
        let pt = self.point(params, state)?;
        self.check_domain(&pt)?;
        self.rhs.iter().map(|f| f.eval_in(&pt)).collect()
    }

    pub fn rhs_exact(&self, p: &ParameterSet, state: &[Rational]) -> Result<Vec<Rational>> {
        self.rhs_in(&p.values_for(self.id)?, state)
    }

    pub fn rhs_f64(&self, p: &ParameterSet, state: &[f64]) -> Result<Vec<f64>> {
        let pf: Vec<f64> = p.values_for(self.id)?.iter().map(to_f64).collect();
        self.rhs_in(&pf, state)
    }

    pub fn jacobian_in<F: OrderedField>(&self, params: &[F], state: &[F]) -> Result<Vec<Vec<F>>> {
        let pt = self.point(params, state)?;
        self.check_domain(&pt)?;
        self.jac.iter().map(|row| row.iter().map(|f| f.eval_in(&pt)).collect()).collect()
    }

    pub fn jacobian_exact(&self, p: &ParameterSet, state: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        self.jacobian_in(&p.values_for(self.id)?, state)
    }

    pub fn jacobian_f64(&self, p: &ParameterSet, state: &[f64]) -> Result<Vec<Vec<f64>>> {
        let pf: Vec<f64> = p.values_for(self.id)?.iter().map(to_f64).collect();
        self.jacobian_in(&pf, state)
    }

    /// `det(lambda I - J)` at a rational state.
    pub fn char_poly(&self, p: &ParameterSet, state: &[Rational]) -> Result<UniPoly> {
        let j = self.jacobian_exact(p, state)?;
        let mut c = matrix::char_poly(&j);
        c.reverse();
        Ok(UniPoly::new(c))
    }

    /// Fast floating evaluation with the parameters substituted.
    pub fn compile(&self, p: &ParameterSet) -> Result<CompiledRhs> {
        CompiledRhs::new(self, p)
    }
}

/// Characteristic polynomial coefficients `[1, c1, ..., cn]` of a Jacobian
/// over any ordered field.
pub fn char_poly_coeffs<F: OrderedField>(j: &[Vec<F>]) -> Vec<F> {
    matrix::char_poly(j)
}

#[cfg(test)]
mod tests;
