use super::{ModelDef, ParameterSet};
use crate::error::{Error, Result};
use crate::exactalg::rational::to_f64;
use crate::exactalg::{Polynomial, VarContext};

/// Sparse polynomial in the state variables with floating coefficients.
#[derive(Clone, Debug)]
struct FloatPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl FloatPoly {
    fn new(p: &Polynomial) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(c, m)| {
                let e = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (i, k as i32))
                    .collect();
                (to_f64(c), e)
            })
            .collect();
        FloatPoly { terms }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| e.iter().fold(*c, |acc, &(i, k)| if k == 1 { acc * x[i] } else { acc * x[i].powi(k) }))
            .sum()
    }
}

/// Model right-hand side with the parameters fixed, for integration.
#[derive(Clone, Debug)]
pub struct CompiledRhs {
    eqs: Vec<(FloatPoly, FloatPoly)>,
}

impl CompiledRhs {
    pub fn new(m: &ModelDef, p: &ParameterSet) -> Result<Self> {
        let np = m.nparams();
        let vals = p.values_for(m.id)?;
        let assign: Vec<(usize, _)> = vals.into_iter().enumerate().collect();
        let keep: Vec<usize> = (np..np + m.dim()).collect();
        let ctx = VarContext::new(m.id.state_names());
        let eqs = m
            .rhs()
            .iter()
            .map(|f| {
                (
                    FloatPoly::new(&f.num.specialize_into(&assign, &keep, &ctx)),
                    FloatPoly::new(&f.den.specialize_into(&assign, &keep, &ctx)),
                )
            })
            .collect();
        Ok(CompiledRhs { eqs })
    }

    pub fn dim(&self) -> usize {
        self.eqs.len()
    }

    /// Writes the derivative into `out`; errors when a denominator is not
    /// positive.
    pub fn eval(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        for (k, (n, d)) in self.eqs.iter().enumerate() {
            let dv = d.eval(x);
            if !(dv > 0.0) {
                return Err(Error::Domain(format!("denominator {dv} at state {x:?}")));
            }
            out[k] = n.eval(x) / dv;
        }
        Ok(())
    }
}
