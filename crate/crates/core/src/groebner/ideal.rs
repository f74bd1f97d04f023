use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{IdealJson, Polynomial, Rational, TermOrder, VarContext};

/// Ideal given by generators in a shared context. Zero generators are dropped,
/// so an empty list stands for the zero ideal.
#[derive(Clone, Debug)]
pub struct Ideal {
    vars: VarContext,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(generators: Vec<Polynomial>) -> Result<Ideal> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Precondition("an ideal needs at least one generator".into()))?;
        let vars = first.vars().clone();
        for g in &generators {
            first.same_context(g)?;
        }
        Ok(Ideal { vars, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(vars: &VarContext) -> Ideal {
        Ideal { vars: vars.clone(), generators: Vec::new() }
    }

    /// Builds from generators that may be empty, with an explicit context.
    pub fn with_context(vars: &VarContext, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if g.vars() != vars {
                return Err(Error::Context(format!(
                    "generator in {:?}, ideal in {:?}",
                    g.vars().names(),
                    vars.names()
                )));
            }
        }
        Ok(Ideal { vars: vars.clone(), generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn from_json(j: &IdealJson, order: TermOrder) -> Result<Ideal> {
        let (ctx, gens) = j.to_polys(order)?;
        Ideal::with_context(&ctx, gens)
    }

    pub fn vars(&self) -> &VarContext {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Substitutes values for some variables in every generator.
    pub fn specialize(&self, assign: &[(&str, Rational)]) -> Result<Ideal> {
        let mut idx = Vec::with_capacity(assign.len());
        for (name, v) in assign {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| Error::Context(format!("unknown variable {name:?}")))?;
            idx.push((i, v.clone()));
        }
        let keep: Vec<usize> =
            (0..self.vars.len()).filter(|i| !idx.iter().any(|(j, _)| j == i)).collect();
        let names: Vec<&str> = keep.iter().map(|&i| self.vars.names()[i].as_str()).collect();
        let ctx = VarContext::new(&names);
        let gens = self.generators.iter().map(|g| g.specialize_into(&idx, &keep, &ctx)).collect();
        Ideal::with_context(&ctx, gens)
    }

    pub fn to_json(&self, name: Option<&str>) -> IdealJson {
        IdealJson::from_polys(name, &self.vars, &self.generators)
    }
}

/// A Gröbner basis of `ideal` under `order`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ideal: Ideal,
    pub order: TermOrder,
    pub basis: Vec<Polynomial>,
    pub reduced: bool,
    pub stats: GbStats,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &VarContext {
        self.ideal.vars()
    }

    /// `true` when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(Polynomial::is_unit)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(super::normal_form(f, &self.basis, self.order)?.1.is_zero())
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(super::normal_form(f, &self.basis, self.order)?.1)
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_processed: usize,
    pub pairs_skipped: usize,
    pub zero_reductions: usize,
}

/// Caps on a Gröbner computation. `None` means unlimited.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct Budget {
    pub max_pairs: Option<usize>,
    pub max_seconds: Option<f64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: Some(200_000), max_seconds: Some(120.0) }
    }
}

pub const BUDGET_ENV: &str = "STEADYCERT_BUDGET_SECS";

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { max_pairs: None, max_seconds: None }
    }

    pub fn new(max_pairs: Option<usize>, max_seconds: Option<f64>) -> Budget {
        Budget { max_pairs, max_seconds }
    }

    /// Default budget, with the wall-clock cap taken from the environment
    /// variable when set.
    pub fn from_env() -> Budget {
        Budget::default().env_override()
    }

    pub fn env_override(mut self) -> Budget {
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            if let Ok(secs) = v.trim().parse::<f64>() {
                if secs > 0.0 {
                    self.max_seconds = Some(secs);
                }
            }
        }
        self
    }

    pub(crate) fn start(&self) -> BudgetClock {
        BudgetClock {
            start: Instant::now(),
            max_pairs: self.max_pairs,
            max_time: self.max_seconds.map(Duration::from_secs_f64),
        }
    }
}

pub(crate) struct BudgetClock {
    start: Instant,
    max_pairs: Option<usize>,
    max_time: Option<Duration>,
}

impl BudgetClock {
    pub(crate) fn check(&self, pairs: usize) -> Result<()> {
        if let Some(m) = self.max_pairs {
            if pairs > m {
                return Err(Error::Budget(format!("more than {m} S-pairs")));
            }
        }
        self.check_time()
    }

    pub(crate) fn check_time(&self) -> Result<()> {
        if let Some(t) = self.max_time {
            if self.start.elapsed() > t {
                return Err(Error::Budget(format!("wall time over {:.1}s", t.as_secs_f64())));
            }
        }
        Ok(())
    }
}
