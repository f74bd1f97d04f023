//! JSON encodings of polynomials and ideals. Coefficients are rational
//! strings, exponent arrays follow the `vars` list.

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::order::TermOrder;
use super::polynomial::{Polynomial, VarContext};
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IdealJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vars: Vec<String>,
    pub generators: Vec<PolyJson>,
}

/// A file holding several named ideals.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IdealCollection {
    pub schema: u32,
    pub ideals: Vec<IdealJson>,
}

impl PolyJson {
    pub fn from_poly(p: &Polynomial) -> PolyJson {
        PolyJson {
            vars: p.vars().names().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(c, m)| TermJson { c: format_rational(c), e: m.exponents().to_vec() })
                .collect(),
        }
    }

    /// Decodes into `ctx`; the stored variable list must name the same
    /// variables (it may be a reordering or a subset).
    pub fn to_poly(&self, ctx: &VarContext, order: TermOrder) -> Result<Polynomial> {
        let own = VarContext::new(&self.vars);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.e.len() != self.vars.len() {
                return Err(Error::Parse(format!(
                    "exponent array of length {} for {} variables",
                    t.e.len(),
                    self.vars.len()
                )));
            }
            terms.push((parse_rational(&t.c)?, Monomial::new(t.e.clone())));
        }
        let p = Polynomial::from_terms(&own, order, terms)?;
        if own == *ctx {
            Ok(Polynomial::from_terms_unchecked(ctx, order, p.terms().to_vec()))
        } else {
            p.embed(ctx, order)
        }
    }

    pub fn to_poly_own(&self, order: TermOrder) -> Result<Polynomial> {
        self.to_poly(&VarContext::new(&self.vars), order)
    }
}

impl IdealJson {
    pub fn from_polys(name: Option<&str>, vars: &VarContext, gens: &[Polynomial]) -> IdealJson {
        IdealJson {
            name: name.map(str::to_string),
            vars: vars.names().to_vec(),
            generators: gens.iter().map(PolyJson::from_poly).collect(),
        }
    }

    pub fn context(&self) -> VarContext {
        VarContext::new(&self.vars)
    }

    pub fn to_polys(&self, order: TermOrder) -> Result<(VarContext, Vec<Polynomial>)> {
        let ctx = self.context();
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_poly(&ctx, order))
            .collect::<Result<Vec<_>>>()?;
        Ok((ctx, gens))
    }

    pub fn parse(text: &str) -> Result<IdealJson> {
        Ok(serde_json::from_str(text)?)
    }
}

impl IdealCollection {
    pub fn parse(text: &str) -> Result<IdealCollection> {
        let c: IdealCollection = serde_json::from_str(text)?;
        if c.schema != 1 {
            return Err(Error::Parse(format!("unsupported schema {}", c.schema)));
        }
        Ok(c)
    }

    pub fn get(&self, name: &str) -> Result<&IdealJson> {
        self.ideals
            .iter()
            .find(|i| i.name.as_deref() == Some(name))
            .ok_or_else(|| Error::Parse(format!("no ideal named {name:?}")))
    }
}
