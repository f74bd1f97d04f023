use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::ModelId;
use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, from_f64_exact, to_f64};
use crate::exactalg::{parse_rational, Rational};

/// Named exact parameter values. The repressilators use `s`, `b`, `g`;
/// Goodwin uses `k1`..`k7` and `n`, Elowitz `alpha0`, `alpha`, `beta`, `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParameterSet {
    values: BTreeMap<String, Rational>,
}

impl ParameterSet {
    pub fn new() -> Self {
        ParameterSet::default()
    }

    pub fn sbg(s: Rational, b: Rational, g: Rational) -> Self {
        let mut p = ParameterSet::new();
        p.set("s", s);
        p.set("b", b);
        p.set("g", g);
        p
    }

    pub fn set(&mut self, name: &str, value: Rational) -> &mut Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Result<&Rational> {
        self.values.get(name).ok_or_else(|| Error::Parse(format!("missing parameter {name}")))
    }

    pub fn get_f64(&self, name: &str) -> Result<f64> {
        self.get(name).map(to_f64)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.values.iter()
    }

    pub fn s(&self) -> Result<&Rational> {
        self.get("s")
    }
    pub fn b(&self) -> Result<&Rational> {
        self.get("b")
    }
    pub fn g(&self) -> Result<&Rational> {
        self.get("g")
    }

    /// Hill exponent `n`, a positive integer.
    pub fn hill(&self) -> Result<u32> {
        let n = self.get("n")?;
        if !n.is_integer() || !n.is_positive() {
            return Err(Error::Domain(format!("Hill exponent must be a positive integer, got {n}")));
        }
        n.to_integer().to_u32().ok_or_else(|| Error::Domain("Hill exponent too large".into()))
    }

    /// `"s=1,b=10,g=0.2"`; values may be fractions or decimals.
    pub fn parse_assignments(text: &str) -> Result<Self> {
        let mut p = ParameterSet::new();
        for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got {item:?}")))?;
            p.set(k.trim(), parse_rational(v.trim())?);
        }
        Ok(p)
    }

    /// Object of strings or numbers. Numbers are taken at their exact binary value.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("params must be an object".into()))?;
        let mut p = ParameterSet::new();
        for (k, v) in obj {
            let r = match v {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) => match n.as_i64() {
                    Some(i) => Rational::from_integer(i.into()),
                    None => from_f64_exact(n.as_f64().unwrap_or(f64::NAN))?,
                },
                _ => return Err(Error::Parse(format!("parameter {k} must be a string or number"))),
            };
            p.set(k, r);
        }
        Ok(p)
    }

    pub fn to_json_value(&self) -> Value {
        Value::Object(
            self.values.iter().map(|(k, v)| (k.clone(), Value::String(format_rational(v)))).collect(),
        )
    }

    /// Checks that every parameter the model needs is present and positive.
    /// The leak rate `alpha0` may also be zero.
    pub fn validate(&self, model: ModelId) -> Result<()> {
        for name in model.param_names() {
            let v = self.get(name)?;
            if *name == "alpha0" && v.is_zero() {
                continue;
            }
            if !v.is_positive() {
                return Err(Error::Domain(format!("parameter {name} must be positive, got {}", format_rational(v))));
            }
        }
        if model.has_hill() {
            self.hill()?;
        }
        Ok(())
    }

    /// Values in the model's parameter order.
    pub fn values_for(&self, model: ModelId) -> Result<Vec<Rational>> {
        model.param_names().iter().map(|n| self.get(n).cloned()).collect()
    }

    /// Default parameters used by examples and the CLI when none are given.
    pub fn defaults(model: ModelId) -> Self {
        let r = |s: &str| parse_rational(s).expect("literal");
        match model {
            ModelId::Rep3d => ParameterSet::sbg(r("3/10"), r("4"), r("3/5")),
            ModelId::Fwd6d | ModelId::Bwd6d => ParameterSet::sbg(r("1"), r("10"), r("1/5")),
            ModelId::Goodwin => {
                let mut p = ParameterSet::new();
                for k in 1..=7 {
                    p.set(&format!("k{k}"), Rational::one());
                }
                p.with("n", r("10"))
            }
            ModelId::Elowitz => ParameterSet::new()
                .with("alpha0", r("1/5"))
                .with("alpha", r("200"))
                .with("beta", r("5"))
                .with("n", r("2")),
        }
    }
}

/// `{"model": "rep3d", "params": {"s": "3/10", "b": "4", "g": "3/5"}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    pub model: ModelId,
    pub params: ParameterSet,
}

#[derive(Deserialize, Serialize)]
struct RawConfig {
    model: String,
    params: Value,
}

impl ModelConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text)?;
        let model = ModelId::parse(&raw.model)?;
        let params = ParameterSet::from_json_value(&raw.params)?;
        params.validate(model)?;
        Ok(ModelConfig { model, params })
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::json!({ "model": self.model.name(), "params": self.params.to_json_value() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    #[test]
    fn assignments_and_json() {
        let p = ParameterSet::parse_assignments("s=0.3, b=4,g=3/5").unwrap();
        assert_eq!(p.s().unwrap(), &rat(3, 10));
        assert_eq!(p.g().unwrap(), &rat(3, 5));
        let c = ModelConfig::parse(r#"{"model": "rep3d", "params": {"s": "3/10", "b": 4, "g": "0.6"}}"#)
            .unwrap();
        assert_eq!(c.params, p);
        assert!(ParameterSet::parse_assignments("s").is_err());
    }

    #[test]
    fn validation() {
        let p = ParameterSet::sbg(rat(1, 1), rat(0, 1), rat(1, 1));
        assert!(matches!(p.validate(ModelId::Rep3d), Err(Error::Domain(_))));
        let mut q = ParameterSet::defaults(ModelId::Elowitz);
        q.validate(ModelId::Elowitz).unwrap();
        q.set("n", rat(3, 2));
        assert!(q.validate(ModelId::Elowitz).is_err());
        assert!(ParameterSet::new().validate(ModelId::Goodwin).is_err());
    }
}
