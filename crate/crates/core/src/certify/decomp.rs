use std::fmt;

use serde::Serialize;

use super::data;
use super::pipelines::Check;
use super::solve::solve_zero_dim;
use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, int};
use crate::exactalg::{Polynomial, Rational, TermOrder};
use crate::groebner::{buchberger, groebner, quotient, Budget, Ideal};
use crate::models::{ModelDef, ModelId, ParameterSet};
use crate::sampling::log_uniform_samples;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decomposition {
    I,
    J,
    Quotient,
}

impl Decomposition {
    pub fn parse(text: &str) -> Result<Decomposition> {
        match text {
            "I" | "i" => Ok(Decomposition::I),
            "J" | "j" => Ok(Decomposition::J),
            "quotient" | "HG" | "H:G" => Ok(Decomposition::Quotient),
            _ => Err(Error::Parse(format!("unknown decomposition {text:?}; expected I, J or quotient"))),
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decomposition::I => "I",
            Decomposition::J => "J",
            Decomposition::Quotient => "quotient",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub which: Decomposition,
    pub seed: u64,
    pub specializations: Vec<serde_json::Value>,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

/// Positive rational points `(s, b, g)` used for specialized checks.
pub fn specialization_points(seed: u64, count: usize) -> Result<Vec<ParameterSet>> {
    log_uniform_samples(&["s", "b", "g"], 1e-2, 1e2, count, seed)
}

fn assign(p: &ParameterSet) -> Result<Vec<(&'static str, Rational)>> {
    Ok(vec![("s", p.s()?.clone()), ("b", p.b()?.clone()), ("g", p.g()?.clone())])
}

fn params_label(p: &ParameterSet) -> String {
    p.iter().map(|(k, v)| format!("{k}={}", format_rational(v))).collect::<Vec<_>>().join(",")
}

/// Every generator of `sub` reduces to zero modulo a basis of `sup`.
fn contained(sub: &Ideal, sup: &Ideal, budget: &Budget) -> Result<bool> {
    let gb = buchberger(sup, TermOrder::DegRevLex, budget)?;
    for f in sub.generators() {
        if !gb.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn contained_at(sub: &Ideal, sup: &Ideal, points: &[ParameterSet], budget: &Budget) -> Result<Option<String>> {
    for p in points {
        let a = assign(p)?;
        if !contained(&sub.specialize(&a)?, &sup.specialize(&a)?, budget)? {
            return Ok(Some(params_label(p)));
        }
    }
    Ok(None)
}

/// Symbolic containment, with specializations as the fallback when the
/// budget runs out. With `parametric` the statement is over the field of
/// parameters, so a symbolic non-member is re-checked pointwise.
fn containment_check(
    name: &str,
    sub: &Ideal,
    sup: &Ideal,
    points: &[ParameterSet],
    parametric: bool,
    budget: &Budget,
) -> Result<Check> {
    match contained(sub, sup, budget) {
        Ok(true) => return Ok(Check::new(name, true, "symbolic", "every generator reduces to 0")),
        Ok(false) if !parametric => {
            return Ok(Check::new(name, false, "symbolic", "a generator has a nonzero normal form"))
        }
        Ok(false) => {}
        Err(Error::Budget(_)) => {}
        Err(e) => return Err(e),
    }
    let method = format!("specialized:{}", points.len());
    Ok(match contained_at(sub, sup, points, budget)? {
        None => Check::new(name, true, &method, "every generator reduces to 0 at every point"),
        Some(p) => Check::new(name, false, &method, format!("fails at {p}")),
    })
}

fn same_generators(a: &Ideal, b: &Ideal) -> bool {
    let norm = |i: &Ideal| {
        let mut v: Vec<Polynomial> = i.generators().iter().map(|g| g.with_order(TermOrder::DegRevLex).primitive()).collect();
        v.sort_by_key(|p| p.to_string());
        v
    };
    a.vars() == b.vars() && norm(a) == norm(b)
}

/// Every real solution of the bwd6d system at each point lies on one of
/// the components, decided exactly through the shape parametrization.
fn coverage_check(name: &str, components: &[(&str, &Ideal)], points: &[ParameterSet], budget: &Budget) -> Result<Check> {
    let system = ModelDef::new(ModelId::Bwd6d, 1)?.reduced_numerators().expect("6D model").polys;
    let mut solutions = 0;
    let mut per: Vec<usize> = vec![0; components.len()];
    for p in points {
        let a = assign(p)?;
        let sys = system.iter().map(|f| f.specialize(&a)).collect::<Result<Vec<_>>>()?;
        let shape = solve_zero_dim(&sys, budget)?;
        let comps = components
            .iter()
            .map(|(_, c)| c.specialize(&a))
            .collect::<Result<Vec<_>>>()?;
        for pt in shape.real_points() {
            solutions += 1;
            let on: Vec<bool> = comps
                .iter()
                .map(|c| c.generators().iter().all(|f| shape.vanishes_at(f, &pt.root)))
                .collect();
            if !on.iter().any(|&x| x) {
                return Ok(Check::new(name, false, "exact", format!("a real solution at {} lies on no component", params_label(p))));
            }
            for (k, &x) in on.iter().enumerate() {
                per[k] += x as usize;
            }
        }
    }
    let split = components.iter().zip(&per).map(|((n, _), k)| format!("{n}: {k}")).collect::<Vec<_>>().join(", ");
    Ok(Check::new(
        name,
        true,
        &format!("exact:{}", points.len()),
        format!("{solutions} real solutions, each on a component ({split})"),
    ))
}

fn unit_at(i: &Ideal, p: &ParameterSet, budget: &Budget) -> Result<bool> {
    Ok(groebner(&i.specialize(&assign(p)?)?, TermOrder::DegRevLex, budget)?.is_unit())
}

fn quotient_points(seed: u64) -> Result<Vec<ParameterSet>> {
    let mut pts = vec![ParameterSet::sbg(int(1), int(2), int(3))];
    pts.extend(specialization_points(seed, 4)?);
    Ok(pts)
}

/// Runs the checks for one decomposition. `samples` is the number of
/// random specializations (at least 20 are used).
pub fn verify_decompositions(which: Decomposition, seed: u64, samples: usize, budget: &Budget) -> Result<DecompositionReport> {
    let n = samples.max(20);
    let points = specialization_points(seed, n)?;
    let coverage_points = &points[..points.len().min(5)];
    let model_system = {
        let r = ModelDef::new(ModelId::Bwd6d, 1)?.reduced_numerators().expect("6D model");
        Ideal::with_context(&r.vars, r.polys.iter().map(|f| f.with_order(TermOrder::DegRevLex)).collect())?
    };
    let mut checks = Vec::new();
    let mut used = points.clone();
    match which {
        Decomposition::I => {
            let i = data::ideal(data::I_COMPONENTS, "I")?;
            checks.push(Check::new(
                "I-is-model-system",
                same_generators(&i, &model_system),
                "symbolic",
                "stored generators of I equal the reduced bwd6d numerators",
            ));
            let comps: Vec<(&str, Ideal)> = ["I1", "I2", "I3"]
                .iter()
                .map(|&k| Ok((k, data::ideal(data::I_COMPONENTS, k)?)))
                .collect::<Result<_>>()?;
            for (k, c) in &comps {
                checks.push(containment_check(&format!("I-in-{k}"), &i, c, &points, false, budget)?);
            }
            let refs: Vec<(&str, &Ideal)> = comps.iter().map(|(k, c)| (*k, c)).collect();
            checks.push(coverage_check("I-coverage", &refs, coverage_points, budget)?);
        }
        Decomposition::J => {
            let j1 = data::ideal(data::J1_H123, "J1")?;
            let j2 = data::ideal(data::J1_H123, "J2")?;
            let i1 = data::ideal(data::I_COMPONENTS, "I1")?;
            let i3 = data::ideal(data::I_COMPONENTS, "I3")?;
            for (k, c) in [("J1", &j1), ("J2", &j2)] {
                checks.push(containment_check(&format!("J-in-{k}"), &model_system, c, &points, true, budget)?);
            }
            checks.push(Check::new("I1-is-J2", same_generators(&i1, &j2), "symbolic", "first component of I equals J2"));
            checks.push(containment_check("J1-in-I3", &j1, &i3, &points, false, budget)?);
            checks.push(coverage_check("J-coverage", &[("J1", &j1), ("J2", &j2)], coverage_points, budget)?);
        }
        Decomposition::Quotient => {
            let h = data::ideal(data::HG, "H")?;
            let g = data::ideal(data::HG, "G")?;
            let j1 = data::ideal(data::J1_H123, "J1")?;
            let i2 = data::ideal(data::I_COMPONENTS, "I2")?;
            checks.push(Check::new("H-is-J1", same_generators(&h, &j1), "symbolic", "H is generated by h1, h2, h3"));
            checks.push(Check::new("G-is-I2", same_generators(&g, &i2), "symbolic", "G is the second component of I"));
            checks.push(containment_check("H-in-G", &h, &g, &points, false, budget)?);
            let strict = match contained(&g, &h, budget) {
                Ok(c) => Check::new("G-not-in-H", !c, "symbolic", "some generator of G has a nonzero normal form modulo H"),
                Err(Error::Budget(m)) => Check::new("G-not-in-H", false, "symbolic", format!("undecided: {m}")),
                Err(e) => return Err(e),
            };
            checks.push(strict);
            let qpts = quotient_points(seed)?;
            let mut bad = None;
            for p in &qpts {
                let a = assign(p)?;
                let q = quotient(&h.specialize(&a)?, &g.specialize(&a)?, budget)?;
                if !groebner(&q, TermOrder::DegRevLex, budget)?.is_unit() {
                    bad = Some(params_label(p));
                    break;
                }
            }
            checks.push(match bad {
                None => Check::new("H:G-unit", true, &format!("specialized:{}", qpts.len()), "GB(H:G) = {1} at every point"),
                Some(p) => Check::new("H:G-unit", false, &format!("specialized:{}", qpts.len()), format!("H:G is proper at {p}")),
            });
            let collection = crate::exactalg::IdealCollection::parse(data::QUOTIENT_COMPONENTS)?;
            for c in &collection.ideals {
                let ci = Ideal::from_json(c, TermOrder::DegRevLex)?;
                let name = c.name.clone().unwrap_or_default();
                let mut empty = true;
                for p in &qpts {
                    empty &= unit_at(&ci, p, budget)?;
                }
                let detail = if name == "C1" {
                    "unit ideal at every point; s^2 + s b + b^2 > 0 for real (s, b) != 0 as well".to_string()
                } else {
                    "unit ideal at every point".to_string()
                };
                checks.push(Check::new(&format!("{name}-empty"), empty, &format!("specialized:{}", qpts.len()), detail));
            }
            used = qpts;
        }
    }
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(DecompositionReport {
        which,
        seed,
        specializations: used.iter().map(ParameterSet::to_json_value).collect(),
        checks,
        all_passed,
    })
}
