//! The scalar map behind the 3D model's cyclic structure. At a steady state
//! `x = phi(z)`, `y = phi(x)`, `z = phi(y)` with `phi(u) = (s u + s + b) / (g u + g)`,
//! so `Phi = phi^3` and its two-cycles decide global stability.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, int, rat, to_f64};
use crate::exactalg::{Field, OrderedField, QuadSurd, Rational, Ring};
use crate::models::{rep3d_points, ModelId, ParameterSet};
use crate::realroots::{isolate_roots, Domain, IntervalJson, UniPoly};

/// `u -> (a u + b) / (c u + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mobius {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Mobius {
        Mobius { a, b, c, d }
    }

    /// `self(o(u))`.
    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn denominator(&self, u: &Rational) -> Rational {
        &self.c * u + &self.d
    }

    pub fn eval(&self, u: &Rational) -> Result<Rational> {
        let den = self.denominator(u);
        if den.is_zero() {
            return Err(Error::Domain(format!("denominator vanishes at u = {}", format_rational(u))));
        }
        Ok((&self.a * u + &self.b) / den)
    }

    pub fn eval_surd(&self, u: &QuadSurd) -> Option<QuadSurd> {
        let lift = |r: &Rational| QuadSurd::rational(r.clone(), &u.d);
        let num = lift(&self.a).mul_ref(u).add_ref(&lift(&self.b));
        let den = lift(&self.c).mul_ref(u).add_ref(&lift(&self.d));
        num.div(&den)
    }

    /// Numerator of the derivative by the quotient rule at `u`.
    pub fn derivative_numerator(&self, u: &Rational) -> Rational {
        &self.a * self.denominator(u) - (&self.a * u + &self.b) * &self.c
    }

    /// Same map up to a common nonzero factor of the coefficients.
    pub fn same_map(&self, o: &Mobius) -> bool {
        let x = [&self.a, &self.b, &self.c, &self.d];
        let y = [&o.a, &o.b, &o.c, &o.d];
        (0..4).all(|i| (0..4).all(|j| x[i] * y[j] == x[j] * y[i]))
    }

    /// Clears `self(u) = u` to `c u^2 + (d - a) u - b`.
    pub fn fixed_point_poly(&self) -> UniPoly {
        UniPoly::new(vec![-&self.b, &self.d - &self.a, self.c.clone()])
    }

    fn strings(&self) -> [String; 4] {
        [&self.a, &self.b, &self.c, &self.d].map(format_rational)
    }
}

/// `phi(u) = (s u + s + b) / (g u + g)`.
pub fn phi_step(p: &ParameterSet) -> Result<Mobius> {
    let (s, b, g) = (p.s()?, p.b()?, p.g()?);
    Ok(Mobius::new(s.clone(), s + b, g.clone(), g.clone()))
}

/// `Phi = phi o phi o phi`.
pub fn phi_map(p: &ParameterSet) -> Result<Mobius> {
    let f = phi_step(p)?;
    Ok(f.compose(&f).compose(&f))
}

/// The closed form of `Phi` as it is usually printed.
pub fn printed_phi(p: &ParameterSet) -> Result<Mobius> {
    let (s, b, g) = (p.s()?, p.b()?, p.g()?);
    let (s2, s3, g2) = (s * s, s * s * s, g * g);
    let a = -b * &g2 + int(2) * b * g * s - &g2 * s + int(2) * g * &s2 - &s3;
    let bb = b * b * g - b * &g2 + int(3) * b * g * s - b * &s2 - &g2 * s + int(2) * g * &s2 - &s3;
    let c = g * (-b * g + &g2 - int(2) * g * s + &s2);
    let d = g * (int(-2) * b * g + b * s + &g2 - int(2) * g * s + &s2);
    Ok(Mobius::new(a, bb, c, d))
}

#[derive(Clone, Debug, Serialize)]
pub struct SurdValue {
    pub exact: String,
    pub value: f64,
}

impl SurdValue {
    fn of(q: &QuadSurd) -> SurdValue {
        SurdValue { exact: q.to_string(), value: q.to_f64() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrintedForm {
    pub coefficients: [String; 4],
    pub values: Vec<f64>,
    pub matches_composition: bool,
    /// The printed map equals the composition with `g` replaced by `-g`.
    pub equals_composition_at_minus_g: bool,
    pub decreasing: bool,
    pub real_two_cycle_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AllwrightReport {
    pub params: serde_json::Value,
    /// `(a, b, c, d)` of `Phi(u) = (a u + b) / (c u + d)`.
    pub phi: [String; 4],
    pub sample_points: Vec<String>,
    pub values: Vec<f64>,
    pub derivative_signs: Vec<i8>,
    pub decreasing: bool,
    pub denominators_positive: bool,
    pub fixed_point_polynomial: String,
    pub roots: Vec<IntervalJson>,
    pub u1: SurdValue,
    pub u2: SurdValue,
    pub u1_positive: bool,
    pub u2_negative: bool,
    /// `u1` and `u2` are the isolated roots, decided exactly.
    pub roots_exact: bool,
    pub u1_equals_b: bool,
    pub phi_fixes_u1: bool,
    pub printed: PrintedForm,
    pub holds: bool,
}

fn sign_i8(r: &Rational) -> i8 {
    match OrderedField::sign(r) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn real_two_cycle_points(m: &Mobius) -> usize {
    isolate_roots(&m.compose(m).fixed_point_poly(), &Domain::All).len()
}

fn inside(q: &QuadSurd, iv: &crate::realroots::IsolatingInterval) -> bool {
    let lo = QuadSurd::rational(iv.lo.clone(), &q.d);
    let hi = QuadSurd::rational(iv.hi.clone(), &q.d);
    if iv.is_exact() {
        return q.sub_ref(&lo).sign() == Ordering::Equal;
    }
    q.sub_ref(&lo).sign() == Ordering::Greater && hi.sub_ref(q).sign() == Ordering::Greater
}

pub fn allwright_check(p: &ParameterSet) -> Result<AllwrightReport> {
    p.validate(ModelId::Rep3d).map_err(|e| Error::Precondition(e.to_string()))?;
    let phi = phi_map(p)?;
    let (_, bpt) = rep3d_points(p)?;
    let mut us: Vec<Rational> = [(0, 1), (1, 10), (1, 2), (1, 1), (2, 1), (10, 1), (100, 1), (1000, 1)]
        .iter()
        .map(|&(n, d)| rat(n, d))
        .collect();
    us.push(crate::exactalg::rational::from_f64_significant(bpt.to_f64(), 6)?);
    let values = us.iter().map(|u| phi.eval(u).map(|v| to_f64(&v))).collect::<Result<Vec<_>>>()?;
    let derivative_signs: Vec<i8> = us.iter().map(|u| sign_i8(&phi.derivative_numerator(u))).collect();
    let decreasing = derivative_signs.iter().all(|&s| s < 0) && OrderedField::sign(&phi.det()) == Ordering::Less;
    let denominators_positive = phi.c >= Rational::zero() && phi.d > Rational::zero();

    let two = phi.compose(&phi);
    let fp = two.fixed_point_poly();
    let roots = isolate_roots(&fp, &Domain::All);
    let (s, b, g) = (p.s()?, p.b()?, p.g()?);
    let d = (g + s) * (g + s) + int(4) * b * g;
    let half = (int(2) * g).recip();
    let u1 = QuadSurd::new((s - g) * &half, half.clone(), d.clone());
    let u2 = QuadSurd::new((s - g) * &half, -half, d);
    let eval_fp = |q: &QuadSurd| {
        let mut acc = q.zero_like();
        for c in fp.coeffs().iter().rev() {
            acc = acc.mul_ref(q).add_ref(&QuadSurd::rational(c.clone(), &q.d));
        }
        acc.sign() == Ordering::Equal
    };
    let roots_exact = roots.len() == 2
        && eval_fp(&u1)
        && eval_fp(&u2)
        && inside(&u2, &roots[0])
        && inside(&u1, &roots[1]);
    let u1_equals_b = u1.sub_ref(&bpt).sign() == Ordering::Equal;
    let phi_fixes_u1 = phi.eval_surd(&u1).is_some_and(|v| v.sub_ref(&u1).sign() == Ordering::Equal);
    let u1_positive = u1.sign() == Ordering::Greater;
    let u2_negative = u2.sign() == Ordering::Less;

    let pr = printed_phi(p)?;
    let flipped = phi_map(&p.clone().with("g", -g))?;
    let pvalues = us.iter().map(|u| pr.eval(u).map(|v| to_f64(&v)).unwrap_or(f64::NAN)).collect();
    let printed = PrintedForm {
        coefficients: pr.strings(),
        values: pvalues,
        matches_composition: pr.same_map(&phi),
        equals_composition_at_minus_g: pr.same_map(&flipped),
        decreasing: OrderedField::sign(&pr.det()) == Ordering::Less,
        real_two_cycle_points: real_two_cycle_points(&pr),
    };
    let holds = decreasing && denominators_positive && roots_exact && u1_positive && u2_negative && u1_equals_b && phi_fixes_u1;
    Ok(AllwrightReport {
        params: p.to_json_value(),
        phi: phi.strings(),
        sample_points: us.iter().map(format_rational).collect(),
        values,
        derivative_signs,
        decreasing,
        denominators_positive,
        fixed_point_polynomial: fp.to_string(),
        roots: roots.iter().map(|r| r.to_json()).collect(),
        u1: SurdValue::of(&u1),
        u2: SurdValue::of(&u2),
        u1_positive,
        u2_negative,
        roots_exact,
        u1_equals_b,
        phi_fixes_u1,
        printed,
        holds,
    })
}
