use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::field::{Field, OrderedField, Ring};
use super::rational::{format_rational, to_f64, Rational};

/// Element `a + b*sqrt(d)` of a real quadratic field, with exact sign.
///
/// All values that are combined must share the radicand `d`; a value with
/// `b == 0` is treated as rational and adopts the other operand's radicand.
#[derive(Clone, Debug)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        QuadSurd { a, b, d }
    }

    pub fn rational(a: Rational, d: &Rational) -> Self {
        QuadSurd { a, b: Rational::zero(), d: d.clone() }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: &Rational) -> Self {
        QuadSurd::new(Rational::zero(), Rational::from_integer(1.into()), d.clone())
    }

    pub fn conjugate(&self) -> Self {
        QuadSurd { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `(a + b sqrt d)(a - b sqrt d)`, a rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn radicand(&self, o: &QuadSurd) -> Rational {
        if o.b.is_zero() {
            self.d.clone()
        } else if self.b.is_zero() {
            o.d.clone()
        } else {
            assert!(self.d == o.d, "quadratic surds with different radicands");
            self.d.clone()
        }
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadSurd {}

fn rsign(r: &Rational) -> Ordering {
    OrderedField::sign(r)
}

impl Ring for QuadSurd {
    fn zero_like(&self) -> Self {
        QuadSurd::rational(Rational::zero(), &self.d)
    }
    fn one_like(&self) -> Self {
        QuadSurd::rational(Rational::from_integer(1.into()), &self.d)
    }
    fn add_ref(&self, o: &Self) -> Self {
        let d = self.radicand(o);
        QuadSurd { a: &self.a + &o.a, b: &self.b + &o.b, d }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let d = self.radicand(o);
        QuadSurd { a: &self.a - &o.a, b: &self.b - &o.b, d }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let d = self.radicand(o);
        QuadSurd {
            a: &self.a * &o.a + &self.b * &o.b * &d,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        }
    }
    fn neg_ref(&self) -> Self {
        QuadSurd { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn vanishes(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

impl Field for QuadSurd {
    fn from_rational(r: &Rational) -> Self {
        QuadSurd::rational(r.clone(), &Rational::zero())
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            // zero, or d is a perfect square and self = a(1 -+ sqrt d)/..
            if self.sign() == Ordering::Equal {
                return None;
            }
            // collapse to a rational when sqrt(d) is itself rational
            let r = rational_sqrt(&self.d)?;
            let v = &self.a + &self.b * r;
            return Some(QuadSurd::rational(v.recip(), &self.d));
        }
        let c = self.conjugate();
        Some(QuadSurd { a: c.a / &n, b: c.b / &n, d: self.d.clone() })
    }
}

fn rational_sqrt(d: &Rational) -> Option<Rational> {
    let n = d.numer().sqrt();
    let m = d.denom().sqrt();
    if &(&n * &n) == d.numer() && &(&m * &m) == d.denom() {
        Some(Rational::new(n, m))
    } else {
        None
    }
}

impl OrderedField for QuadSurd {
    fn sign(&self) -> Ordering {
        let sa = rsign(&self.a);
        let sb = if self.d.is_zero() { Ordering::Equal } else { rsign(&self.b) };
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * &self.d;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }
    fn to_f64(&self) -> f64 {
        let (a, r) = (to_f64(&self.a), to_f64(&self.b) * to_f64(&self.d).sqrt());
        if a * r < 0.0 {
            // a + r = norm / (a - r) without cancellation
            to_f64(&self.norm()) / (a - r)
        } else {
            a + r
        }
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.sub_ref(other).sign())
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rational(&self.a))
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            let b = format_rational(&self.b.abs());
            let d = format_rational(&self.d);
            if self.a.is_zero() {
                let lead = if sign == '-' { "-" } else { "" };
                write!(f, "{lead}{b}*sqrt({d})")
            } else {
                write!(f, "{} {sign} {b}*sqrt({d})", format_rational(&self.a))
            }
        }
    }
}
