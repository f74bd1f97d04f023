use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::exactalg::rational::{format_rational, to_f64};
use crate::exactalg::{Field, OrderedField, Rational, Ring};

/// Closed rational interval with exact endpoint arithmetic. `sign` is
/// `Equal` whenever the interval meets zero, so an `Equal` answer means
/// "undecided" unless the interval is the point zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl Ring for RatInterval {
    fn zero_like(&self) -> Self {
        RatInterval::point(Rational::zero())
    }
    fn one_like(&self) -> Self {
        RatInterval::point(Rational::from_integer(1.into()))
    }
    fn add_ref(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        RatInterval { lo: c.iter().min().unwrap().clone(), hi: c.iter().max().unwrap().clone() }
    }
    fn neg_ref(&self) -> Self {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }
    fn vanishes(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl Field for RatInterval {
    fn from_rational(r: &Rational) -> Self {
        RatInterval::point(r.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.contains_zero() {
            None
        } else {
            Some(RatInterval { lo: self.hi.recip(), hi: self.lo.recip() })
        }
    }
}

impl OrderedField for RatInterval {
    fn sign(&self) -> Ordering {
        if self.lo.is_positive() {
            Ordering::Greater
        } else if self.hi.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn to_f64(&self) -> f64 {
        0.5 * (to_f64(&self.lo) + to_f64(&self.hi))
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}
