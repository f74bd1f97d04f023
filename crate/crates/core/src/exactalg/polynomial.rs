use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::field::{Field, Ring};
use super::monomial::Monomial;
use super::order::TermOrder;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Ordered list of variable names. Polynomials only combine when their
/// contexts hold the same names in the same order.
#[derive(Clone, Debug, Eq)]
pub struct VarContext(Arc<[String]>);

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarContext(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new context with `name` prepended.
    pub fn with_front(&self, name: &str) -> VarContext {
        let mut v = vec![name.to_string()];
        v.extend(self.0.iter().cloned());
        VarContext(v.into())
    }

    /// A new context with `name` appended.
    pub fn with_back(&self, name: &str) -> VarContext {
        let mut v: Vec<String> = self.0.to_vec();
        v.push(name.to_string());
        VarContext(v.into())
    }

    /// A variable name not already present, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Multivariate polynomial with exact rational coefficients. Terms are kept
/// strictly decreasing under the attached order, with no zero coefficients,
/// so the leading term is always the first one.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: VarContext,
    order: TermOrder,
    terms: Vec<(Rational, Monomial)>,
}

impl Polynomial {
    pub fn zero(vars: &VarContext, order: TermOrder) -> Self {
        Polynomial { vars: vars.clone(), order, terms: Vec::new() }
    }

    pub fn constant(vars: &VarContext, order: TermOrder, c: Rational) -> Self {
        let mut p = Polynomial::zero(vars, order);
        if !c.is_zero() {
            p.terms.push((c, Monomial::one(vars.len())));
        }
        p
    }

    pub fn one(vars: &VarContext, order: TermOrder) -> Self {
        Polynomial::constant(vars, order, Rational::one())
    }

    /// The polynomial consisting of variable `i`.
    pub fn var(vars: &VarContext, order: TermOrder, i: usize) -> Self {
        Polynomial {
            vars: vars.clone(),
            order,
            terms: vec![(Rational::one(), Monomial::var(vars.len(), i))],
        }
    }

    pub fn var_named(vars: &VarContext, order: TermOrder, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::Context(format!("unknown variable {name:?}")))?;
        Ok(Polynomial::var(vars, order, i))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(
        vars: &VarContext,
        order: TermOrder,
        terms: Vec<(Rational, Monomial)>,
    ) -> Result<Self> {
        if let Some((_, m)) = terms.iter().find(|(_, m)| m.len() != vars.len()) {
            return Err(Error::Context(format!(
                "exponent vector of length {} in a context of {} variables",
                m.len(),
                vars.len()
            )));
        }
        Ok(Self::from_terms_unchecked(vars, order, terms))
    }

    pub(crate) fn from_terms_unchecked(
        vars: &VarContext,
        order: TermOrder,
        terms: Vec<(Rational, Monomial)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (c, m) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(vars, order, acc)
    }

    fn from_map(vars: &VarContext, order: TermOrder, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Rational, Monomial)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect();
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        Polynomial { vars: vars.clone(), order, terms }
    }

    pub fn vars(&self) -> &VarContext {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Result<(&Rational, &Monomial)> {
        self.terms.first().map(|(c, m)| (c, m)).ok_or(Error::ZeroPolynomial)
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(_, m)| m.exponents()[var]).max().unwrap_or(0)
    }

    /// Whether any term involves variable `var`.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(_, m)| m.exponents()[var] > 0)
    }

    /// Coefficient of monomial `m` (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(_, t)| t == m)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Same polynomial with terms re-sorted for another order.
    pub fn with_order(&self, order: TermOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        Polynomial { vars: self.vars.clone(), order, terms }
    }

    pub fn same_context(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::Context(format!(
                "variables {:?} vs {:?}",
                self.vars.names(),
                other.vars.names()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_context(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_context(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_context(other)?;
        Ok(self.product(other))
    }

    /// `self + other` or `self - other`, merging two sorted term lists.
    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let other: Cow<'_, Polynomial> = if other.order == self.order {
            Cow::Borrowed(other)
        } else {
            Cow::Owned(other.with_order(self.order))
        };
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].1, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].0 } else { b[j].0.clone() };
                    out.push((c, b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].0 - &b[j].0 } else { &a[i].0 + &b[j].0 };
                    if !c.is_zero() {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (c, m) in &b[j..] {
            out.push((if negate { -c } else { c.clone() }, m.clone()));
        }
        Polynomial { vars: self.vars.clone(), order: self.order, terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.vars, self.order);
        }
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return other.with_order(self.order).mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.vars, self.order, acc)
    }

    /// `c * m * self`; the term order is preserved by multiplicativity.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, self.order);
        }
        let terms = self.terms.iter().map(|(a, t)| (a * c, t.mul(m))).collect();
        Polynomial { vars: self.vars.clone(), order: self.order, terms }
    }

    /// `self - c * m * g`, in one merge pass.
    pub(crate) fn sub_mul_term(&self, c: &Rational, m: &Monomial, g: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.order, g.order);
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Monomial> = b.first().map(|(_, t)| t.mul(m));
        while i < a.len() {
            let Some(bm) = bj.as_ref() else { break };
            match self.order.cmp(&a[i].1, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((-(&b[j].0 * c), bj.take().unwrap()));
                    j += 1;
                    bj = b.get(j).map(|(_, t)| t.mul(m));
                }
                Ordering::Equal => {
                    let v = &a[i].0 - &b[j].0 * c;
                    if !v.is_zero() {
                        out.push((v, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|(_, t)| t.mul(m));
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some(first) = bj {
            out.push((-(&b[j].0 * c), first));
            for (cb, t) in &b[j + 1..] {
                out.push((-(cb * c), t.mul(m)));
            }
        }
        Polynomial { vars: self.vars.clone(), order: self.order, terms: out }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Rational, Monomial)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Wraps terms that are already strictly decreasing under `order` and nonzero.
    pub(crate) fn from_sorted_unchecked(
        vars: &VarContext,
        order: TermOrder,
        terms: Vec<(Rational, Monomial)>,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        Polynomial { vars: vars.clone(), order, terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, self.order);
        }
        let terms = self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect();
        Polynomial { vars: self.vars.clone(), order: self.order, terms }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.lc() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars, self.order);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(_, m)| m.exponents()[var] > 0)
            .map(|(c, m)| {
                let e = m.exponents()[var];
                let mut m = m.clone();
                m.exponents_mut()[var] -= 1;
                (c * Rational::from_integer(e.into()), m)
            })
            .collect();
        // differentiation keeps the relative order of surviving terms
        Polynomial { vars: self.vars.clone(), order: self.order, terms }
    }

    /// Evaluates the polynomial at a point given in any ring containing the
    /// rationals.
    pub fn eval_in<F: Field>(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars() {
            return Err(Error::Context(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let zero = match point.first() {
            Some(p) => p.zero_like(),
            None => F::from_rational(&Rational::zero()),
        };
        // cache powers per variable
        let mut powers: Vec<Vec<F>> = point.iter().map(|p| vec![p.one_like()]).collect();
        let mut acc = zero;
        for (c, m) in &self.terms {
            let mut t = F::from_rational(c);
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[v].len() <= e {
                    let next = powers[v].last().unwrap().mul_ref(&point[v]);
                    powers[v].push(next);
                }
                t = t.mul_ref(&powers[v][e]);
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.eval_in(point)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        self.eval_in(point)
    }

    /// Substitutes exact values for the named variables and drops them from
    /// the context.
    pub fn specialize(&self, assign: &[(&str, Rational)]) -> Result<Polynomial> {
        let mut idx = Vec::with_capacity(assign.len());
        for (name, v) in assign {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| Error::Context(format!("unknown variable {name:?}")))?;
            idx.push((i, v.clone()));
        }
        let keep: Vec<usize> =
            (0..self.nvars()).filter(|i| !idx.iter().any(|(j, _)| j == i)).collect();
        let names: Vec<&str> = keep.iter().map(|&i| self.vars.names()[i].as_str()).collect();
        let ctx = VarContext::new(&names);
        Ok(self.specialize_into(&idx, &keep, &ctx))
    }

    pub(crate) fn specialize_into(
        &self,
        assign: &[(usize, Rational)],
        keep: &[usize],
        ctx: &VarContext,
    ) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut coeff = c.clone();
            for (i, v) in assign {
                let e = m.exponents()[*i];
                if e > 0 {
                    coeff *= num_traits::pow(v.clone(), e as usize);
                }
            }
            let e: Vec<u32> = keep.iter().map(|&k| m.exponents()[k]).collect();
            terms.push((coeff, Monomial::new(e)));
        }
        Polynomial::from_terms_unchecked(ctx, self.order, terms)
    }

    /// Re-expresses the polynomial in a context that contains every variable
    /// it actually uses (matched by name).
    pub fn embed(&self, ctx: &VarContext, order: TermOrder) -> Result<Polynomial> {
        let mut map = Vec::with_capacity(self.nvars());
        for name in self.vars.names() {
            map.push(ctx.index_of(name));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut e = vec![0u32; ctx.len()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = k,
                    None => {
                        return Err(Error::Context(format!(
                            "variable {:?} missing from target context",
                            self.vars.names()[i]
                        )))
                    }
                }
            }
            terms.push((c.clone(), Monomial::new(e)));
        }
        Ok(Polynomial::from_terms_unchecked(ctx, order, terms))
    }

    /// Moves every variable `i` to `map[i]` in `ctx`; variables sent to the
    /// same target are identified (their exponents add).
    pub fn map_vars(&self, ctx: &VarContext, map: &[usize], order: TermOrder) -> Polynomial {
        assert_eq!(map.len(), self.nvars(), "one target per variable");
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut e = vec![0u32; ctx.len()];
                for (i, &k) in m.exponents().iter().enumerate() {
                    e[map[i]] += k;
                }
                (c.clone(), Monomial::new(e))
            })
            .collect();
        Polynomial::from_terms_unchecked(ctx, order, terms)
    }

    /// Multivariate exact division by `d`; `None` if `d` does not divide.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.same_context(d)?;
        let d = d.with_order(self.order);
        let (dc, dm) = d.leading_term()?;
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((c, m)) = rem.terms.first().cloned() {
            let Some(q) = dm.quotient_of(&m) else { return Ok(None) };
            let qc = &c * &dc_inv;
            rem = rem.sub_mul_term(&qc, &q, &d);
            quot.push((qc, q));
        }
        Ok(Some(Polynomial::from_terms_unchecked(&self.vars, self.order, quot)))
    }

    /// Integer content-free form with positive leading coefficient; handy for
    /// comparing generators up to a constant factor.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = self.monic();
        let lcm = p
            .terms
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, (c, _)| num_integer::lcm(acc, c.denom().clone()));
        p = p.scale(&Rational::from_integer(lcm));
        let g = p
            .terms
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, (c, _)| num_integer::gcd(acc, c.numer().clone()));
        if !g.is_zero() && !g.is_one() {
            p = p.scale(&Rational::from_integer(g).recip());
        }
        p
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when contexts differ; use the `try_*` form to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                assert!(self.vars == rhs.vars, "polynomial context mismatch");
                $body(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                $tr::$method(&self, rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Polynomial, b: &Polynomial| a.merge(b, false));
binop!(Sub, sub, |a: &Polynomial, b: &Polynomial| a.merge(b, true));
binop!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.product(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(c, m)| (-c, m.clone())).collect();
        Polynomial { vars: self.vars.clone(), order: self.order, terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Ring for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(&self.vars, self.order)
    }
    fn one_like(&self) -> Self {
        Polynomial::one(&self.vars, self.order)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(format_rational(&a));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.names()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_polynomial;
    use crate::exactalg::rational::{int, rat};
    use proptest::prelude::*;

    fn ctx(names: &[&str]) -> VarContext {
        VarContext::new(names)
    }

    fn p(c: &VarContext, s: &str) -> Polynomial {
        parse_polynomial(s, c, TermOrder::Lex).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let c = ctx(&["x", "y"]);
        assert_eq!(&p(&c, "x+1") * &p(&c, "x-1"), p(&c, "x^2-1"));
        let q = p(&c, "3*x*y - 2");
        assert!((&q + &(-&q)).is_zero());
        assert_eq!(p(&c, "x+y").pow(2), p(&c, "x^2+2*x*y+y^2"));
        assert_eq!(p(&c, "x+y").scale(&rat(1, 2)), p(&c, "x/2 + y/2"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = p(&ctx(&["x", "y"]), "x");
        let b = p(&ctx(&["y", "x"]), "x");
        assert!(matches!(a.try_add(&b), Err(Error::Context(_))));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn leading_terms() {
        let c = ctx(&["x", "y"]);
        let f = p(&c, "x^2*y + y^3");
        let (lc, lm) = f.leading_term().unwrap();
        assert_eq!((lc.clone(), lm.exponents()), (int(1), &[2u32, 1][..]));
        let g = f.with_order(TermOrder::DegRevLex);
        assert_eq!(g.leading_term().unwrap().1.exponents(), &[2, 1]);
        let five_x = p(&c, "5*x");
        assert_eq!(five_x.leading_term().unwrap().0, &int(5));
        assert!(matches!(Polynomial::zero(&c, TermOrder::Lex).leading_term(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn specialization_and_embedding() {
        let c = ctx(&["s", "x"]);
        let f = p(&c, "s*x^2 + 2*s - x");
        let g = f.specialize(&[("s", rat(1, 2))]).unwrap();
        assert_eq!(g.vars().names(), &["x".to_string()]);
        assert_eq!(g, parse_polynomial("x^2/2 - x + 1", g.vars(), TermOrder::Lex).unwrap());
        let big = ctx(&["t", "s", "x"]);
        let e = f.embed(&big, TermOrder::Lex).unwrap();
        assert_eq!(e.eval(&[int(7), int(1), int(2)]).unwrap(), int(4));
        assert!(p(&ctx(&["q"]), "q").embed(&c, TermOrder::Lex).is_err());
    }

    #[test]
    fn exact_division() {
        let c = ctx(&["x", "y"]);
        let f = p(&c, "x^2*y - y");
        assert_eq!(f.exact_div(&p(&c, "x - 1")).unwrap(), Some(p(&c, "x*y + y")));
        assert_eq!(f.exact_div(&p(&c, "x + 2")).unwrap(), None);
    }

    #[test]
    fn derivative_and_display() {
        let c = ctx(&["x", "y"]);
        let f = p(&c, "x^3*y - 2*x + 5");
        assert_eq!(f.derivative(0), p(&c, "3*x^2*y - 2"));
        assert_eq!(f.to_string(), "x^3*y - 2*x + 5");
        assert_eq!(p(&c, "-x/2").to_string(), "-1/2*x");
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-5i64..6, 1i64..4, proptest::collection::vec(0u32..3, 3)), 0..5)
            .prop_map(|ts| {
                let c = VarContext::new(&["x", "y", "z"]);
                Polynomial::from_terms(
                    &c,
                    TermOrder::DegRevLex,
                    ts.into_iter().map(|(n, d, e)| (rat(n, d), Monomial::new(e))).collect(),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(a.with_order(TermOrder::Lex), a.clone());
            for (q, _) in a.terms() {
                prop_assert!(q.denom() > &num_bigint::BigInt::zero());
                prop_assert!(!q.is_zero());
            }
        }
    }
}
