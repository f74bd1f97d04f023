//! Real roots of univariate rational polynomials: Sturm sequences, exact
//! counting, isolation by dyadic bisection and refinement.

mod unipoly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactalg::rational::{format_rational, pow2_at_least, to_f64};
use crate::exactalg::Rational;
pub use unipoly::{eval_interval, UniPoly};

/// Interval holding exactly one real root. When `lo == hi` the root is the
/// rational `lo`; otherwise the root lies in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    /// The root is simple in the polynomial it was isolated from.
    pub multiplicity_free: bool,
}

impl IsolatingInterval {
    pub fn exact(r: Rational, multiplicity_free: bool) -> Self {
        IsolatingInterval { lo: r.clone(), hi: r, multiplicity_free }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Whether `x` lies in the set the root is known to be in: the point
    /// itself when exact, the open interval otherwise.
    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    pub fn to_json(&self) -> IntervalJson {
        IntervalJson {
            lo: format_rational(&self.lo),
            hi: format_rational(&self.hi),
            lo_f64: to_f64(&self.lo),
            hi_f64: to_f64(&self.hi),
            exact: self.is_exact(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
    pub lo_f64: f64,
    pub hi_f64: f64,
    pub exact: bool,
}

/// A real algebraic number: root of `poly` isolated by `interval`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicReal {
    pub poly: UniPoly,
    pub interval: IsolatingInterval,
}

impl AlgebraicReal {
    pub fn new(poly: UniPoly, interval: IsolatingInterval) -> Self {
        AlgebraicReal { poly, interval }
    }

    pub fn rational(r: Rational) -> Self {
        AlgebraicReal { poly: UniPoly::linear_root(&r), interval: IsolatingInterval::exact(r, true) }
    }

    pub fn sign(&self) -> Ordering {
        let x = UniPoly::new(vec![Rational::zero(), Rational::one()]);
        sign_at_root(&x, &self.interval, &self.poly).0
    }

    /// Interval narrowed to width `eps`.
    pub fn refined(&self, eps: &Rational) -> AlgebraicReal {
        AlgebraicReal { poly: self.poly.clone(), interval: refine(&self.interval, &self.poly, eps) }
    }

    pub fn to_f64(&self) -> f64 {
        let eps = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(60));
        let scale = self.interval.lo.abs().max(self.interval.hi.abs()).max(Rational::one());
        self.refined(&(eps * scale)).interval.midpoint_f64()
    }

    /// `c * self` for a nonzero rational `c`.
    pub fn scaled(&self, c: &Rational) -> AlgebraicReal {
        assert!(!c.is_zero(), "scaling by zero");
        // q(y) = p(y / c)
        let mut k = Rational::one();
        let inv = c.recip();
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .map(|a| {
                let v = a * &k;
                k = &k * &inv;
                v
            })
            .collect();
        let (mut lo, mut hi) = (&self.interval.lo * c, &self.interval.hi * c);
        if c.is_negative() {
            std::mem::swap(&mut lo, &mut hi);
        }
        AlgebraicReal {
            poly: UniPoly::new(coeffs),
            interval: IsolatingInterval { lo, hi, multiplicity_free: self.interval.multiplicity_free },
        }
    }
}

/// Where to look for roots.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    All,
    /// Half-open `(a, b]`.
    Interval(Rational, Rational),
    /// `(0, oo)`.
    Positive,
}

/// Sturm chain `p, p', -rem(p, p'), ...`. Remainders are scaled by positive
/// constants, which does not change any sign.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.normalized_abs().scale(&-Rational::one()));
    }
    chain
}

/// Polynomial with integer coefficients, a positive multiple of a rational
/// one, for fast exact sign evaluation.
#[derive(Clone, Debug)]
pub(crate) struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub(crate) fn new(p: &UniPoly) -> IntPoly {
        let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly(p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect())
    }

    /// Sign of the value at `x`, via `sum c_i n^i d^(deg - i)`.
    pub(crate) fn sign_at(&self, x: &Rational) -> Ordering {
        let Some((top, rest)) = self.0.split_last() else { return Ordering::Equal };
        let (n, d) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut dpow = BigInt::one();
        for c in rest.iter().rev() {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
        acc.sign_ordering()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        match self.sign() {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

fn sign_changes(chain: &[IntPoly], x: &Rational) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for q in chain {
        let s = q.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign_changes_at_infinity(chain: &[UniPoly], positive: bool) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for q in chain {
        let Some(lc) = q.lc() else { continue };
        let mut s = if lc.is_positive() { Ordering::Greater } else { Ordering::Less };
        if !positive && q.degree().unwrap() % 2 == 1 {
            s = s.reverse();
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Prepared squarefree polynomial with its Sturm chain.
#[derive(Clone, Debug)]
pub struct SturmChain {
    pub squarefree: UniPoly,
    pub chain: Vec<UniPoly>,
    fast: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> SturmChain {
        let squarefree = p.squarefree();
        let chain = sturm_sequence(&squarefree);
        let fast = chain.iter().map(IntPoly::new).collect();
        SturmChain { squarefree, chain, fast }
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b || self.chain.is_empty() {
            return 0;
        }
        sign_changes(&self.fast, a).saturating_sub(sign_changes(&self.fast, b))
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        sign_changes_at_infinity(&self.chain, false)
            .saturating_sub(sign_changes_at_infinity(&self.chain, true))
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn count_roots(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
    SturmChain::new(p).count(a, b)
}

/// Isolating intervals for the distinct real roots of `p` in `domain`,
/// sorted increasingly. Bisection points are dyadic.
pub fn isolate_roots(p: &UniPoly, domain: &Domain) -> Vec<IsolatingInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sc = SturmChain::new(p);
    let multiple = p.gcd(&p.derivative());
    let simple = |iv: &IsolatingInterval| -> bool {
        if multiple.degree() == Some(0) {
            return true;
        }
        if iv.is_exact() {
            return !multiple.eval(&iv.lo).is_zero();
        }
        count_roots(&multiple, &iv.lo, &iv.hi) == 0
    };
    let m = pow2_at_least(&p.root_bound());
    let (lo, hi) = match domain {
        Domain::All => (-m.clone(), m),
        Domain::Positive => (Rational::zero(), m),
        Domain::Interval(a, b) => (a.clone(), b.clone()),
    };
    let mut out = Vec::new();
    if sc.squarefree.degree() == Some(1) {
        let c = sc.squarefree.coeffs();
        let r = -&c[0] / &c[1];
        if lo < r && r <= hi {
            let mut iv = IsolatingInterval::exact(r, true);
            iv.multiplicity_free = simple(&iv);
            out.push(iv);
        }
        return out;
    }
    let two = Rational::from_integer(2.into());
    // (lo, hi, count) with the count for (lo, hi]
    let mut stack = vec![(lo.clone(), hi.clone(), sc.count(&lo, &hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                let iv = if sc.fast[0].sign_at(&b) == Ordering::Equal {
                    IsolatingInterval::exact(b, true)
                } else {
                    IsolatingInterval { lo: a, hi: b, multiplicity_free: true }
                };
                out.push(iv);
            }
            _ => {
                let mid = (&a + &b) / &two;
                let left = sc.count(&a, &mid);
                stack.push((mid.clone(), b, n - left));
                stack.push((a, mid, left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    // unit width keeps the intervals on the integer grid
    let one = Rational::one();
    for iv in &mut out {
        *iv = refine_squarefree(iv, &sc.squarefree, &one);
        iv.multiplicity_free = simple(iv);
    }
    out
}

/// Shrinks `iv` until its width is at most `eps`. The root stays inside
/// and exact roots are returned unchanged.
pub fn refine(iv: &IsolatingInterval, p: &UniPoly, eps: &Rational) -> IsolatingInterval {
    let sq = p.squarefree();
    refine_squarefree(iv, &sq, eps)
}

pub(crate) fn refine_squarefree(iv: &IsolatingInterval, sq: &UniPoly, eps: &Rational) -> IsolatingInterval {
    if iv.is_exact() || &iv.width() <= eps {
        return iv.clone();
    }
    let two = Rational::from_integer(2.into());
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let sq = IntPoly::new(sq);
    let s_hi = sq.sign_at(&hi);
    debug_assert_ne!(s_hi, Ordering::Equal);
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / &two;
        let s = sq.sign_at(&mid);
        if s == Ordering::Equal {
            return IsolatingInterval::exact(mid, iv.multiplicity_free);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    IsolatingInterval { lo, hi, multiplicity_free: iv.multiplicity_free }
}

/// Sign of `q` at the root of `p` isolated by `iv`. Returns the sign and
/// the (possibly refined) interval used to decide it.
pub fn sign_at_root(q: &UniPoly, iv: &IsolatingInterval, p: &UniPoly) -> (Ordering, IsolatingInterval) {
    if iv.is_exact() {
        return (q.sign_at(&iv.lo), iv.clone());
    }
    if q.is_zero() {
        return (Ordering::Equal, iv.clone());
    }
    let sq = p.squarefree();
    // common root with p inside the interval means q vanishes there
    let g = sq.gcd(q);
    if g.degree().unwrap_or(0) > 0 && count_roots(&g, &iv.lo, &iv.hi) > 0 {
        return (Ordering::Equal, iv.clone());
    }
    let qc = SturmChain::new(q);
    let mut cur = iv.clone();
    let mut eps = cur.width() / Rational::from_integer(2.into());
    loop {
        if cur.is_exact() {
            return (q.sign_at(&cur.lo), cur);
        }
        if qc.count(&cur.lo, &cur.hi) == 0 {
            return (q.sign_at(&cur.hi), cur);
        }
        cur = refine_squarefree(&cur, &sq, &eps);
        eps = eps / Rational::from_integer(2.into());
    }
}
