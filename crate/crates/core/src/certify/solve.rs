//! Real solutions of zero-dimensional systems through a lex basis in shape
//! position: `x_i = q_i(t)`, `p(t) = 0` for a linear form `t`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::int;
use crate::exactalg::{OrderedField, Polynomial, QuadSurd, Ring, Rational, TermOrder, VarContext};
use crate::groebner::{groebner, Budget, Ideal};
use crate::realroots::{eval_interval, isolate_roots, refine_squarefree, sign_at_root, Domain, IsolatingInterval, UniPoly};

/// Parametrization of every solution of a zero-dimensional system by the
/// roots of one squarefree polynomial.
#[derive(Clone, Debug)]
pub struct ShapeForm {
    pub vars: VarContext,
    /// Coefficients of the separating form `t = sum c_i x_i`.
    pub form: Vec<Rational>,
    /// Squarefree and monic; constant when the system has no solution.
    pub eliminant: UniPoly,
    pub coords: Vec<UniPoly>,
    /// Real roots of the eliminant, increasing.
    pub roots: Vec<IsolatingInterval>,
    pub pairs_processed: usize,
}

/// One real solution with the signs of its coordinates decided exactly.
#[derive(Clone, Debug)]
pub struct RealPoint {
    pub root: IsolatingInterval,
    pub signs: Vec<Ordering>,
}

impl RealPoint {
    pub fn positive(&self) -> bool {
        self.signs.iter().all(|&s| s == Ordering::Greater)
    }
}

/// Reads `[x_1 - q_1(t), ..., x_k - q_k(t), p(t)]` with `t` the variable
/// at index `k`.
fn shape_of(basis: &[Polynomial], k: usize) -> Option<(Vec<UniPoly>, UniPoly)> {
    if basis.len() != k + 1 {
        return None;
    }
    let p = UniPoly::from_polynomial(&basis[k], k).ok()?;
    let mut coords = Vec::with_capacity(k + 1);
    for (i, g) in basis[..k].iter().enumerate() {
        let xi = Polynomial::var(g.vars(), g.order(), i);
        if g.lm()? != xi.lm()? {
            return None;
        }
        coords.push(UniPoly::from_polynomial(&(&xi - g), k).ok()?);
    }
    Some((coords, p))
}

fn unit_form(vars: &VarContext, form: Vec<Rational>, pairs: usize) -> ShapeForm {
    ShapeForm {
        vars: vars.clone(),
        form,
        eliminant: UniPoly::constant(Rational::one()),
        coords: Vec::new(),
        roots: Vec::new(),
        pairs_processed: pairs,
    }
}

/// Solves `polys = 0`. Tries the last variable as `t` first, then the
/// forms `t = x_n + c x_{n-1} + c^2 x_{n-2} + ...` for `c = 1, 2, ...`.
/// Ideals that are not radical must already be in shape position for the
/// chosen form.
pub fn solve_zero_dim(polys: &[Polynomial], budget: &Budget) -> Result<ShapeForm> {
    let vars = polys
        .first()
        .ok_or_else(|| Error::Precondition("empty system".into()))?
        .vars()
        .clone();
    let nx = vars.len();
    let ext = vars.with_back(&vars.fresh_name("t"));
    let ord = TermOrder::Lex;
    let mut pairs = 0;
    for c in 0..8i64 {
        let mut form = vec![Rational::zero(); nx];
        let mut w = Rational::one();
        for k in (0..nx).rev() {
            form[k] = w.clone();
            w *= int(c);
        }
        // with c = 0 the last variable itself plays t
        let (ctx, tvar) = if c == 0 { (&vars, nx - 1) } else { (&ext, nx) };
        let mut gens: Vec<Polynomial> = polys.iter().map(|f| f.embed(ctx, ord)).collect::<Result<_>>()?;
        if c > 0 {
            let mut lin = Polynomial::var(ctx, ord, nx);
            for (k, a) in form.iter().enumerate() {
                lin = &lin - &Polynomial::var(ctx, ord, k).scale(a);
            }
            gens.push(lin);
        }
        let mut ideal = Ideal::with_context(ctx, gens)?;
        // the second pass adds the squarefree eliminant
        for _ in 0..2 {
            let gb = groebner(&ideal, ord, budget)?;
            pairs += gb.stats.pairs_processed;
            if gb.is_unit() {
                return Ok(unit_form(&vars, form, pairs));
            }
            let last = gb.basis.last().unwrap();
            if (0..tvar).any(|k| last.involves(k)) {
                return Err(Error::Precondition("system is not zero-dimensional".into()));
            }
            let p = UniPoly::from_polynomial(last, tvar)?;
            if let Some((mut coords, p)) = shape_of(&gb.basis, tvar) {
                if c == 0 {
                    coords.push(UniPoly::new(vec![Rational::zero(), Rational::one()]));
                }
                let eliminant = p.squarefree();
                let roots = isolate_roots(&eliminant, &Domain::All);
                return Ok(ShapeForm { vars, form, eliminant, coords, roots, pairs_processed: pairs });
            }
            let sq = p.squarefree();
            if sq == p.monic() {
                break;
            }
            let mut g = gb.basis.clone();
            g.push(sq.to_polynomial(ctx, ord, tvar));
            ideal = Ideal::with_context(ctx, g)?;
        }
    }
    Err(Error::Numerical("no separating linear form found".into()))
}

impl ShapeForm {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Coordinate `k` as a polynomial in `t`, reduced modulo the eliminant.
    pub fn coordinate(&self, k: usize) -> UniPoly {
        self.coords[k].rem(&self.eliminant)
    }

    /// `f(q_1(t), ..., q_n(t))` modulo the eliminant, for `f` in the
    /// system's context.
    pub fn restrict(&self, f: &Polynomial) -> UniPoly {
        let coords: Vec<UniPoly> = (0..self.coords.len()).map(|k| self.coordinate(k)).collect();
        let mut acc = UniPoly::zero();
        for (c, m) in f.terms() {
            let mut term = UniPoly::constant(c.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&coords[k]).rem(&self.eliminant);
                }
            }
            acc = acc.add(&term);
        }
        acc.rem(&self.eliminant)
    }

    /// Exact test that `f` vanishes at the solution isolated by `root`.
    pub fn vanishes_at(&self, f: &Polynomial, root: &IsolatingInterval) -> bool {
        sign_at_root(&self.restrict(f), root, &self.eliminant).0 == Ordering::Equal
    }

    /// Sign of `q(t)` at the root in `root`. Interval evaluation on shrinking
    /// intervals settles nonzero signs quickly; the exact test handles the
    /// rest.
    pub fn sign_of(&self, q: &UniPoly, root: &IsolatingInterval) -> (Ordering, IsolatingInterval) {
        let mut cur = root.clone();
        let zero = Rational::zero();
        for _ in 0..12 {
            if cur.is_exact() {
                return (q.sign_at(&cur.lo), cur);
            }
            let (a, b) = eval_interval(q, &cur.lo, &cur.hi);
            if a > zero {
                return (Ordering::Greater, cur);
            }
            if b < zero {
                return (Ordering::Less, cur);
            }
            let w = cur.width() / int(1 << 16);
            cur = refine_squarefree(&cur, &self.eliminant, &w);
        }
        sign_at_root(q, &cur, &self.eliminant)
    }

    /// Real solutions with exact coordinate signs.
    pub fn real_points(&self) -> Vec<RealPoint> {
        self.roots
            .iter()
            .map(|iv| {
                let mut cur = iv.clone();
                let mut signs = Vec::with_capacity(self.coords.len());
                for k in 0..self.coords.len() {
                    let (s, next) = self.sign_of(&self.coordinate(k), &cur);
                    cur = next;
                    signs.push(s);
                }
                RealPoint { root: cur, signs }
            })
            .collect()
    }

    /// Rational enclosures of every coordinate of the solution at `root`,
    /// each of width at most `eps`.
    pub fn enclosure(&self, root: &IsolatingInterval, eps: &Rational) -> (IsolatingInterval, Vec<(Rational, Rational)>) {
        let coords: Vec<UniPoly> = (0..self.coords.len()).map(|k| self.coordinate(k)).collect();
        let mut cur = root.clone();
        let mut w = eps.clone();
        loop {
            let boxes: Vec<(Rational, Rational)> = coords.iter().map(|q| eval_interval(q, &cur.lo, &cur.hi)).collect();
            if cur.is_exact() || boxes.iter().all(|(a, b)| &(b - a) <= eps) {
                return (cur, boxes);
            }
            cur = refine_squarefree(&cur, &self.eliminant, &w);
            w = w / int(1 << 16);
        }
    }

    /// Whether the solution at `root` is exactly the point `xs`: `t(xs)`
    /// is a root of the eliminant inside the isolating interval and every
    /// coordinate polynomial maps it back to `xs`.
    pub fn is_point(&self, root: &IsolatingInterval, xs: &[QuadSurd]) -> bool {
        let d = xs.iter().find(|q| !q.is_rational()).map(|q| q.d.clone()).unwrap_or_else(Rational::zero);
        let lift = |r: &Rational| QuadSurd::rational(r.clone(), &d);
        let mut t = lift(&Rational::zero());
        for (c, x) in self.form.iter().zip(xs) {
            t = t.add_ref(&lift(c).mul_ref(x));
        }
        let eval = |p: &UniPoly| {
            let mut acc = lift(&Rational::zero());
            for c in p.coeffs().iter().rev() {
                acc = acc.mul_ref(&t).add_ref(&lift(c));
            }
            acc
        };
        if eval(&self.eliminant).sign() != Ordering::Equal {
            return false;
        }
        let above = t.sub_ref(&lift(&root.lo)).sign();
        let below = lift(&root.hi).sub_ref(&t).sign();
        let inside = if root.is_exact() {
            above == Ordering::Equal
        } else {
            above == Ordering::Greater && below == Ordering::Greater
        };
        inside && (0..self.coords.len()).all(|k| eval(&self.coordinate(k)).sub_ref(&xs[k]).sign() == Ordering::Equal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_polynomial;

    fn sys(names: &[&str], gens: &[&str]) -> Vec<Polynomial> {
        let c = VarContext::new(names);
        gens.iter().map(|g| parse_polynomial(g, &c, TermOrder::Lex).unwrap()).collect()
    }

    #[test]
    fn circle_and_line() {
        let f = solve_zero_dim(&sys(&["x", "y"], &["x^2 + y^2 - 1", "x - y"]), &Budget::default()).unwrap();
        let pts = f.real_points();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts.iter().filter(|p| p.positive()).count(), 1);
        let h = QuadSurd::new(Rational::zero(), crate::exactalg::rational::rat(1, 2), int(2));
        let pos = pts.iter().find(|p| p.positive()).unwrap();
        assert!(f.is_point(&pos.root, &[h.clone(), h]));
    }

    #[test]
    fn needs_a_separating_form() {
        // (±1, ±1): four points sharing y coordinates
        let f = solve_zero_dim(&sys(&["x", "y"], &["x^2 - 1", "y^2 - 1"]), &Budget::default()).unwrap();
        assert_ne!(f.form, vec![Rational::zero(), Rational::one()]);
        assert_eq!(f.real_points().len(), 4);
        assert_eq!(f.real_points().iter().filter(|p| p.positive()).count(), 1);
    }

    #[test]
    fn non_radical_and_empty() {
        let f = solve_zero_dim(&sys(&["x", "y"], &["x - y", "y^2"]), &Budget::default()).unwrap();
        assert_eq!(f.real_points().len(), 1);
        assert_eq!(f.real_points()[0].signs, vec![Ordering::Equal, Ordering::Equal]);
        let e = solve_zero_dim(&sys(&["x", "y"], &["x^2 + 1", "y"]), &Budget::default()).unwrap();
        assert!(e.is_empty());
        let u = solve_zero_dim(&sys(&["x", "y"], &["x", "x - 1"]), &Budget::default()).unwrap();
        assert!(u.is_empty());
        assert!(solve_zero_dim(&sys(&["x", "y"], &["x*y"]), &Budget::default()).is_err());
    }

    #[test]
    fn enclosures_shrink() {
        let f = solve_zero_dim(&sys(&["x", "y"], &["x^2 - 2", "y - x^3"]), &Budget::default()).unwrap();
        let eps = crate::exactalg::rational::rat(1, 1_000_000_000);
        for p in f.real_points() {
            let (_, boxes) = f.enclosure(&p.root, &eps);
            for (a, b) in boxes {
                assert!(b - a <= eps);
            }
        }
    }
}
