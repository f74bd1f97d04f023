//! Gröbner bases over the rationals and the ideal operations built on them.

mod buchberger;
mod division;
mod ideal;

pub use buchberger::{buchberger, buchberger_traced};
pub use division::{normal_form, s_polynomial};
pub use ideal::{Budget, GbStats, GroebnerBasis, Ideal, BUDGET_ENV};

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, TermOrder};
use division::reduce;

/// Minimal, interreduced, monic basis sorted by decreasing leading monomial.
/// Unique for the ideal and order.
pub fn reduce_basis(gb: &GroebnerBasis) -> GroebnerBasis {
    let ord = gb.order;
    let mut polys: Vec<Polynomial> =
        gb.basis.iter().filter(|p| !p.is_zero()).map(|p| p.with_order(ord).monic()).collect();
    polys.sort_by(|a, b| ord.cmp(a.lm().unwrap(), b.lm().unwrap()));
    // minimal: drop elements whose leading monomial is a multiple of another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in polys {
        if !minimal.iter().any(|q| q.lm().unwrap().divides(p.lm().unwrap())) {
            minimal.push(p);
        }
    }
    let mut basis = minimal.clone();
    for i in 0..basis.len() {
        let others: Vec<Polynomial> =
            basis.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| p.clone()).collect();
        let r = reduce(basis[i].clone(), &others, None, None).expect("no budget");
        basis[i] = r.monic();
    }
    basis.sort_by(|a, b| ord.cmp(b.lm().unwrap(), a.lm().unwrap()));
    GroebnerBasis {
        ideal: gb.ideal.clone(),
        order: ord,
        basis,
        reduced: true,
        stats: gb.stats.clone(),
    }
}

/// Reduced Gröbner basis in one call.
pub fn groebner(ideal: &Ideal, ord: TermOrder, budget: &Budget) -> Result<GroebnerBasis> {
    Ok(reduce_basis(&buchberger(ideal, ord, budget)?))
}

/// Ideal membership via a degrevlex basis.
pub fn member(f: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    member_with_order(f, ideal, TermOrder::DegRevLex, budget)
}

pub fn member_with_order(f: &Polynomial, ideal: &Ideal, ord: TermOrder, budget: &Budget) -> Result<bool> {
    if f.vars() != ideal.vars() {
        return Err(Error::Context("polynomial and ideal contexts differ".into()));
    }
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.is_zero_ideal() {
        return Ok(false);
    }
    buchberger(ideal, ord, budget)?.contains(f)
}

/// `I ∩ Q[x_{k+1}, ..., x_n]`, in the same context, using a block order
/// with the first `k` variables in the first block.
pub fn eliminate(ideal: &Ideal, k: usize, budget: &Budget) -> Result<Ideal> {
    let n = ideal.vars().len();
    let ord = if k == 0 || k >= n { TermOrder::Lex } else { TermOrder::Block(k) };
    eliminate_with_order(ideal, k, ord, budget)
}

/// Elimination with an explicit order, which must eliminate the first `k`
/// variables.
pub fn eliminate_with_order(ideal: &Ideal, k: usize, ord: TermOrder, budget: &Budget) -> Result<Ideal> {
    if !ord.eliminates(k) {
        return Err(Error::Precondition(format!("{ord:?} does not eliminate {k} variables")));
    }
    if ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    let gb = groebner(ideal, ord, budget)?;
    let kept = gb.basis.into_iter().filter(|p| (0..k).all(|v| !p.involves(v))).collect();
    Ideal::with_context(ideal.vars(), kept)
}

/// `I ∩ J` from `t I + (1 - t) J` with `t` eliminated. Result generators form
/// a degrevlex basis.
pub fn intersect(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal> {
    if i.vars() != j.vars() {
        return Err(Error::Context("ideals live in different contexts".into()));
    }
    let vars = i.vars();
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(Ideal::zero(vars));
    }
    let t_name = vars.fresh_name("t");
    let ext = vars.with_front(&t_name);
    let ord = TermOrder::Block(1);
    let t = Polynomial::var(&ext, ord, 0);
    let one_minus_t = &Polynomial::one(&ext, ord) - &t;
    let mut gens = Vec::new();
    for f in i.generators() {
        gens.push(&t * &f.embed(&ext, ord)?);
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &g.embed(&ext, ord)?);
    }
    let gb = groebner(&Ideal::with_context(&ext, gens)?, ord, budget)?;
    let keep: Vec<usize> = (1..ext.len()).collect();
    let out = gb
        .basis
        .iter()
        .filter(|p| !p.involves(0))
        .map(|p| p.specialize_into(&[], &keep, vars).with_order(TermOrder::DegRevLex))
        .collect();
    Ideal::with_context(vars, out)
}

/// `I : J = ∩_g (I ∩ <g>) / g` over the generators `g` of `J`.
pub fn quotient(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal> {
    if i.vars() != j.vars() {
        return Err(Error::Context("ideals live in different contexts".into()));
    }
    let vars = i.vars();
    let unit = Ideal::with_context(vars, vec![Polynomial::one(vars, TermOrder::DegRevLex)])?;
    if j.is_zero_ideal() {
        return Ok(unit);
    }
    if i.is_zero_ideal() {
        return Ok(Ideal::zero(vars));
    }
    let gb_i = buchberger(i, TermOrder::DegRevLex, budget)?;
    if gb_i.is_unit() {
        return Ok(unit);
    }
    let mut acc: Option<Ideal> = None;
    for g in j.generators() {
        // g in I makes I : g the whole ring
        if gb_i.contains(g)? {
            continue;
        }
        let g_ideal = Ideal::with_context(vars, vec![g.clone()])?;
        let cap = intersect(i, &g_ideal, budget)?;
        let mut divided = Vec::with_capacity(cap.generators().len());
        for h in cap.generators() {
            let q = h.exact_div(g)?.ok_or_else(|| {
                Error::Numerical("element of I ∩ <g> not divisible by g".into())
            })?;
            divided.push(q);
        }
        let part = Ideal::with_context(vars, divided)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part, budget)?,
        });
    }
    Ok(acc.unwrap_or(unit))
}

/// `f ∈ √I` iff `1 ∈ I + <1 - t f>` for a fresh variable `t`.
pub fn radical_member(f: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    if f.vars() != ideal.vars() {
        return Err(Error::Context("polynomial and ideal contexts differ".into()));
    }
    let vars = ideal.vars();
    let t_name = vars.fresh_name("t");
    let ext = vars.with_back(&t_name);
    let ord = TermOrder::DegRevLex;
    let t = Polynomial::var(&ext, ord, ext.len() - 1);
    let mut gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&ext, ord))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&Polynomial::one(&ext, ord) - &(&t * &f.embed(&ext, ord)?));
    Ok(buchberger(&Ideal::with_context(&ext, gens)?, ord, budget)?.is_unit())
}
