use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::One;

use super::division::{reduce, s_poly_sorted};
use super::ideal::{Budget, GbStats, GroebnerBasis, Ideal};
use crate::error::Result;
use crate::exactalg::{Monomial, Polynomial, Rational, TermOrder};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

/// Buchberger's algorithm with the normal selection strategy and the
/// coprime and chain criteria. The result is a Gröbner basis (monic, not
/// interreduced).
pub fn buchberger(ideal: &Ideal, ord: TermOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let (basis, _, stats) = run(ideal, ord, budget, false)?;
    Ok(GroebnerBasis { ideal: ideal.clone(), order: ord, basis, reduced: false, stats })
}

/// Same as [`buchberger`], also returning for every basis element its
/// cofactors with respect to the original generators:
/// `basis[k] = sum_i cof[k][i] * generators[i]`.
pub fn buchberger_traced(
    ideal: &Ideal,
    ord: TermOrder,
    budget: &Budget,
) -> Result<(GroebnerBasis, Vec<Vec<Polynomial>>)> {
    let (basis, cof, stats) = run(ideal, ord, budget, true)?;
    Ok((
        GroebnerBasis { ideal: ideal.clone(), order: ord, basis, reduced: false, stats },
        cof.unwrap_or_default(),
    ))
}

type Cofactors = Vec<Vec<Polynomial>>;

fn run(
    ideal: &Ideal,
    ord: TermOrder,
    budget: &Budget,
    trace: bool,
) -> Result<(Vec<Polynomial>, Option<Cofactors>, GbStats)> {
    let clock = budget.start();
    let vars = ideal.vars();
    let zero = Polynomial::zero(vars, ord);
    let one = Polynomial::one(vars, ord);
    let ngens = ideal.generators().len();
    let mut stats = GbStats::default();

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut cof: Vec<Vec<Polynomial>> = Vec::new();
    for (k, g) in ideal.generators().iter().enumerate() {
        let g = g.with_order(ord);
        let inv = g.lc().expect("nonzero generator").recip();
        basis.push(g.scale(&inv));
        if trace {
            let mut row = vec![zero.clone(); ngens];
            row[k] = one.scale(&inv);
            cof.push(row);
        }
    }
    if let Some(k) = basis.iter().position(Polynomial::is_constant) {
        return Ok(unit_result(&basis, &cof, k, trace, stats));
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut live: HashSet<(usize, usize)> = HashSet::new();
    for j in 1..basis.len() {
        for i in 0..j {
            push_pair(&basis, &mut pairs, &mut live, i, j);
        }
    }

    while !pairs.is_empty() {
        clock.check(stats.pairs_processed)?;
        let best = select(&pairs, ord);
        let Pair { i, j, lcm, .. } = pairs.swap_remove(best);
        live.remove(&(i, j));

        let (li, lj) = (basis[i].lm().unwrap(), basis[j].lm().unwrap());
        if li.is_coprime(lj) || chain_skips(&basis, &live, i, j, &lcm) {
            stats.pairs_skipped += 1;
            continue;
        }
        stats.pairs_processed += 1;

        let s = s_poly_sorted(&basis[i], &basis[j]);
        let r = if trace {
            let mut qs: Vec<Vec<(Rational, Monomial)>> = vec![Vec::new(); basis.len()];
            let r = reduce(s, &basis, Some(&mut qs), Some(&clock))?;
            // cofactors of S(i, j) - sum q_k g_k
            let mi = li.quotient_of(&lcm).unwrap();
            let mj = lj.quotient_of(&lcm).unwrap();
            let mut row: Vec<Polynomial> = (0..ngens)
                .map(|t| &cof[i][t].mul_term(&Rational::one(), &mi) - &cof[j][t].mul_term(&Rational::one(), &mj))
                .collect();
            for (k, terms) in qs.into_iter().enumerate() {
                if terms.is_empty() {
                    continue;
                }
                let q = Polynomial::from_terms_unchecked(vars, ord, terms);
                for (t, r) in row.iter_mut().enumerate() {
                    *r = &*r - &(&q * &cof[k][t]);
                }
            }
            if !r.is_zero() {
                let inv = r.lc().unwrap().recip();
                cof.push(row.iter().map(|c| c.scale(&inv)).collect());
            }
            r
        } else {
            reduce(s, &basis, None, Some(&clock))?
        };
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let r = r.monic();
        basis.push(r);
        let t = basis.len() - 1;
        if basis[t].is_constant() {
            return Ok(unit_result(&basis, &cof, t, trace, stats));
        }
        for i in 0..t {
            push_pair(&basis, &mut pairs, &mut live, i, t);
        }
    }
    Ok((basis, trace.then_some(cof), stats))
}

fn unit_result(
    basis: &[Polynomial],
    cof: &[Vec<Polynomial>],
    k: usize,
    trace: bool,
    stats: GbStats,
) -> (Vec<Polynomial>, Option<Cofactors>, GbStats) {
    let c = basis[k].lc().unwrap().recip();
    let one = basis[k].scale(&c);
    let row = trace.then(|| vec![cof[k].iter().map(|p| p.scale(&c)).collect()]);
    (vec![one], row, stats)
}

fn push_pair(
    basis: &[Polynomial],
    pairs: &mut Vec<Pair>,
    live: &mut HashSet<(usize, usize)>,
    i: usize,
    j: usize,
) {
    let lcm = basis[i].lm().unwrap().lcm(basis[j].lm().unwrap());
    let deg = lcm.degree();
    pairs.push(Pair { i, j, lcm, deg });
    live.insert((i, j));
}

/// Normal strategy: smallest lcm first, by degree and then by the order.
fn select(pairs: &[Pair], ord: TermOrder) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let c = a
            .deg
            .cmp(&b.deg)
            .then_with(|| ord.cmp(&a.lcm, &b.lcm))
            .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
        if c == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Chain criterion: the pair can be dropped if some third element's leading
/// monomial divides the lcm and both pairs with it are already treated.
fn chain_skips(
    basis: &[Polynomial],
    live: &HashSet<(usize, usize)>,
    i: usize,
    j: usize,
    lcm: &Monomial,
) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].lm().unwrap().divides(lcm)
            && !live.contains(&key(i, k))
            && !live.contains(&key(j, k))
    })
}
