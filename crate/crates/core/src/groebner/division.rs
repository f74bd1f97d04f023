use super::ideal::BudgetClock;
use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Polynomial, Rational, TermOrder};

/// Multivariate division of `f` by the list `g` under `ord`.
///
/// Returns quotients `q` and remainder `r` with `f = sum q_i g_i + r` and no
/// term of `r` divisible by a leading monomial of `g`. Among several divisors
/// of a term the first one in the list is used.
pub fn normal_form(
    f: &Polynomial,
    g: &[Polynomial],
    ord: TermOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    for gi in g {
        f.same_context(gi)?;
    }
    let divisors: Vec<Polynomial> = g.iter().map(|gi| gi.with_order(ord)).collect();
    let mut quotients: Vec<Vec<(Rational, Monomial)>> = vec![Vec::new(); g.len()];
    let r = reduce(f.with_order(ord), &divisors, Some(&mut quotients), None)?;
    let q = quotients
        .into_iter()
        .map(|terms| Polynomial::from_terms_unchecked(f.vars(), ord, terms))
        .collect();
    Ok((q, r))
}

/// Division core. Divisors must already carry the order of `f`; zero divisors
/// are ignored.
pub(crate) fn reduce(
    mut p: Polynomial,
    divisors: &[Polynomial],
    mut quotients: Option<&mut Vec<Vec<(Rational, Monomial)>>>,
    clock: Option<&BudgetClock>,
) -> Result<Polynomial> {
    let vars = p.vars().clone();
    let ord = p.order();
    let mut rem: Vec<(Rational, Monomial)> = Vec::new();
    let mut steps = 0usize;
    while let Some((c, m)) = p.terms().first() {
        steps += 1;
        if steps % 256 == 0 {
            if let Some(clock) = clock {
                clock.check_time()?;
            }
        }
        let hit = divisors.iter().enumerate().find_map(|(i, d)| {
            let (dc, dm) = d.terms().first()?;
            dm.quotient_of(m).map(|q| (i, q, c / dc))
        });
        match hit {
            Some((i, q, coeff)) => {
                p = p.sub_mul_term(&coeff, &q, &divisors[i]);
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[i].push((coeff, q));
                }
            }
            None => {
                rem.push(p.pop_leading().expect("nonzero"));
            }
        }
    }
    Ok(Polynomial::from_sorted_unchecked(&vars, ord, rem))
}

/// `S(f, g) = (L/LT(f)) f - (L/LT(g)) g` with `L` the lcm of the leading
/// monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: TermOrder) -> Result<Polynomial> {
    f.same_context(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.with_order(ord);
    let g = g.with_order(ord);
    Ok(s_poly_sorted(&f, &g))
}

pub(crate) fn s_poly_sorted(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fc, fm) = f.leading_term().expect("nonzero");
    let (gc, gm) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let mf = fm.quotient_of(&l).expect("lcm");
    let mg = gm.quotient_of(&l).expect("lcm");
    let a = f.mul_term(&fc.recip(), &mf);
    a.sub_mul_term(&gc.recip(), &mg, g)
}
