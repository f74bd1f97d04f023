use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactalg::matrix::determinant;
use crate::exactalg::{OrderedField, Ring};

/// `n x n` Hurwitz matrix of `a0 x^n + a1 x^(n-1) + ... + an`, entry
/// `(i, j) = a_(2j - i)` in 1-based indices.
pub fn hurwitz_matrix<R: Ring>(coeffs: &[R]) -> Vec<Vec<R>> {
    let n = coeffs.len() - 1;
    let zero = coeffs[0].zero_like();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let k = 2 * j as isize - i as isize;
                    if k >= 0 && (k as usize) <= n {
                        coeffs[k as usize].clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Leading principal minors `Delta_1, ..., Delta_n` of the Hurwitz matrix.
/// `Delta_k` is homogeneous of degree `k` in the coefficients, so scaling
/// all coefficients by `c` scales it by `c^k`.
pub fn hurwitz_determinants<R: Ring>(coeffs: &[R]) -> Result<Vec<R>> {
    if coeffs.len() < 2 {
        return Err(Error::Precondition("Hurwitz determinants need degree at least 1".into()));
    }
    let h = hurwitz_matrix(coeffs);
    Ok((1..h.len() + 1)
        .map(|k| {
            let minor: Vec<Vec<R>> = h[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&minor)
        })
        .collect())
}

/// Routh–Hurwitz test: all roots in the open left half-plane. The leading
/// coefficient may be any nonzero value; its sign is normalized first.
/// `None` when some sign cannot be decided (interval coefficients).
pub fn hurwitz_stable<F: OrderedField>(coeffs: &[F]) -> Result<Option<bool>> {
    let lead = coeffs[0].sign();
    if lead == Ordering::Equal {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    let c: Vec<F> = if lead == Ordering::Less { coeffs.iter().map(Ring::neg_ref).collect() } else { coeffs.to_vec() };
    let mut undecided = false;
    for d in hurwitz_determinants(&c)? {
        match d.sign() {
            Ordering::Greater => {}
            Ordering::Less => return Ok(Some(false)),
            Ordering::Equal if d.vanishes() => return Ok(Some(false)),
            Ordering::Equal => undecided = true,
        }
    }
    Ok(if undecided { None } else { Some(true) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;
    use crate::exactalg::Rational;

    fn c(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(hurwitz_determinants(&c(&[1, 3, 3, 1])).unwrap(), c(&[3, 8, 8]));
        assert_eq!(hurwitz_stable(&c(&[1, 3, 3, 1])).unwrap(), Some(true));
        assert_eq!(hurwitz_determinants(&c(&[1, 0, 1])).unwrap()[0], int(0));
        assert_eq!(hurwitz_stable(&c(&[1, 0, 1])).unwrap(), Some(false));
        assert_eq!(hurwitz_determinants(&c(&[1, 1, 1, 2])).unwrap()[1], int(-1));
        assert_eq!(hurwitz_stable(&c(&[1, 1, 1, 2])).unwrap(), Some(false));
        // leading sign normalized
        assert_eq!(hurwitz_stable(&c(&[-1, -3, -3, -1])).unwrap(), Some(true));
        assert!(hurwitz_determinants(&c(&[1])).is_err());
    }
}
