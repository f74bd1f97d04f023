//! Division-free determinant and characteristic polynomial (Berkowitz).

use super::field::Ring;

/// Coefficients `[1, c1, ..., cn]` of `det(x I - m) = x^n + c1 x^(n-1) + ... + cn`.
/// `m` must be square and nonempty.
pub fn char_poly<R: Ring>(m: &[Vec<R>]) -> Vec<R> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square nonempty matrix");
    let one = m[0][0].one_like();
    let mut vect = vec![one.clone()];
    for r in 0..n {
        // leading block A = m[..r][..r], column C = m[..r][r], row R = m[r][..r]
        let mut t = Vec::with_capacity(r + 2);
        t.push(one.clone());
        t.push(m[r][r].neg_ref());
        let mut v: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        for k in 0..r {
            let rv = dot(&m[r][..r], &v);
            t.push(rv.neg_ref());
            if k + 1 < r {
                v = (0..r).map(|i| dot(&m[i][..r], &v)).collect();
            }
        }
        // lower-triangular Toeplitz product
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = one.zero_like();
            for (j, vj) in vect.iter().enumerate() {
                if j <= i && i - j < t.len() {
                    acc = acc.add_ref(&t[i - j].mul_ref(vj));
                }
            }
            next.push(acc);
        }
        vect = next;
    }
    vect
}

pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let cp = char_poly(m);
    let c = cp.last().unwrap().clone();
    if m.len() % 2 == 1 {
        c.neg_ref()
    } else {
        c
    }
}

fn dot<R: Ring>(a: &[R], b: &[R]) -> R {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add_ref(&x.mul_ref(y));
    }
    acc
}
