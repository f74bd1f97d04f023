use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Monomial order. `Block(k)` compares the first `k` variables by degrevlex
/// and only on a tie the remaining ones, so the first block is eliminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    Lex,
    #[serde(rename = "degrevlex")]
    DegRevLex,
    Block(usize),
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            TermOrder::Lex => lex(a, b),
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Block(k) => {
                let k = k.min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn parse(name: &str) -> Result<TermOrder> {
        match name {
            "lex" => Ok(TermOrder::Lex),
            "degrevlex" | "grevlex" | "dp" => Ok(TermOrder::DegRevLex),
            other => {
                if let Some(k) = other.strip_prefix("block:") {
                    let k = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad block size in {other:?}")))?;
                    Ok(TermOrder::Block(k))
                } else {
                    Err(Error::Parse(format!("unknown term order {other:?}")))
                }
            }
        }
    }

    /// Whether every monomial involving one of the first `k` variables is
    /// larger than every monomial free of them.
    pub fn eliminates(&self, k: usize) -> bool {
        match *self {
            TermOrder::Lex => true,
            TermOrder::DegRevLex => k == 0,
            TermOrder::Block(j) => j >= k,
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // rightmost nonzero entry of a - b negative means a is larger
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// Compares two monomials under `ord`, rejecting mismatched lengths.
pub fn compare(a: &Monomial, b: &Monomial, ord: TermOrder) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::Context(format!(
            "cannot compare monomials of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn worked_examples() {
        assert_eq!(compare(&m(&[1, 2, 0]), &m(&[1, 1, 5]), TermOrder::Lex).unwrap(), Ordering::Greater);
        assert_eq!(
            compare(&m(&[1, 1, 1]), &m(&[3, 0, 0]), TermOrder::DegRevLex).unwrap(),
            Ordering::Less
        );
        for ord in [TermOrder::Lex, TermOrder::DegRevLex, TermOrder::Block(1), TermOrder::Block(2)] {
            assert_eq!(compare(&m(&[0, 0, 0]), &m(&[0, 0, 1]), ord).unwrap(), Ordering::Less);
        }
        assert!(compare(&m(&[1]), &m(&[1, 0]), TermOrder::Lex).is_err());
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let ord = TermOrder::Block(1);
        // t beats any power of the remaining variables
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(Monomial::new)
    }

    fn any_order() -> impl Strategy<Value = TermOrder> {
        prop_oneof![
            Just(TermOrder::Lex),
            Just(TermOrder::DegRevLex),
            Just(TermOrder::Block(1)),
            Just(TermOrder::Block(2)),
        ]
    }

    proptest! {
        #[test]
        fn strict_total_multiplicative(a in mono3(), b in mono3(), c in mono3(), ord in any_order()) {
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Greater && ord.cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(ord.cmp(&a, &c), Ordering::Greater);
            }
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(ord.cmp(&Monomial::one(3), &a), Ordering::Greater);
        }
    }
}
