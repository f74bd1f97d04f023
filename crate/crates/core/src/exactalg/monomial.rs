use std::fmt;

use crate::error::{Error, Result};

/// Power product `x1^e1 * ... * xn^en` over a fixed variable context.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `true` if `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

/// Entrywise maximum of two exponent vectors.
pub fn lcm_monomial(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    if a.len() != b.len() {
        return Err(Error::Context(format!(
            "monomial lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    Ok(a.lcm(b))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_monomial(&m(&[2, 1]), &m(&[1, 3])).unwrap(), m(&[2, 3]));
        assert_eq!(lcm_monomial(&m(&[0, 0]), &m(&[4, 5])).unwrap(), m(&[4, 5]));
        assert_eq!(lcm_monomial(&m(&[3, 1]), &m(&[3, 1])).unwrap(), m(&[3, 1]));
        assert!(lcm_monomial(&m(&[1]), &m(&[1, 2])).is_err());
    }

    #[test]
    fn division() {
        assert_eq!(m(&[1, 0]).quotient_of(&m(&[2, 3])), Some(m(&[1, 3])));
        assert_eq!(m(&[1, 4]).quotient_of(&m(&[2, 3])), None);
        assert!(m(&[2, 0]).is_coprime(&m(&[0, 2])));
    }
}
