//! Arbitrary-precision rationals and their text forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; zero is `0/1`.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3/10"`, `"-2"`, `"0.3"`, `"1e-3"` or `"2.5E+2"` into an exact
/// rational. Decimal forms map to power-of-ten denominators.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let num = parse_decimal(n)?;
        let den = parse_decimal(d)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(num / den);
    }
    parse_decimal(t)
}

fn parse_decimal(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid number {text:?}"));
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - fp.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Rounds a finite float to `digits` significant decimal digits and returns
/// the exact rational of that decimal.
pub fn from_f64_significant(x: f64, digits: usize) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite value {x}")));
    }
    if x == 0.0 {
        return Ok(Rational::zero());
    }
    let text = format!("{:.*e}", digits.saturating_sub(1), x);
    parse_rational(&text)
}

/// Exact rational value of a float (binary expansion).
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

/// Smallest power of two that is `>= |r|` (at least 1).
pub fn pow2_at_least(r: &Rational) -> Rational {
    let target = r.abs();
    let mut p = Rational::one();
    let two = int(2);
    while p < target {
        p *= &two;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("2.5E+2").unwrap(), int(250));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn normalized_representation() {
        for r in [rat(6, -4), rat(0, 5), rat(-10, -15)] {
            assert!(r.denom() > &BigInt::zero());
            assert!(r.numer().gcd(r.denom()).is_one());
        }
        assert_eq!(rat(0, 7), Rational::zero());
        assert!(rat(0, 7).denom().is_one());
    }

    #[test]
    fn significant_digit_rounding() {
        assert_eq!(from_f64_significant(0.123456789, 6).unwrap(), rat(123457, 1000000));
        assert_eq!(from_f64_significant(1234.5, 3).unwrap(), int(1230));
        assert_eq!(format_rational(&rat(-3, 4)), "-3/4");
        assert_eq!(format_rational(&int(5)), "5");
    }
}
