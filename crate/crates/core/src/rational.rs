//! Arbitrary-precision rationals: the prime field every tower sits on.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `"num/den"` text; the denominator is always written.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Exact integer square root, if `n` is a perfect square.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root in the rationals, testing numerator and denominator separately
/// (valid because the fraction is in lowest terms).
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    let n = int_sqrt(x.numer())?;
    let d = int_sqrt(x.denom())?;
    Some(Q::new(n, d))
}

/// Square-free integer in the same square class as a nonzero rational.
pub fn squarefree_class(x: &Q) -> BigInt {
    let n = x.numer() * x.denom();
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * m * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_q(&qf(6, -4)), "-3/2");
        assert_eq!(format_q(&q(0)), "0/1");
        assert_eq!(parse_q("-3/2").unwrap(), qf(-3, 2));
        assert_eq!(parse_q("7").unwrap(), q(7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn squares() {
        assert_eq!(rational_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(rational_sqrt(&q(2)), None);
        assert_eq!(rational_sqrt(&q(-4)), None);
        assert_eq!(rational_sqrt(&q(0)), Some(q(0)));
    }

    #[test]
    fn square_classes() {
        assert_eq!(squarefree_class(&qf(8, 3)), BigInt::from(6));
        assert_eq!(squarefree_class(&qf(-9, 4)), BigInt::from(-1));
        assert_eq!(squarefree_class(&q(12)), BigInt::from(3));
    }
}
