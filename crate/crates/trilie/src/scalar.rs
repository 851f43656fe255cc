//! Exact scalars: arbitrary-precision rationals, always in lowest terms with a
//! positive denominator. No floating point anywhere in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base field of every computation in this crate.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar `p/q`; panics on `q == 0` (use [`parse_scalar`] for untrusted input).
pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"` or `"p/q"` with optional leading sign. Rejects anything else,
/// in particular floating-point syntax and zero denominators.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = |m: &str| Error::parse(format!("rational {s:?}"), m.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numerator = parse_int(num_str, true).ok_or_else(|| bad("invalid numerator"))?;
    let denominator = match den_str {
        Some(d) => parse_int(d, false).ok_or_else(|| bad("invalid denominator"))?,
        None => BigInt::one(),
    };
    if denominator.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(numerator, denominator))
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical rendering: `"p/q"` with `q > 0`, plain `"p"` when `q == 1`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a vector of scalars as `[a, b, ...]`.
pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(format_scalar).collect();
    format!("[{}]", parts.join(", "))
}

/// Sign of the permutation sorting three pairwise-distinct values, or `None`
/// when two of them coincide.
pub fn sort3_sign<T: Ord + Copy>(a: T, b: T, c: T) -> Option<((T, T, T), i8)> {
    if a == b || a == c || b == c {
        return None;
    }
    let mut v = [a, b, c];
    let mut sign = 1i8;
    // three-element bubble sort, counting swaps
    if v[0] > v[1] {
        v.swap(0, 1);
        sign = -sign;
    }
    if v[1] > v[2] {
        v.swap(1, 2);
        sign = -sign;
    }
    if v[0] > v[1] {
        v.swap(0, 1);
        sign = -sign;
    }
    Some(((v[0], v[1], v[2]), sign))
}

pub(crate) fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub(crate) fn neg_if(x: Scalar, negative: bool) -> Scalar {
    if negative {
        -x
    } else {
        x
    }
}

pub(crate) fn abs_height(x: &Scalar) -> BigInt {
    x.numer().abs().max(x.denom().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-7/2").unwrap(), ratio(-7, 2));
        assert_eq!(parse_scalar("4/6").unwrap(), ratio(2, 3));
    }

    #[test]
    fn rejects_malformed_rationals() {
        for bad in ["", "1.5", "1/0", "1/-2", "a", "1/2/3", "+3", " 1", "1 "] {
            assert!(parse_scalar(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_scalar(&ratio(4, 6)), "2/3");
        assert_eq!(format_scalar(&ratio(-4, 2)), "-2");
        assert_eq!(format_scalar(&ratio(3, -4)), "-3/4");
    }

    #[test]
    fn sort3_signs() {
        assert_eq!(sort3_sign(1, 2, 3), Some(((1, 2, 3), 1)));
        assert_eq!(sort3_sign(2, 1, 3), Some(((1, 2, 3), -1)));
        assert_eq!(sort3_sign(3, 1, 2), Some(((1, 2, 3), 1)));
        assert_eq!(sort3_sign(1, 1, 2), None);
    }
}
