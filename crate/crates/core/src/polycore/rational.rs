//! Exact rational scalars and integer-vector normalization helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| rat(v)).collect()
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `-1.25`.
pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    if let Some((num, den)) = token.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = token.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Some(Rational::new(num, den));
    }
    token.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
/// The zero vector maps to the zero vector.
pub fn primitive_integer(values: &[Rational]) -> Vec<BigInt> {
    let lcm = denominator_lcm(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    primitive(ints)
}

/// Divides an integer vector by the (positive) gcd of its entries.
pub fn primitive(mut values: Vec<BigInt>) -> Vec<BigInt> {
    let g = values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in values.iter_mut() {
            *v /= &g;
        }
    }
    values
}

pub fn to_rationals(values: &[BigInt]) -> Vec<Rational> {
    values.iter().cloned().map(Rational::from_integer).collect()
}

pub fn floor_int(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

pub fn ceil_int(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}
