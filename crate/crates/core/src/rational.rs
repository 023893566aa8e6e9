//! Exact rational scalars.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so it is used directly; this module only adds the textual
//! form shared by every file format (`"p/q"` or `"p"`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    Empty,
    ZeroDenominator,
    Malformed(String),
}

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalParseError::Empty => write!(f, "empty rational"),
            RationalParseError::ZeroDenominator => write!(f, "zero denominator"),
            RationalParseError::Malformed(s) => write!(f, "malformed rational {s:?}"),
        }
    }
}

impl std::error::Error for RationalParseError {}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, RationalParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::Malformed(whole.to_string()))
}

/// Parses `"p/q"` or `"p"` with decimal integers.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t, t)?)),
        Some((p, q)) => {
            let num = parse_int(p.trim(), t)?;
            let den = parse_int(q.trim(), t)?;
            if den.is_zero() {
                return Err(RationalParseError::ZeroDenominator);
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text: reduced, sign on the numerator, denominator omitted when 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
