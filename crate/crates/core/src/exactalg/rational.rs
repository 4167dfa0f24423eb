//! Exact rationals and their text/JSON encodings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// A number as it appears in JSON documents: a bare integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumRepr {
    Int(i64),
    Text(String),
}

impl NumRepr {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            NumRepr::Int(n) => Ok(rat(*n)),
            NumRepr::Text(s) => parse_rational(s),
        }
    }
}

impl From<&Rational> for NumRepr {
    fn from(q: &Rational) -> Self {
        if q.is_integer() {
            if let Some(n) = q.numer().to_i64() {
                return NumRepr::Int(n);
            }
        }
        NumRepr::Text(format_rational(q))
    }
}

impl fmt::Display for NumRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumRepr::Int(n) => write!(f, "{n}"),
            NumRepr::Text(s) => f.write_str(s),
        }
    }
}

/// Bit length of `|q|`, the pivot cost during elimination.
pub fn bit_size(q: &BigInt) -> u64 {
    q.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
    }

    #[test]
    fn json_repr() {
        assert_eq!(NumRepr::from(&rat(5)), NumRepr::Int(5));
        assert_eq!(NumRepr::from(&ratio(1, 3)), NumRepr::Text("1/3".into()));
        let v: Vec<NumRepr> = serde_json::from_str(r#"[1, "-2/3"]"#).unwrap();
        assert_eq!(v[1].to_rational().unwrap(), ratio(-2, 3));
    }
}
