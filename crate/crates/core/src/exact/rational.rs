//! Arbitrary-precision rationals and their textual form.
//!
//! Every file format in the crate writes a rational as `"p/q"`, or `"p"` when
//! the denominator is one. `BigRational` keeps itself in lowest terms with a
//! positive denominator, so the printed form is canonical.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::ParseRational(s.to_string());
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ExactError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// `1/n!` style helper used by series code.
pub fn inverse_factorial(n: u32) -> Rational {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    Rational::new(BigInt::one(), f)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// serde adapter: `#[serde(with = "rational_str")]`.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        match raw {
            RawRational::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            RawRational::Int(i) => Ok(super::int(i)),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum RawRational {
        Text(String),
        Int(i64),
    }
}

/// serde adapter for `Vec<Rational>`.
pub mod rational_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => parse_rational(&s).map_err(serde::de::Error::custom),
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(super::int)
                    .ok_or_else(|| serde::de::Error::custom(format!("non-integer number {n}"))),
                other => Err(serde::de::Error::custom(format!("expected rational, got {other}"))),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textual_form_is_lowest_terms() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(parse_rational(" 10/4 ").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn big_values_survive() {
        let s = "123456789012345678901234567891/2";
        assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
    }
}
