//! Exact rational scalars.
//!
//! Everything algebraic in this crate runs over `BigRational`. Values are
//! always in lowest terms with a positive denominator, which `num-rational`
//! already guarantees.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// The fraction `n/d`. Panics on `d == 0`; use [`parse`] for untrusted input.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"` or `"p/q"`. Rejects zero denominators instead of panicking.
pub fn parse(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Scalar::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Huge numerators/denominators: scale down by bit length first.
        _ => {
            let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(900);
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Closest rational with denominator at most `2^52`; exact for dyadic floats.
pub fn from_f64(x: f64) -> Option<Scalar> {
    Scalar::from_float(x)
}

pub fn is_positive(x: &Scalar) -> bool {
    x.is_positive()
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(x: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Serde adapter storing a scalar as its rational string.
pub mod serde_scalar {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Vec<Scalar>`.
pub mod serde_scalar_vec {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(format))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Scalar>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse(s).map_err(de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3", "12345678901234567890123/7"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(format(&parse("4/6").unwrap()), "2/3");
        assert_eq!(format(&parse("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/2/3").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&frac(2, 3), 2), frac(4, 9));
        assert_eq!(pow(&frac(2, 3), -1), frac(3, 2));
        assert_eq!(pow(&int(5), 0), one());
    }
}
