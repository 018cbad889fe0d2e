//! Exact rational types and their `"p/q"` string form.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

/// Fixed-width exact rational, used for thresholds and desk-scale indices.
pub type Rational = Ratio<i128>;

pub fn rat(numer: i128, denom: i128) -> Rational {
    Ratio::new(numer, denom)
}

pub fn int(v: i128) -> Rational {
    Ratio::from_integer(v)
}

/// Formats as `p/q` (always with a denominator).
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_big(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("bad rational `{s}`: {e:?}"))
}

pub fn parse_big(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("bad rational `{s}`: {e:?}"))
}

pub fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_i128(), r.denom().to_i128()) {
        return n as f64 / d as f64;
    }
    // scale down both sides until they fit an f64
    let bits = r.numer().bits().max(r.denom().bits());
    let shift = bits.saturating_sub(1000) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Narrows a big rational when both parts fit in `i128`.
pub fn narrow(r: &BigRational) -> Option<Rational> {
    Some(Ratio::new_raw(r.numer().to_i128()?, r.denom().to_i128()?))
}

pub fn widen(r: &Rational) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// serde adaptor: [`Rational`] as a `"p/q"` string.
pub mod ratio_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(D::Error::custom)
    }
}

/// serde adaptor: `Option<Rational>` as `"p/q"` or `null`.
pub mod opt_ratio_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_ratio(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_ratio(&s).map_err(D::Error::custom))
            .transpose()
    }
}

/// serde adaptor: [`BigRational`] as a `"p/q"` string.
pub mod big_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_big(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_big(&s).map_err(D::Error::custom)
    }
}

/// serde adaptor: `Vec<BigRational>` as a list of `"p/q"` strings.
pub mod big_vec_str {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_big))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_big(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_forms() {
        assert_eq!(format_ratio(&rat(10, 4)), "5/2");
        assert_eq!(format_ratio(&int(45)), "45/1");
        assert_eq!(parse_ratio("5/2"), Ok(rat(5, 2)));
        assert_eq!(parse_ratio("7"), Ok(int(7)));
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn wide_to_float() {
        let huge = BigRational::new(
            BigInt::from(1) << 3000usize,
            (BigInt::from(1) << 2999usize) * 3,
        );
        assert!((big_to_f64(&huge) - 2.0 / 3.0).abs() < 1e-12);
    }
}
