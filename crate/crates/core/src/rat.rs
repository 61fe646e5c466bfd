//! Rational numbers and their text form.
//!
//! Rationals are written as `"num/den"` in lowest terms (the denominator is
//! always present, `"3/1"` for integers). Parsing additionally accepts plain
//! integers and powers of two written `2^-40`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// `2^k` for any signed `k`.
pub fn pow2(k: i32) -> Rat {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

pub fn format(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some(exp) = s.strip_prefix("2^") {
        let k: i32 = exp.parse().map_err(|_| bad())?;
        return Ok(pow2(k));
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact dyadic rational closest to `x` with denominator `2^bits`.
pub fn from_f64_dyadic(x: f64, bits: u32) -> Rat {
    let scaled = (x * f64::from(2u32).powi(bits as i32)).round();
    Rat::new(BigInt::from(scaled as i64), BigInt::one() << bits)
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (Stern–Brocot descent).
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Rat::zero()
    }
}

fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rat::one();
    if &next <= hi {
        return next;
    }
    // lo and hi share the integer part; recurse on reciprocals of the
    // fractional parts (order flips).
    let a = (hi - &fl).recip();
    let b = (lo - &fl).recip();
    fl + simplest_positive(&a, &b).recip()
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Serde adapter: a single rational as a `"a/b"` string.
pub mod serde_str {
    use super::Rat;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter: a list of rationals as `"a/b"` strings.
pub mod serde_vec {
    use super::Rat;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter: optional rational.
pub mod serde_opt {
    use super::Rat;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&super::format(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| super::parse(&s).map_err(D::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse("2^-3").unwrap(), ratio(1, 8));
        assert_eq!(parse("2^4").unwrap(), int(16));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format(&int(-2)), "-2/1");
        assert_eq!(format(&ratio(10, 4)), "5/2");
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(1, 2));
        assert_eq!(simplest_between(&ratio(3, 10), &ratio(7, 20)), ratio(1, 3));
        assert_eq!(simplest_between(&ratio(-7, 20), &ratio(-3, 10)), ratio(-1, 3));
        assert_eq!(simplest_between(&ratio(-1, 5), &ratio(1, 5)), int(0));
        assert_eq!(simplest_between(&ratio(5, 2), &ratio(5, 2)), ratio(5, 2));
        // 1.41421 .. 1.41422 -> a convergent of sqrt 2
        let s = simplest_between(&ratio(141421, 100000), &ratio(141422, 100000));
        assert!(s >= ratio(141421, 100000) && s <= ratio(141422, 100000));
        assert!(s.denom() < &BigInt::from(1000));
    }
}
