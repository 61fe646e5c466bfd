//! Closed rational intervals and three-valued comparison results.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{self, Rat};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rat::serde_str")]
    pub lo: Rat,
    #[serde(with = "rat::serde_str")]
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = std::cmp::max(-self.lo.clone(), self.hi.clone());
            Interval::new(Rat::zero(), m)
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Interval::new(-self.hi.clone(), -self.lo.clone())
        } else {
            self.clone()
        }
    }

    /// Certified `self ≤ other`.
    pub fn le(&self, other: &Interval) -> Trilean {
        if self.hi <= other.lo {
            Trilean::True
        } else if self.lo > other.hi {
            Trilean::False
        } else {
            Trilean::Indeterminate(std::cmp::max(self.width(), other.width()))
        }
    }

    /// Certified `self ≤ 0`.
    pub fn le_zero(&self) -> Trilean {
        self.le(&Interval::zero())
    }

    /// Certified `self = other`; only decidable exactly for points.
    pub fn eq_exact(&self, other: &Interval) -> Trilean {
        if self.is_point() && other.is_point() {
            Trilean::from(self.lo == other.lo)
        } else if !self.overlaps(other) {
            Trilean::False
        } else {
            Trilean::Indeterminate(std::cmp::max(self.width(), other.width()))
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }
}

impl Mul<&Rat> for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Rat) -> Interval {
        self.scale(rhs)
    }
}

/// Three-valued verdict. `Indeterminate` carries the enclosure width at
/// which the decision failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trilean {
    True,
    False,
    Indeterminate(Rat),
}

impl Trilean {
    pub fn is_true(&self) -> bool {
        matches!(self, Trilean::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Trilean::False)
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Trilean::Indeterminate(_))
    }

    /// Kleene conjunction; widths of undecided parts are maxed.
    pub fn and(self, other: Trilean) -> Trilean {
        use Trilean::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, x) | (x, True) => x,
            (Indeterminate(a), Indeterminate(b)) => Indeterminate(std::cmp::max(a, b)),
        }
    }

    pub fn not(self) -> Trilean {
        match self {
            Trilean::True => Trilean::False,
            Trilean::False => Trilean::True,
            x => x,
        }
    }

    pub fn all(items: impl IntoIterator<Item = Trilean>) -> Trilean {
        items.into_iter().fold(Trilean::True, Trilean::and)
    }

    /// Verdict label used in reports.
    pub fn status(&self) -> &'static str {
        match self {
            Trilean::True => "Verified",
            Trilean::False => "ViolatedCertified",
            Trilean::Indeterminate(_) => "Indeterminate",
        }
    }
}

impl From<bool> for Trilean {
    fn from(b: bool) -> Self {
        if b {
            Trilean::True
        } else {
            Trilean::False
        }
    }
}

impl Serialize for Trilean {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Trilean::True => s.serialize_str("true"),
            Trilean::False => s.serialize_str("false"),
            Trilean::Indeterminate(w) => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("indeterminate", &rat::format(w))?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Trilean {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) if s == "true" => Ok(Trilean::True),
            serde_json::Value::String(s) if s == "false" => Ok(Trilean::False),
            serde_json::Value::Object(m) => {
                let w = m
                    .get("indeterminate")
                    .and_then(|w| w.as_str())
                    .ok_or_else(|| D::Error::custom("expected {\"indeterminate\": width}"))?;
                Ok(Trilean::Indeterminate(rat::parse(w).map_err(D::Error::custom)?))
            }
            _ => Err(D::Error::custom(format!("invalid trilean {v}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};

    #[test]
    fn comparisons() {
        let a = Interval::new(int(0), int(1));
        let b = Interval::new(int(1), int(2));
        assert_eq!(a.le(&b), Trilean::True);
        assert_eq!(b.le(&a), Trilean::Indeterminate(int(1)));
        let c = Interval::new(int(3), int(4));
        assert_eq!(c.le(&a), Trilean::False);
        assert_eq!(Interval::point(ratio(1, 2)).eq_exact(&Interval::point(ratio(2, 4))), Trilean::True);
    }

    #[test]
    fn kleene_and() {
        let ind = Trilean::Indeterminate(int(1));
        assert_eq!(Trilean::True.and(ind.clone()), ind);
        assert_eq!(ind.clone().and(Trilean::False), Trilean::False);
        assert_eq!(Trilean::all(vec![Trilean::True, Trilean::True]), Trilean::True);
    }

    #[test]
    fn trilean_json() {
        assert_eq!(serde_json::to_string(&Trilean::True).unwrap(), "\"true\"");
        let t = Trilean::Indeterminate(ratio(1, 1024));
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"indeterminate":"1/1024"}"#);
        assert_eq!(serde_json::from_str::<Trilean>(&s).unwrap(), t);
    }
}
