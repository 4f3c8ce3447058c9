//! Extended-real Lebesgue exponents in `[1, inf]`.
//!
//! Infinity is a distinguished variant, not a sentinel float, so `p = inf`
//! survives serialization and cannot be confused with a large finite value.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Lebesgue exponent `p` with `1 <= p <= inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Validates `p >= 1`.
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::Domain(format!(
                "Lebesgue exponent must satisfy p >= 1, got {p}"
            )));
        }
        Ok(Exponent::Finite(p))
    }

    pub const INFINITY: Exponent = Exponent::Infinity;

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(*p),
            Exponent::Infinity => None,
        }
    }

    /// `1/p`, with `1/inf = 0`.
    pub fn reciprocal(&self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => ser.serialize_f64(*p),
            Exponent::Infinity => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        match &v {
            serde_json::Value::Number(n) => {
                let p = n.as_f64().ok_or_else(|| D::Error::custom("bad exponent"))?;
                Exponent::finite(p).map_err(D::Error::custom)
            }
            serde_json::Value::String(s) if s == "inf" => Ok(Exponent::Infinity),
            other => Err(D::Error::custom(format!(
                "expected number or \"inf\", got {other}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_p_below_one() {
        assert!(Exponent::finite(0.5).is_err());
        assert!(Exponent::finite(f64::NAN).is_err());
        assert!(Exponent::finite(1.0).is_ok());
    }

    #[test]
    fn serde_round_trip() {
        let p: Exponent = serde_json::from_str("2.0").unwrap();
        assert_eq!(p, Exponent::Finite(2.0));
        let q: Exponent = serde_json::from_str("\"inf\"").unwrap();
        assert!(q.is_infinite());
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"inf\"");
    }
}
