use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A nonnegative quantity that may be infinite.
///
/// Divergent integrals and unbounded suprema are results, not errors: the
/// existence conditions of the theory are exactly finiteness questions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub const ZERO: Extended = Extended::Finite(0.0);

    pub fn from_f64(x: f64) -> Self {
        if x.is_infinite() {
            Extended::Infinite
        } else {
            Extended::Finite(x)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }

    /// The value as an `f64`, with `f64::INFINITY` for the infinite case.
    pub fn to_f64(self) -> f64 {
        match self {
            Extended::Finite(x) => x,
            Extended::Infinite => f64::INFINITY,
        }
    }

    pub fn map(self, f: impl FnOnce(f64) -> f64) -> Self {
        match self {
            Extended::Finite(x) => Extended::Finite(f(x)),
            Extended::Infinite => Extended::Infinite,
        }
    }

    pub fn powf(self, e: f64) -> Self {
        self.map(|x| x.powf(e))
    }

    pub fn max(self, other: Self) -> Self {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.max(b)),
            _ => Extended::Infinite,
        }
    }
}

impl std::ops::Add for Extended {
    type Output = Extended;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl std::ops::Mul<f64> for Extended {
    type Output = Extended;
    fn mul(self, c: f64) -> Self {
        match self {
            Extended::Finite(a) => Extended::Finite(a * c),
            Extended::Infinite if c == 0.0 => Extended::ZERO,
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(x) => s.serialize_f64(*x),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Extended::from_f64(de_f64_or_inf(d)?))
    }
}

/// Reads a JSON number, or the string `"inf"` as positive infinity.
pub fn de_f64_or_inf<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(x) => Ok(x),
        Raw::Str(s) if s == "inf" || s == "Infinity" || s == "∞" => Ok(f64::INFINITY),
        Raw::Str(s) => Err(serde::de::Error::custom(format!("expected number or \"inf\", got {s:?}"))),
    }
}

pub fn ser_f64_or_inf<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*x)
    }
}

/// Formats a float for reports: shortest round-trip form, `inf` for infinity.
pub fn fmt_f64(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_with_infinity() {
        let v = vec![Extended::Finite(1.5), Extended::Infinite];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[1.5,\"inf\"]");
        let back: Vec<Extended> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn infinite_times_zero_is_zero() {
        assert_eq!(Extended::Infinite * 0.0, Extended::ZERO);
    }
}
