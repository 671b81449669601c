//! Exact rational probabilities.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("probability {0}/{1} lies outside [0, 1]")]
    OutOfRange(u64, u64),
    #[error("malformed probability literal `{0}`")]
    Malformed(String),
}

/// A probability `num/den` in `[0, 1]`, always stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub const ZERO: Probability = Probability { num: 0, den: 1 };
    pub const ONE: Probability = Probability { num: 1, den: 1 };
    pub const HALF: Probability = Probability { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self, ProbabilityError> {
        if den == 0 {
            return Err(ProbabilityError::ZeroDenominator);
        }
        if num > den {
            return Err(ProbabilityError::OutOfRange(num, den));
        }
        let g = num.gcd(&den);
        Ok(Probability {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `1 - p`, exact.
    pub fn complement(&self) -> Probability {
        Probability {
            num: self.den - self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = ProbabilityError;

    /// Accepts `a/b` or a bare integer (`0` or `1`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ProbabilityError::Malformed(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse().map_err(|_| malformed())?,
                d.trim().parse().map_err(|_| malformed())?,
            ),
            None => (s.trim().parse().map_err(|_| malformed())?, 1),
        };
        Probability::new(num, den)
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
