use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coefficient ring for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Coefficients {
    pub const F2: Coefficients = Coefficients::PrimeField(2);

    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::PrimeField(p))
        } else {
            Err(Error::InvalidCoefficients(format!("{p} is not prime")))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }

    pub fn is_f2(self) -> bool {
        self == Coefficients::F2
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Coefficients::PrimeField(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Fp:<p>`, and the shorthand `F<p>` (e.g. `F2`).
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(Coefficients::Integers),
            "Q" => Ok(Coefficients::Rationals),
            other => {
                let digits = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix('F'))
                    .ok_or_else(|| Error::Parse(format!("unknown coefficients `{other}`")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in `{other}`")))?;
                Coefficients::prime_field(p)
            }
        }
    }
}

impl serde::Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Coefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
