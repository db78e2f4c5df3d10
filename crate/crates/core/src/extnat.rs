use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A natural number or ω, where ω is above every integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(usize),
    Omega,
}

pub use ExtNat::{Fin, Omega};

impl ExtNat {
    pub fn is_omega(self) -> bool {
        self == Omega
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Fin(x) => Some(x),
            Omega => None,
        }
    }

    /// 1 + self, with 1 + ω = ω.
    pub fn succ(self) -> ExtNat {
        match self {
            Fin(x) => Fin(x + 1),
            Omega => Omega,
        }
    }
}

impl From<usize> for ExtNat {
    fn from(x: usize) -> Self {
        Fin(x)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(x) => write!(f, "{x}"),
            Omega => f.write_str("w"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w" | "ω" => Ok(Omega),
            _ => s
                .parse::<usize>()
                .map(Fin)
                .map_err(|_| Error::Parse(format!("bad LCP entry `{s}`"))),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Fin(x) => s.serialize_u64(*x as u64),
            Omega => s.serialize_str("w"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(x) => Ok(Fin(x as usize)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// LCP array entries for positions 1..n of a suffix array of length n,
/// stored 0-based: `entries[j - 1]` is the value between SA[j-1] and SA[j].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LcpArray {
    pub entries: Vec<ExtNat>,
}

impl LcpArray {
    pub fn new(entries: Vec<ExtNat>) -> Self {
        LcpArray { entries }
    }

    pub fn from_finite(values: &[usize]) -> Self {
        LcpArray::new(values.iter().map(|&x| Fin(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Length of the underlying string(s).
    pub fn text_len(&self) -> usize {
        self.entries.len() + 1
    }

    /// 1-based access matching the LCP[1..n) convention.
    pub fn at(&self, j: usize) -> ExtNat {
        self.entries[j - 1]
    }

    pub fn zeros(&self) -> usize {
        self.entries.iter().filter(|&&e| e == Fin(0)).count()
    }
}

impl fmt::Display for LcpArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for LcpArray {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(LcpArray::new(entries))
    }
}

#[macro_export]
macro_rules! lcp {
    (@e w) => { $crate::extnat::ExtNat::Omega };
    (@e $x:literal) => { $crate::extnat::ExtNat::Fin($x) };
    ($($t:tt),* $(,)?) => { $crate::extnat::LcpArray::new(vec![$($crate::lcp!(@e $t)),*]) };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_order_and_succ() {
        assert!(Fin(1_000_000) < Omega);
        assert_eq!(Omega.succ(), Omega);
        assert_eq!(Fin(2).succ(), Fin(3));
    }

    #[test]
    fn text_round_trip() {
        let l: LcpArray = "w 1 w 3 0 w 2".parse().unwrap();
        assert_eq!(l, lcp![w, 1, w, 3, 0, w, 2]);
        assert_eq!(l.to_string(), "w 1 w 3 0 w 2");
        assert!("1 -2".parse::<LcpArray>().is_err());
        assert_eq!("".parse::<LcpArray>().unwrap().len(), 0);
    }

    #[test]
    fn json_round_trip() {
        let l = lcp![w, 0, 5];
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"["w",0,5]"#);
        assert_eq!(serde_json::from_str::<LcpArray>(&s).unwrap(), l);
    }
}
