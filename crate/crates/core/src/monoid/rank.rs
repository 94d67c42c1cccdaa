use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value in `ω + 1`: a natural number or `ω`.
///
/// Used for `⌈r/s⌉`, archimedean complexity, and strong order rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(u64),
    Omega,
}

impl Rank {
    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Rank::Finite(n) => Some(n),
            Rank::Omega => None,
        }
    }
}

impl From<u64> for Rank {
    fn from(n: u64) -> Self {
        Rank::Finite(n)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Omega => f.write_str("omega"),
        }
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Rank::Finite(n) => serializer.serialize_u64(*n),
            Rank::Omega => serializer.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Rank {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RankVisitor;

        impl Visitor<'_> for RankVisitor {
            type Value = Rank;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"omega\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rank, E> {
                Ok(Rank::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rank, E> {
                u64::try_from(v)
                    .map(Rank::Finite)
                    .map_err(|_| E::custom("negative rank"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rank, E> {
                match v {
                    "omega" => Ok(Rank::Omega),
                    other => Err(E::custom(format!("unknown rank `{other}`"))),
                }
            }
        }

        deserializer.deserialize_any(RankVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_dominates() {
        assert!(Rank::Finite(u64::MAX) < Rank::Omega);
        assert!(Rank::Finite(2) < Rank::Finite(3));
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&Rank::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Rank::Omega).unwrap(), "\"omega\"");
        let back: Rank = serde_json::from_str("\"omega\"").unwrap();
        assert_eq!(back, Rank::Omega);
    }
}
