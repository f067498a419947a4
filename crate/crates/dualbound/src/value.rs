use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Extended integer: a finite value or infinity.
///
/// Relaxation values and proved bounds live in this type; `Infinite` encodes
/// detected infeasibility. The derived ordering places every finite value
/// below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(i64),
    Infinite,
}

impl Bound {
    pub fn is_finite(self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Bound::Infinite)
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }

    /// The finite value, panicking on infinity.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("bound is infinite")
    }
}

impl From<i64> for Bound {
    fn from(v: i64) -> Self {
        Bound::Finite(v)
    }
}

impl From<u32> for Bound {
    fn from(v: u32) -> Self {
        Bound::Finite(i64::from(v))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

// JSON form: a plain integer, or the string "inf".
impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => serializer.serialize_i64(*v),
            Bound::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct BoundVisitor;

        impl<'de> Visitor<'de> for BoundVisitor {
            type Value = Bound;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or the string \"inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Bound, E> {
                Ok(Bound::Finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Bound, E> {
                i64::try_from(v)
                    .map(Bound::Finite)
                    .map_err(|_| E::custom("bound out of range"))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Bound, E> {
                if s == "inf" {
                    Ok(Bound::Infinite)
                } else {
                    Err(E::custom(format!("unrecognized bound string {s:?}")))
                }
            }
        }

        deserializer.deserialize_any(BoundVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(Bound::Finite(i64::MAX) < Bound::Infinite);
        assert!(Bound::Finite(-3) < Bound::Finite(0));
        assert_eq!(Bound::Finite(4).max(Bound::Finite(2)), Bound::Finite(4));
    }

    #[test]
    fn json_round_trip() {
        for b in [Bound::Finite(7), Bound::Finite(-2), Bound::Infinite] {
            let s = serde_json::to_string(&b).unwrap();
            let back: Bound = serde_json::from_str(&s).unwrap();
            assert_eq!(b, back);
        }
        assert_eq!(serde_json::to_string(&Bound::Infinite).unwrap(), "\"inf\"");
    }
}
