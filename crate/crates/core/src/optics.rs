//! Thin-lens conjugates.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative band around the focal length that counts as the focal point.
pub const FOCAL_POINT_TOLERANCE: f64 = 1e-9;

/// A conjugate distance in millimeters that may sit at infinity.
///
/// In JSON a finite distance is a plain number and infinity is the string
/// `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConjugateDistance {
    Finite(f64),
    Infinite,
}

impl ConjugateDistance {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            ConjugateDistance::Finite(d) => Some(d),
            ConjugateDistance::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ConjugateDistance::Infinite)
    }

    /// Shift the reference plane. Infinity stays infinity.
    pub fn offset(self, by: f64) -> ConjugateDistance {
        match self {
            ConjugateDistance::Finite(d) => ConjugateDistance::Finite(d + by),
            ConjugateDistance::Infinite => ConjugateDistance::Infinite,
        }
    }
}

impl PartialOrd for ConjugateDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ConjugateDistance::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (Finite(_), Infinite) => Some(Ordering::Less),
            (Infinite, Finite(_)) => Some(Ordering::Greater),
            (Infinite, Infinite) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for ConjugateDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugateDistance::Finite(d) => write!(f, "{d:.4} mm"),
            ConjugateDistance::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for ConjugateDistance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            ConjugateDistance::Finite(d) => serializer.serialize_f64(d),
            ConjugateDistance::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ConjugateDistance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct DistanceVisitor;

        impl Visitor<'_> for DistanceVisitor {
            type Value = ConjugateDistance;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number of millimeters or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
                Ok(ConjugateDistance::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(ConjugateDistance::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(ConjugateDistance::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                match v {
                    "inf" => Ok(ConjugateDistance::Infinite),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        deserializer.deserialize_any(DistanceVisitor)
    }
}

/// Image distance `b = f·d / (d − f)` of an object at `object_distance`.
pub fn image_distance(focal: f64, object_distance: f64) -> Result<f64> {
    if object_distance <= focal {
        return Err(Error::FocusNotBeyondFocal { focal, value: object_distance });
    }
    Ok(focal * object_distance / (object_distance - focal))
}

/// Object-side conjugate of image distance `b`.
///
/// `b` within [`FOCAL_POINT_TOLERANCE`]·f of the focal length maps to
/// infinity; `b` inside the focal length has no real conjugate.
pub fn object_distance(focal: f64, image: f64) -> Result<ConjugateDistance> {
    let gap = image - focal;
    if gap.abs() <= FOCAL_POINT_TOLERANCE * focal {
        Ok(ConjugateDistance::Infinite)
    } else if gap < 0.0 {
        Err(Error::VirtualObject { focal, image })
    } else {
        Ok(ConjugateDistance::Finite(focal * image / gap))
    }
}
