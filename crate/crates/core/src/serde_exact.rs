//! Serde adapters that write exact scalars as `"num/den"` strings.
//!
//! Use with `#[serde(with = "crate::serde_exact")]` on a single scalar,
//! `serde_exact::vec` on a list, and `serde_exact::option` on an optional.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::arith::{parse_rational, Scalar};

pub fn serialize<S: Scalar, Z: Serializer>(x: &S, ser: Z) -> Result<Z::Ok, Z::Error> {
    ser.serialize_str(&x.to_string())
}

pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<S, D::Error> {
    let s = String::deserialize(de)?;
    parse_rational(&s).map_err(D::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Scalar, Z: Serializer>(xs: &[S], ser: Z) -> Result<Z::Ok, Z::Error> {
        let mut seq = ser.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<Vec<S>, D::Error> {
        let v = Vec::<String>::deserialize(de)?;
        v.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Scalar, Z: Serializer>(x: &Option<S>, ser: Z) -> Result<Z::Ok, Z::Error> {
        match x {
            Some(x) => ser.serialize_some(&x.to_string()),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<Option<S>, D::Error> {
        let v = Option::<String>::deserialize(de)?;
        v.map(|s| parse_rational(&s).map_err(D::Error::custom)).transpose()
    }
}

/// `(scalar, multiplicity)` pairs written as `[["1/3", 1], ...]`.
pub mod pairs {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Scalar, Z: Serializer>(xs: &[(S, u64)], ser: Z) -> Result<Z::Ok, Z::Error> {
        let mut seq = ser.serialize_seq(Some(xs.len()))?;
        for (x, c) in xs {
            seq.serialize_element(&(x.to_string(), c))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<Vec<(S, u64)>, D::Error> {
        let v = Vec::<(String, u64)>::deserialize(de)?;
        v.iter()
            .map(|(s, c)| Ok((parse_rational(s).map_err(D::Error::custom)?, *c)))
            .collect()
    }
}
