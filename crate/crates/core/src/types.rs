//! Primitive chain types: addresses, 32-byte identifiers, and wei amounts.
//!
//! Wei quantities are arbitrary-precision non-negative integers and are
//! serialized as decimal strings so fixtures never lose precision. Fixed-width
//! integer fields in fixture records use the same decimal-string encoding via
//! the [`dec_string`] helpers.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

/// Wei per gwei.
pub const WEI_PER_GWEI: u64 = 1_000_000_000;

/// 20-byte execution-layer account address (block producer identity).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(pub [u8; 20]);

/// 32-byte identifier (block hash, transaction hash).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct H256(pub [u8; 32]);

/// Non-negative wei amount with arbitrary precision.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default, Debug)]
pub struct Wei(pub BigUint);

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("invalid hex string `{0}`")]
    InvalidHex(String),
    #[error("expected {expected} bytes, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("invalid decimal integer `{0}`")]
    InvalidDecimal(String),
}

fn parse_fixed_hex<const N: usize>(s: &str) -> Result<[u8; N], ParseError> {
    let stripped = s.strip_prefix("0x").unwrap_or(s);
    let bytes = hex::decode(stripped).map_err(|_| ParseError::InvalidHex(s.to_string()))?;
    let arr: [u8; N] = bytes
        .try_into()
        .map_err(|b: Vec<u8>| ParseError::WrongLength { expected: N, got: b.len() })?;
    Ok(arr)
}

impl Address {
    /// Deterministic test/synthesis address with the id in the low bytes.
    pub fn from_low_u64(id: u64) -> Self {
        let mut bytes = [0u8; 20];
        bytes[12..].copy_from_slice(&id.to_be_bytes());
        Address(bytes)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", hex::encode(self.0))
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Address {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Address(parse_fixed_hex(s)?))
    }
}

impl H256 {
    pub fn from_low_u64(id: u64) -> Self {
        let mut bytes = [0u8; 32];
        bytes[24..].copy_from_slice(&id.to_be_bytes());
        H256(bytes)
    }
}

impl fmt::Display for H256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", hex::encode(self.0))
    }
}

impl fmt::Debug for H256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for H256 {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(H256(parse_fixed_hex(s)?))
    }
}

macro_rules! hex_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }
        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                s.parse().map_err(de::Error::custom)
            }
        }
    };
}

hex_serde!(Address);
hex_serde!(H256);

impl Wei {
    pub fn zero() -> Self {
        Wei(BigUint::default())
    }

    pub fn from_u64(v: u64) -> Self {
        Wei(BigUint::from(v))
    }

    pub fn from_gwei(gwei: u64) -> Self {
        Wei(BigUint::from(gwei) * BigUint::from(WEI_PER_GWEI))
    }

    pub fn from_dec_str(s: &str) -> Result<Self, ParseError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::InvalidDecimal(s.to_string()));
        }
        Ok(Wei(BigUint::from_str(s).map_err(|_| ParseError::InvalidDecimal(s.to_string()))?))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == BigUint::default()
    }

    /// Lossy conversion to gwei for model features and reports.
    pub fn to_gwei_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY) / WEI_PER_GWEI as f64
    }

    pub fn checked_sub(&self, rhs: &Wei) -> Option<Wei> {
        if self.0 >= rhs.0 {
            Some(Wei(&self.0 - &rhs.0))
        } else {
            None
        }
    }
}

impl fmt::Display for Wei {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Wei {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Wei::from_dec_str(s)
    }
}

hex_serde!(Wei);

impl Add<&Wei> for &Wei {
    type Output = Wei;
    fn add(self, rhs: &Wei) -> Wei {
        Wei(&self.0 + &rhs.0)
    }
}

impl Sub<&Wei> for &Wei {
    type Output = Wei;
    fn sub(self, rhs: &Wei) -> Wei {
        Wei(&self.0 - &rhs.0)
    }
}

impl Mul<u64> for &Wei {
    type Output = Wei;
    fn mul(self, rhs: u64) -> Wei {
        Wei(&self.0 * BigUint::from(rhs))
    }
}

/// Decimal-string (de)serialization for `u64` fields in fixture records.
/// Numbers are accepted on input for hand-written fixtures.
pub mod dec_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &u64, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<u64, D::Error> {
        struct Visitor;
        impl de::Visitor<'_> for Visitor {
            type Value = u64;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal string or unsigned integer")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<u64, E> {
                Ok(v)
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<u64, E> {
                s.parse().map_err(|_| E::custom(format!("invalid decimal integer `{s}`")))
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}

/// Same as [`dec_string`] for optional fields; `None` is omitted by callers.
pub mod dec_string_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<u64>, serializer: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => serializer.collect_str(v),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<u64>, D::Error> {
        struct Visitor;
        impl<'de> de::Visitor<'de> for Visitor {
            type Value = Option<u64>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal string, unsigned integer, or null")
            }
            fn visit_none<E: de::Error>(self) -> Result<Self::Value, E> {
                Ok(None)
            }
            fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
                Ok(None)
            }
            fn visit_some<D2: Deserializer<'de>>(self, d: D2) -> Result<Self::Value, D2::Error> {
                dec_string::deserialize(d).map(Some)
            }
        }
        deserializer.deserialize_option(Visitor)
    }
}
