//! Arbitrary-precision counts.

use num_bigint::BigUint;

/// Every census operation returns an exact nonnegative integer.
pub type Count = BigUint;

/// `base^exp` with `0^0 = 1`.
pub fn pow(base: usize, exp: usize) -> Count {
    Count::from(base).pow(exp as u32)
}

/// Serde adapter rendering a [`Count`] as a decimal string.
pub mod decimal {
    use super::Count;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Count, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Count, D::Error> {
        let text = String::deserialize(d)?;
        Count::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}
