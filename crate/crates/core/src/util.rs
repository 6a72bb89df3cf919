/// Serializes a list of big integers as JSON numbers when they fit in 64 bits,
/// decimal strings otherwise.
pub mod bigint_list {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let repr: Vec<Repr> = values
            .iter()
            .map(|v| v.to_i64().map_or_else(|| Repr::Big(v.to_string()), Repr::Small))
            .collect();
        repr.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Repr::Small(x) => Ok(BigInt::from(x)),
                Repr::Big(s) => s.parse().map_err(D::Error::custom),
            })
            .collect()
    }
}

/// Rationals as `"p/q"` strings (or `"p"` for integers).
pub mod rational_str {
    use num_rational::BigRational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse::<BigRational>().map_err(D::Error::custom))
            .collect()
    }
}
