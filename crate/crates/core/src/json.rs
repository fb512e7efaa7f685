//! JSON conventions: exact rationals as `{"num": …, "den": …}`, and the
//! envelope that stamps every artifact with its config and version.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// Integer field of a serialized rational: a JSON number when it fits in
/// i128, otherwise a decimal string.
fn int_value(v: &BigInt) -> Value {
    match i128::try_from(v) {
        Ok(x) => match i64::try_from(x) {
            Ok(s) => Value::from(s),
            Err(_) => serde_json::to_value(x).unwrap_or_else(|_| Value::String(v.to_string())),
        },
        Err(_) => Value::String(v.to_string()),
    }
}

fn int_from(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn rational_value(r: &BigRational) -> Value {
    serde_json::json!({ "num": int_value(r.numer()), "den": int_value(r.denom()) })
}

pub fn rational_from_value(v: &Value) -> Option<BigRational> {
    let num = int_from(v.get("num")?)?;
    let den = int_from(v.get("den")?)?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// `#[serde(with = "crate::json::rational")]` for `BigRational` fields.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        rational_value(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v).ok_or_else(|| D::Error::custom("expected {\"num\", \"den\"} with den != 0"))
    }
}

/// Same as [`rational`] for `Vec<BigRational>`.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(rs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        Value::Array(rs.iter().map(rational_value).collect()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter()
            .map(|x| rational_from_value(x).ok_or_else(|| D::Error::custom("bad rational")))
            .collect()
    }
}

/// Wraps a result with the run configuration and [`crate::VERSION`].
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a, C: Serialize, R: Serialize> {
    pub version: &'static str,
    pub config: &'a C,
    pub result: &'a R,
}

impl<'a, C: Serialize, R: Serialize> Envelope<'a, C, R> {
    pub fn new(config: &'a C, result: &'a R) -> Self {
        Envelope {
            version: crate::VERSION,
            config,
            result,
        }
    }

    /// Pretty JSON with a trailing newline; key order follows field order, so
    /// output is byte-stable.
    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Holder {
        #[serde(with = "rational")]
        r: BigRational,
    }

    #[test]
    fn small_and_huge_round_trip() {
        let small = BigRational::new(BigInt::from(-11), BigInt::from(27));
        let s = serde_json::to_string(&Holder { r: small.clone() }).unwrap();
        assert_eq!(s, r#"{"r":{"num":-11,"den":27}}"#);
        assert_eq!(serde_json::from_str::<Holder>(&s).unwrap().r, small);

        let huge = BigRational::new(BigInt::from(1), BigInt::from(2).pow(200));
        let s = serde_json::to_string(&Holder { r: huge.clone() }).unwrap();
        assert!(s.contains("\"den\":\"1606938044258990275541962092341162602522202993782792835301376\""));
        assert_eq!(serde_json::from_str::<Holder>(&s).unwrap().r, huge);
    }

    #[test]
    fn envelope_carries_version() {
        let cfg = serde_json::json!({"p": 3});
        let out = Envelope::new(&cfg, &5u32).to_string_pretty();
        assert!(out.contains(crate::VERSION));
        assert!(out.ends_with("}\n"));
    }
}
