//! JSON encoding of field elements: an object mapping subset keys (radicands
//! joined by commas in ascending order, `""` for the rational part) to
//! rational strings such as `"3"` or `"-1/2"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_key(key: &str) -> Result<Vec<i64>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = key
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("invalid subset key {key:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    let n = out.len();
    out.dedup();
    if out.len() != n {
        return Err(Error::Parse(format!("repeated radicand in key {key:?}")));
    }
    Ok(out)
}

fn value_to_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        other => Err(Error::Parse(format!("expected rational string, found {other}"))),
    }
}

impl FieldElement {
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.coords()
            .map(|(m, q)| (self.context().subset_key(m), format_rational(q)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_json_map()).expect("string map serializes")
    }

    /// Parses an element whose keys must only use radicands of `ctx`.
    /// A bare string or integer is accepted as a rational.
    pub fn from_json_in(ctx: &Arc<FieldContext>, v: &Value) -> Result<Self> {
        let obj = match v {
            Value::Object(o) => o,
            Value::String(_) | Value::Number(_) => {
                return Ok(FieldElement::from_rational(ctx, value_to_rational(v)?))
            }
            other => return Err(Error::Parse(format!("expected field element, found {other}"))),
        };
        let mut coords = Vec::with_capacity(obj.len());
        for (key, val) in obj {
            let rads = parse_key(key)?;
            let mask = ctx.mask_of(&rads).ok_or_else(|| {
                Error::Parse(format!(
                    "subset {key:?} uses radicands outside {:?}",
                    ctx.radicands()
                ))
            })?;
            coords.push((mask, value_to_rational(val)?));
        }
        Ok(FieldElement::from_coords(ctx, coords))
    }

    /// Parses an element, inferring the smallest context from its keys.
    pub fn from_json(v: &Value) -> Result<Self> {
        let mut rads = Vec::new();
        if let Value::Object(o) = v {
            for key in o.keys() {
                rads.extend(parse_key(key)?);
            }
        }
        let bound = rads.len().max(super::DEFAULT_MAX_RADICANDS);
        let ctx = FieldContext::with_bound(rads, bound)?;
        Self::from_json_in(&ctx, v)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_map().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        FieldElement::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodes_example() {
        let k = FieldContext::new([-1, 5]).unwrap();
        let x = k.rational(1, 2) + k.i() * k.sqrt(5).unwrap() * k.int(3);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"":"1/2","-1,5":"3"}"#
        );
        let back: FieldElement = serde_json::from_str(r#"{"":"1/2","5,-1":"3"}"#).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_foreign_radicand() {
        let k = FieldContext::new([-1]).unwrap();
        let v: Value = serde_json::from_str(r#"{"2":"1"}"#).unwrap();
        assert!(FieldElement::from_json_in(&k, &v).is_err());
        let v: Value = serde_json::from_str(r#"{"":"1/0"}"#).unwrap();
        assert!(FieldElement::from_json_in(&k, &v).is_err());
    }

    #[test]
    fn zero_is_empty_object() {
        let k = FieldContext::new([2]).unwrap();
        assert_eq!(serde_json::to_string(&k.zero()).unwrap(), "{}");
        let z = FieldElement::from_json_in(&k, &serde_json::json!({"2": "0"})).unwrap();
        assert!(z.is_zero());
    }
}
