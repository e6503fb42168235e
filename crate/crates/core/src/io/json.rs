//! JSON encoding of exact numbers: integers are emitted unquoted at full
//! precision and rationals as `{"num": .., "den": ..}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Number, Value};

pub fn int(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal is a JSON number"))
}

pub fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

pub fn rational(x: &BigRational) -> Value {
    json!({ "num": int(x.numer()), "den": int(x.denom()) })
}

/// Reads an integral JSON number of any size. Floats and strings are rejected.
pub fn to_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        _ => None,
    }
}
