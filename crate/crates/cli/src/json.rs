//! JSON encodings of core values.

use dessin_core::dessin::{Counts, QuasiTreeCounts};
use dessin_core::poly::LaurentPoly;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

/// `{"text": …, "terms": [[exponent, coefficient], …]}`, ascending.
pub fn poly(p: &LaurentPoly, var: &str) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!([e, int(c)])).collect();
    json!({ "text": p.render(var), "terms": terms })
}

pub fn counts(c: &Counts) -> Value {
    json!({ "v": c.v, "e": c.e, "f": c.f, "k": c.k, "g": c.g, "n": c.n })
}

pub fn quasi_trees(s: &QuasiTreeCounts) -> Value {
    json!(s.0)
}
