//! JSON records. Every object carries a `"kind"`; numbers are written as
//! decimal strings. Keys come out sorted, so re-serializing a parsed record
//! reproduces it byte for byte.

use serde_json::{Map, Value};

use crate::concrete::ConcretePoly;
use crate::error::Error;
use crate::orbitring::MultiSymElement;
use crate::presentation::RankCertificate;
use crate::ringcore::{format_coeff, CoeffRing, SymPoly, Symbol};

pub fn to_line(value: &Value) -> String {
    serde_json::to_string(value).expect("JSON values always serialize")
}

pub fn with_kind<'a>(kind: &str, fields: impl IntoIterator<Item = (&'a str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("kind".into(), Value::String(kind.into()));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn term(label: &str, key: String, coeff: &crate::ringcore::Coeff) -> Value {
    let mut map = Map::new();
    map.insert("coeff".into(), s(format_coeff(coeff)));
    map.insert(label.into(), Value::String(key));
    Value::Object(map)
}

pub fn concrete(p: &ConcretePoly) -> Value {
    let m = p.m();
    let terms = p
        .terms()
        .iter()
        .rev()
        .map(|(mono, c)| term("monomial", mono.fmt_with(|i| format!("x{}({})", i % m + 1, i / m + 1)), c))
        .collect();
    with_kind(
        "poly",
        [
            ("basis", s("concrete")),
            ("n", s(p.n())),
            ("m", s(m)),
            ("ring", s(p.ring().name())),
            ("text", s(p)),
            ("terms", Value::Array(terms)),
        ],
    )
}

pub fn orbit(x: &MultiSymElement, n: Option<usize>) -> Value {
    let terms = x.terms().iter().rev().map(|(alpha, c)| term("index", alpha.to_string(), c)).collect();
    with_kind(
        "orbit",
        [
            ("n", n.map_or(s("inf"), s)),
            ("m", s(x.arity())),
            ("ring", s(x.ring().name())),
            ("text", s(x)),
            ("terms", Value::Array(terms)),
        ],
    )
}

/// A polynomial in symbols: generators, `e1` symbols, or elementary `e_i`.
pub fn symbolic<S: Symbol>(kind: &str, p: &SymPoly<S>, ring: CoeffRing, m: usize) -> Value {
    let terms = p.iter().rev().map(|(mono, c)| term("monomial", mono.to_string(), c)).collect();
    let mut fields = vec![("ring", s(ring.name())), ("text", s(p)), ("terms", Value::Array(terms))];
    if m > 0 {
        fields.push(("m", s(m)));
    }
    with_kind(kind, fields)
}

pub fn certificate(c: &RankCertificate, timing: bool) -> Value {
    let mut c = c.clone();
    if !timing {
        c.elapsed_us = 0;
    }
    let mut value = stringify_numbers(serde_json::to_value(&c).expect("certificates serialize"));
    if let Value::Object(map) = &mut value {
        map.insert("kind".into(), s("certificate"));
        if !timing {
            map.remove("elapsed_us");
        }
    }
    value
}

pub fn error(e: &Error, status: i32) -> Value {
    with_kind("error", [("message", s(e)), ("status", s(status))])
}

fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(x) => Value::String(x.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(stringify_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_become_strings_recursively() {
        let v = serde_json::json!({"a": 1, "b": [2, {"c": 3}], "d": null});
        assert_eq!(to_line(&stringify_numbers(v)), r#"{"a":"1","b":["2",{"c":"3"}],"d":null}"#);
    }
}
