//! JSON exchange formats.
//!
//! Rationals travel as strings (`"11/6"`, `"-3"`); plain JSON integers are
//! accepted on input. Subsets are arrays of strictly increasing 1-based
//! elements.
//!
//! ```text
//! set function   {"d": 3, "entries": [{"set": [1, 2], "value": "3/2"}]}
//! rep            {"d": 3, "y": [{"set": [1, 2, 3], "value": 1}]}
//! matroid        {"ground": 3, "bases": [[1, 2], [1, 3], [2, 3]]}
//!                {"graph": {"vertices": 3, "edges": [[1, 2], [2, 3]]}}
//! symmetric      {"d": 3, "values": ["1", "3/2"]}
//! ```

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::functionals::SymmetricFunctional;
use crate::genperm::{GenPermRep, Point, ViolationWitness};
use crate::matroid::Matroid;
use crate::setfun::{SetFunction, SubsetMask, MAX_D};
use crate::Rational;

/// Largest vertex count accepted for graphic matroids.
pub const MAX_GRAPH_VERTICES: usize = 1024;

fn invalid(message: impl Into<String>) -> Error {
    Error::Invalid(message.into())
}

/// Parses JSON text, mapping syntax errors to [`Error::Parse`].
pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` with decimal integers and `q ≠ 0`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let integer = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid(format!("not a rational number: {text:?}")));
        }
        s.parse()
            .map_err(|_| invalid(format!("not a rational number: {text:?}")))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(integer(text)?)),
        Some((p, q)) => {
            let q = integer(q)?;
            if q.is_zero() {
                return Err(invalid(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(integer(p)?, q))
        }
    }
}

/// A rational from a JSON string or integer.
pub fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(invalid(format!(
            "expected a rational as a string or integer, found {other}"
        ))),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| invalid(format!("missing field {key:?}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| invalid(format!("{what} must be a JSON object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{what} must be a JSON array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| invalid(format!("{what} must be a nonnegative integer")))
}

fn dimension(obj: &Map<String, Value>, key: &str, max_d: usize) -> Result<usize> {
    let d = as_usize(field(obj, key)?, key)?;
    let max = max_d.min(MAX_D);
    if d == 0 || d > max {
        return Err(Error::DimensionOutOfRange { d, max });
    }
    Ok(d)
}

/// A subset of `[d]` from a strictly increasing array of 1-based elements.
pub fn subset_from_value(v: &Value, d: usize) -> Result<SubsetMask> {
    let items = as_array(v, "a set")?;
    let mut elements = Vec::with_capacity(items.len());
    for item in items {
        let e = as_usize(item, "a set element")?;
        if e == 0 || e > d {
            return Err(invalid(format!("set element {e} outside 1..={d}")));
        }
        if elements.last().is_some_and(|&last| last >= e) {
            return Err(invalid(format!("set {v} is not strictly increasing")));
        }
        elements.push(e);
    }
    SubsetMask::from_elements(d, &elements)
}

fn entries_from_value(v: &Value, d: usize) -> Result<SetFunction> {
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for entry in as_array(v, "entries")? {
        let obj = as_object(entry, "an entry")?;
        let set = subset_from_value(field(obj, "set")?, d)?;
        if !seen.insert(set) {
            return Err(invalid(format!("set {set} listed twice")));
        }
        entries.push((set, rational_from_value(field(obj, "value")?)?));
    }
    SetFunction::from_entries(d, entries)
}

/// Parses a set function; `max_d` further caps the dimension.
pub fn parse_set_function(text: &str, max_d: usize) -> Result<SetFunction> {
    set_function_from_value(&parse_value(text)?, max_d)
}

pub fn set_function_from_value(v: &Value, max_d: usize) -> Result<SetFunction> {
    let obj = as_object(v, "a set function")?;
    let d = dimension(obj, "d", max_d)?;
    entries_from_value(field(obj, "entries")?, d)
}

/// Parses a rep; the coefficients sit under `"y"` (either an entry array or
/// an object with `"entries"`) or directly under `"entries"`.
pub fn parse_rep(text: &str, max_d: usize) -> Result<GenPermRep> {
    rep_from_value(&parse_value(text)?, max_d)
}

pub fn rep_from_value(v: &Value, max_d: usize) -> Result<GenPermRep> {
    let obj = as_object(v, "a rep")?;
    let d = dimension(obj, "d", max_d)?;
    let entries = match obj.get("y") {
        Some(Value::Object(inner)) => field(inner, "entries")?,
        Some(other) => other,
        None => field(obj, "entries")?,
    };
    GenPermRep::new(entries_from_value(entries, d)?)
}

/// Parses a matroid given by bases or by a graph.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    matroid_from_value(&parse_value(text)?)
}

pub fn matroid_from_value(v: &Value) -> Result<Matroid> {
    let obj = as_object(v, "a matroid")?;
    if let Some(graph) = obj.get("graph") {
        let graph = as_object(graph, "graph")?;
        let vertices = as_usize(field(graph, "vertices")?, "vertices")?;
        if vertices > MAX_GRAPH_VERTICES {
            return Err(Error::TooLarge(format!(
                "{vertices} vertices exceeds the limit of {MAX_GRAPH_VERTICES}"
            )));
        }
        let edges = as_array(field(graph, "edges")?, "edges")?;
        if edges.len() > MAX_D {
            return Err(Error::DimensionOutOfRange {
                d: edges.len(),
                max: MAX_D,
            });
        }
        let edges = edges
            .iter()
            .map(|e| match as_array(e, "an edge")?.as_slice() {
                [u, v] => Ok((as_usize(u, "a vertex")?, as_usize(v, "a vertex")?)),
                _ => Err(invalid(format!("edge {e} must have two endpoints"))),
            })
            .collect::<Result<Vec<_>>>()?;
        return Matroid::from_graph(vertices, &edges);
    }
    let m = as_usize(field(obj, "ground")?, "ground")?;
    if m > MAX_D {
        return Err(Error::DimensionOutOfRange { d: m, max: MAX_D });
    }
    let bases = as_array(field(obj, "bases")?, "bases")?
        .iter()
        .map(|b| subset_from_value(b, m))
        .collect::<Result<Vec<_>>>()?;
    Matroid::new(m, bases)
}

/// Parses a symmetric functional: values on `|I| = 2, …, d`.
pub fn parse_symmetric(text: &str, max_d: usize) -> Result<SymmetricFunctional> {
    symmetric_from_value(&parse_value(text)?, max_d)
}

pub fn symmetric_from_value(v: &Value, max_d: usize) -> Result<SymmetricFunctional> {
    let obj = as_object(v, "a symmetric functional")?;
    let d = as_usize(field(obj, "d")?, "d")?;
    if d < 2 || d > max_d {
        return Err(Error::DimensionOutOfRange { d, max: max_d });
    }
    let values = as_array(field(obj, "values")?, "values")?
        .iter()
        .map(rational_from_value)
        .collect::<Result<Vec<_>>>()?;
    SymmetricFunctional::new(d, values)
}

pub fn rational_to_json(q: &Rational) -> Value {
    if q.denom().is_one() {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn subset_to_json(s: SubsetMask) -> Value {
    json!(s.elements())
}

/// Nonzero entries only, in subset-index order.
pub fn set_function_to_json(f: &SetFunction) -> Value {
    let entries: Vec<Value> = f
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| json!({"set": subset_to_json(s), "value": rational_to_json(v)}))
        .collect();
    json!({"d": f.d(), "entries": entries})
}

pub fn rep_to_json(rep: &GenPermRep) -> Value {
    let entries = set_function_to_json(rep.y())["entries"].take();
    json!({"d": rep.d(), "y": entries})
}

pub fn point_to_json(p: &Point) -> Value {
    Value::Array(p.iter().map(rational_to_json).collect())
}

pub fn witness_to_json(w: &ViolationWitness) -> Value {
    json!({"E": subset_to_json(w.e), "T": subset_to_json(w.t), "sum": rational_to_json(&w.value)})
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    let bases: Vec<Value> = m.bases().iter().map(|&b| subset_to_json(b)).collect();
    json!({"ground": m.ground_size(), "bases": bases})
}
