//! JSON encoding of germs and of the integer objects that appear in reports.
//!
//! ```json
//! { "n": 6,
//!   "points": [ {"id": "a", "index": 3, "label": "+", "value": "40"} ],
//!   "boundary": [ {"from": "a", "to": "c", "coeff": 7} ] }
//! ```
//!
//! Values are exact rationals written `"p/q"` (an integer or integer string
//! is accepted too). Coefficients are integers, or decimal strings when they
//! do not fit in 64 bits.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::morse::{BoundaryEntry, CriticalPoint, GermComplex, GermError, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("point {id}: bad value {value:?} (expected \"p/q\")")]
    Value { id: String, value: String },
    #[error("point {id}: bad label {label:?} (expected \"+\" or \"-\")")]
    Label { id: String, label: String },
    #[error("boundary entry {from} -> {to}: bad coefficient {coeff}")]
    Coeff {
        from: String,
        to: String,
        coeff: String,
    },
    #[error(transparent)]
    Germ(#[from] GermError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGerm {
    n: usize,
    points: Vec<RawPoint>,
    #[serde(default)]
    boundary: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    id: String,
    index: usize,
    label: String,
    value: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    from: String,
    to: String,
    coeff: Value,
}

fn parse_rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((p, q)) => {
                    let p = BigInt::from_str(p.trim()).ok()?;
                    let q = BigInt::from_str(q.trim()).ok()?;
                    (!q.is_zero()).then(|| BigRational::new(p, q))
                }
                None => BigInt::from_str(s).ok().map(BigRational::from_integer),
            }
        }
        _ => None,
    }
}

fn parse_integer(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => BigInt::from_str(s.trim()).ok(),
        _ => None,
    }
}

/// Parses a germ file. Structural problems are reported with line and column;
/// the germ is built but not validated.
pub fn parse_germ(text: &str) -> Result<GermComplex, FormatError> {
    let raw: RawGerm = serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut points = Vec::with_capacity(raw.points.len());
    for p in raw.points {
        let label = Label::parse(&p.label).ok_or_else(|| FormatError::Label {
            id: p.id.clone(),
            label: p.label.clone(),
        })?;
        let value = parse_rational(&p.value).ok_or_else(|| FormatError::Value {
            id: p.id.clone(),
            value: p.value.to_string(),
        })?;
        points.push(CriticalPoint {
            id: p.id,
            index: p.index,
            label,
            value,
        });
    }
    let mut entries = Vec::with_capacity(raw.boundary.len());
    for e in raw.boundary {
        let coeff = parse_integer(&e.coeff).ok_or_else(|| FormatError::Coeff {
            from: e.from.clone(),
            to: e.to.clone(),
            coeff: e.coeff.to_string(),
        })?;
        entries.push(BoundaryEntry {
            from: e.from,
            to: e.to,
            coeff,
        });
    }
    Ok(GermComplex::new(raw.n, points, &entries)?)
}

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(x.to_string()),
    }
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_json).collect()))
            .collect(),
    )
}

pub fn germ_json(germ: &GermComplex) -> Value {
    let points: Vec<Value> = germ
        .points()
        .iter()
        .map(|p| {
            json!({
                "id": p.id,
                "index": p.index,
                "label": p.label.symbol(),
                "value": p.value.to_string(),
            })
        })
        .collect();
    let boundary: Vec<Value> = germ
        .entries()
        .iter()
        .map(|e| json!({"from": e.from, "to": e.to, "coeff": int_json(&e.coeff)}))
        .collect();
    json!({"n": germ.n(), "points": points, "boundary": boundary})
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
