//! Serialized output: versioned JSON envelopes with floats fixed to 12
//! significant digits, and flat CSV rows.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Error;
use crate::graph::{Graph, NodeSet};

pub const SCHEMA: &str = "sinkopt/1";

/// Rounds `x` to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Rounds every float in `v`, recursively.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().unwrap());
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Labels of a set as a JSON array.
pub fn set_json(g: &Graph, s: &NodeSet) -> Value {
    Value::from(s.labels(g))
}

/// `{"schema", "command", ...body}` with floats rounded.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command.into());
    match body {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    round_floats(Value::Object(map))
}

pub fn error_envelope(err: &Error) -> Value {
    serde_json::json!({
        "schema": SCHEMA,
        "error": { "code": err.code(), "message": err.to_string() },
    })
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// One flat CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub set: Vec<u64>,
    pub f: f64,
    pub rho: Option<f64>,
    pub method: String,
}

/// CSV with header `set,F,rho,method`; sets are space-separated labels.
pub fn render_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["set", "F", "rho", "method"]).expect("in-memory write");
    for r in rows {
        let set = r.set.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        let rho = r.rho.map(|x| round12(x).to_string()).unwrap_or_default();
        w.write_record([set, round12(r.f).to_string(), rho, r.method.clone()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
