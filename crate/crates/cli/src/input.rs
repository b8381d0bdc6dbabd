//! JSON input: exact quaternions as four coordinates (strings such as
//! `"(1+tau)/2^3"`, `{"a", "b", "k"}` objects or integers), float targets as
//! four numbers or a 2x2 complex matrix.

use aurum_core::quaternion::{FloatSu2, QuatR};
use aurum_core::DyadicGolden;
use serde_json::Value;

use crate::Failure;

/// Matrices are accepted if they are this close to `SU(2)`.
const MATRIX_TOL: f64 = 1e-4;

pub enum Target {
    Float([f64; 4]),
    Exact(QuatR),
}

fn bad(msg: impl Into<String>) -> Failure {
    Failure::BadInput(msg.into())
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

fn exact_coordinate(v: &Value) -> Result<DyadicGolden, Failure> {
    match v {
        Value::String(s) => s.parse().map_err(|e: aurum_core::Error| bad(e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(DyadicGolden::from_int)
            .ok_or_else(|| bad(format!("{n} is not an integer; use a string such as \"(1+tau)/2\""))),
        Value::Object(_) => serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string())),
        _ => Err(bad(format!("cannot read {v} as a dyadic golden number"))),
    }
}

fn four(v: &Value) -> Result<&Vec<Value>, Failure> {
    match v {
        Value::Array(a) if a.len() == 4 => Ok(a),
        _ => Err(bad("expected an array of four coordinates")),
    }
}

pub fn exact_quaternion(text: &str) -> Result<QuatR, Failure> {
    let v = parse_json(text)?;
    let coords = four(&v)?;
    let c = coords.iter().map(exact_coordinate).collect::<Result<Vec<_>, _>>()?;
    Ok(QuatR(c.try_into().expect("four coordinates")))
}

fn float_matrix(v: &Value) -> Result<[f64; 4], Failure> {
    let m: FloatSu2 = serde_json::from_value(v.clone())
        .or_else(|_| {
            // [[[re, im], [re, im]], [[re, im], [re, im]]]
            let pairs: [[[f64; 2]; 2]; 2] = serde_json::from_value(v.clone())?;
            let c = |[re, im]: [f64; 2]| aurum_core::quaternion::Complex { re, im };
            Ok::<_, serde_json::Error>(aurum_core::quaternion::Su2Matrix(pairs.map(|row| row.map(c))))
        })
        .map_err(|_| bad("expected four numbers or a 2x2 matrix of complex entries"))?;
    m.to_quaternion(MATRIX_TOL).map_err(|e| bad(e.to_string()))
}

/// A target: exact if any coordinate is a string or object, float otherwise.
pub fn target(text: &str) -> Result<Target, Failure> {
    let v = parse_json(text)?;
    match &v {
        Value::Array(a) if a.len() == 4 && a.iter().all(Value::is_number) => {
            let x: Vec<f64> = a.iter().map(|n| n.as_f64().unwrap_or(f64::NAN)).collect();
            if x.iter().any(|c| !c.is_finite()) {
                return Err(bad("coordinates must be finite"));
            }
            Ok(Target::Float(x.try_into().expect("four coordinates")))
        }
        Value::Array(a) if a.len() == 4 && a.iter().any(|c| c.is_string() || c.is_object()) => {
            Ok(Target::Exact(exact_quaternion(text)?))
        }
        Value::Array(a) if a.len() == 2 => float_matrix(&v).map(Target::Float),
        _ => Err(bad("expected four coordinates or a 2x2 matrix")),
    }
}
