//! JSON problem files and deterministic number formatting.
//!
//! Problem file layout:
//!
//! ```json
//! {
//!   "A": {"rows": 2, "cols": 2, "data": [0, 0, 0, 0]},
//!   "b": [3, 4],
//!   "W": {"kind": "diagonal", "data": [1, 1]},
//!   "T": {"kind": "identity_scaled", "rho": 1},
//!   "origin": {"model_kind": "dense", "truncation_order": 2}
//! }
//! ```
//!
//! Matrices are row-major. `W` may also be `{"kind": "dense", "rows", "cols", "data"}`
//! and `T` may be `{"kind": "dense", "rows", "cols", "data"}`. Numbers may be given
//! as strings (`"NaN"`, `"inf"`), which are parsed and then rejected as non-finite
//! with the field path in the error.

use std::io;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{Origin, ProblemSpec, Regularizer, WeightKind, WeightOperator};

/// Writes every `f64` with 17 significant digits in scientific notation.
#[derive(Debug, Clone, Copy, Default)]
pub struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{}", format_f64(value as f64))
    }
}

/// Locale-independent 17-significant-digit rendering.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Serialize with [`FixedDigits`]; output is byte-identical for identical values.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn read_problem(path: impl AsRef<Path>) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_problem(&text)
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let root: Value = serde_json::from_str(text)?;
    problem_from_value(&root)
}

pub fn problem_from_value(root: &Value) -> Result<ProblemSpec> {
    let obj = as_object(root, "<root>")?;
    reject_unknown(obj, "<root>", &["A", "b", "W", "T", "origin"])?;

    let a = matrix_field(required(obj, "A", "<root>")?, "A")?;
    let b = DVector::from_vec(numbers(required(obj, "b", "<root>")?, "b")?);

    let w_val = required(obj, "W", "<root>")?;
    let w_obj = as_object(w_val, "W")?;
    let w = match kind(w_obj, "W")? {
        "diagonal" => {
            reject_unknown(w_obj, "W", &["kind", "data"])?;
            let d = numbers(required(w_obj, "data", "W")?, "W.data")?;
            WeightOperator::diagonal(DVector::from_vec(d))?
        }
        "dense" => WeightOperator::dense(matrix_field(w_val, "W")?)?,
        other => return Err(parse_err("W.kind", format!("unknown kind `{other}`"))),
    };

    let t_val = required(obj, "T", "<root>")?;
    let t_obj = as_object(t_val, "T")?;
    let t = match kind(t_obj, "T")? {
        "identity_scaled" => {
            reject_unknown(t_obj, "T", &["kind", "rho"])?;
            Regularizer::identity_scaled(number(required(t_obj, "rho", "T")?, "T.rho")?)?
        }
        "dense" => Regularizer::Dense(matrix_field(t_val, "T")?),
        other => return Err(parse_err("T.kind", format!("unknown kind `{other}`"))),
    };

    let mut p = ProblemSpec::new(a, b, w, t)?;
    if let Some(o) = obj.get("origin") {
        if !o.is_null() {
            let origin: Origin = serde_json::from_value(o.clone())
                .map_err(|e| parse_err("origin", e.to_string()))?;
            p = p.with_origin(origin);
        }
    }
    Ok(p)
}

pub fn problem_to_value(p: &ProblemSpec) -> Value {
    let w = match p.w().kind() {
        WeightKind::Diagonal(d) => json!({"kind": "diagonal", "data": d.as_slice()}),
        WeightKind::Dense(m) => matrix_value(m, Some("dense")),
    };
    let t = match p.t() {
        Regularizer::IdentityScaled { rho } => json!({"kind": "identity_scaled", "rho": rho}),
        Regularizer::Dense(m) => matrix_value(m, Some("dense")),
    };
    let mut root = json!({
        "A": matrix_value(p.a(), None),
        "b": p.b().as_slice(),
        "W": w,
        "T": t,
    });
    if let Some(origin) = p.origin() {
        root["origin"] = serde_json::to_value(origin).expect("origin serializes");
    }
    root
}

fn matrix_value(m: &DMatrix<f64>, kind: Option<&str>) -> Value {
    let data: Vec<f64> = m.transpose().iter().copied().collect();
    let mut v = json!({"rows": m.nrows(), "cols": m.ncols(), "data": data});
    if let Some(k) = kind {
        v["kind"] = json!(k);
    }
    v
}

fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.to_string(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(field, "expected an object"))
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str, parent: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| {
        let path = if parent == "<root>" {
            key.to_string()
        } else {
            format!("{parent}.{key}")
        };
        parse_err(&path, "missing field")
    })
}

fn reject_unknown(obj: &Map<String, Value>, field: &str, allowed: &[&str]) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(parse_err(field, format!("unknown key `{key}`")));
        }
    }
    Ok(())
}

fn kind<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a str> {
    required(obj, "kind", field)?
        .as_str()
        .ok_or_else(|| parse_err(&format!("{field}.kind"), "expected a string"))
}

fn number(v: &Value, field: &str) -> Result<f64> {
    let x = match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| parse_err(field, "number not representable as f64"))?,
        Value::String(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| parse_err(field, format!("`{s}` is not a number")))?,
        _ => return Err(parse_err(field, "expected a number")),
    };
    if !x.is_finite() {
        return Err(Error::NonFinite {
            field: field.to_string(),
        });
    }
    Ok(x)
}

fn numbers(v: &Value, field: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(field, "expected an array of numbers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| number(x, &format!("{field}[{i}]")))
        .collect()
}

fn count(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(field, "expected a nonnegative integer"))
}

fn matrix_field(v: &Value, field: &str) -> Result<DMatrix<f64>> {
    let obj = as_object(v, field)?;
    reject_unknown(obj, field, &["kind", "rows", "cols", "data"])?;
    let rows = count(required(obj, "rows", field)?, &format!("{field}.rows"))?;
    let cols = count(required(obj, "cols", field)?, &format!("{field}.cols"))?;
    let data = numbers(required(obj, "data", field)?, &format!("{field}.data"))?;
    if data.len() != rows * cols {
        return Err(parse_err(
            &format!("{field}.data"),
            format!("expected {} entries for {rows}x{cols}, found {}", rows * cols, data.len()),
        ));
    }
    Ok(DMatrix::from_row_slice(rows, cols, &data))
}
