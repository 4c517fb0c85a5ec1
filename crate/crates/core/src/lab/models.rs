//! Families of problems indexed by truncation order.
//!
//! Diagonal models describe `ℓ₂` operators by their diagonal sequences;
//! integral models discretize a kernel operator on `L²` with a piecewise
//! constant orthonormal basis.
//!
//! Model files are JSON. Diagonal:
//!
//! ```json
//! {"a": "1/k", "w": "1/k^2", "b": [1], "rho": 2.0}
//! ```
//!
//! Sequences may be `"1/k"`, `"1/k^p"`, a number, a list (zero beyond its
//! end) or `{"rule": <sequence>, "set": [[k, value], ...]}` to override
//! individual 1-based entries. An optional `"t"` sequence makes `T` the
//! diagonal operator with those entries instead of `√ρ I`; an optional `"n"`
//! gives the default truncation order.
//!
//! Integral:
//!
//! ```json
//! {"kernel": "named:gaussian", "grid": 8, "rho": 1.0}
//! ```

use nalgebra::{DMatrix, DVector};
use serde_json::{Map, Value};

use super::quadrature::simpson_weights;
use crate::error::{Error, Result};
use crate::model::{ModelKind, Origin, ProblemSpec, Regularizer, WeightOperator};

#[derive(Debug, Clone, PartialEq)]
pub enum Sequence {
    /// `k^{-p}`.
    Power(f64),
    Constant(f64),
    /// Explicit head, zero afterwards.
    List(Vec<f64>),
    Override { base: Box<Sequence>, set: Vec<(usize, f64)> },
}

impl Sequence {
    /// Entry `k ≥ 1`.
    pub fn at(&self, k: usize) -> f64 {
        match self {
            Sequence::Power(p) => (k as f64).powf(-p),
            Sequence::Constant(c) => *c,
            Sequence::List(v) => v.get(k - 1).copied().unwrap_or(0.0),
            Sequence::Override { base, set } => set
                .iter()
                .rev()
                .find(|(i, _)| *i == k)
                .map(|(_, v)| *v)
                .unwrap_or_else(|| base.at(k)),
        }
    }

    pub fn head(&self, n: usize) -> DVector<f64> {
        DVector::from_fn(n, |i, _| self.at(i + 1))
    }

    fn parse(v: &Value, field: &str) -> Result<Self> {
        match v {
            Value::Number(_) => Ok(Sequence::Constant(finite(v, field)?)),
            Value::String(s) => parse_rule(s, field),
            Value::Array(items) => items
                .iter()
                .enumerate()
                .map(|(i, x)| finite(x, &format!("{field}[{i}]")))
                .collect::<Result<Vec<_>>>()
                .map(Sequence::List),
            Value::Object(obj) => {
                reject_unknown(obj, field, &["rule", "set"])?;
                let base = Sequence::parse(required(obj, "rule", field)?, &format!("{field}.rule"))?;
                let mut set = Vec::new();
                if let Some(list) = obj.get("set") {
                    let arr = list
                        .as_array()
                        .ok_or_else(|| parse_err(&format!("{field}.set"), "expected [[k, value], ...]"))?;
                    for (i, pair) in arr.iter().enumerate() {
                        let f = format!("{field}.set[{i}]");
                        let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| parse_err(&f, "expected [k, value]"))?;
                        let k = pair[0].as_u64().filter(|k| *k >= 1).ok_or_else(|| parse_err(&f, "index must be >= 1"))?;
                        set.push((k as usize, finite(&pair[1], &f)?));
                    }
                }
                Ok(Sequence::Override {
                    base: Box::new(base),
                    set,
                })
            }
            _ => Err(parse_err(field, "expected a sequence rule, number or list")),
        }
    }
}

fn parse_rule(s: &str, field: &str) -> Result<Sequence> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("1/k") {
        if rest.is_empty() {
            return Ok(Sequence::Power(1.0));
        }
        if let Some(p) = rest.strip_prefix('^') {
            let p: f64 = p
                .parse()
                .map_err(|_| parse_err(field, format!("bad exponent in `{s}`")))?;
            if p.is_finite() {
                return Ok(Sequence::Power(p));
            }
        }
        return Err(parse_err(field, format!("unrecognized rule `{s}`")));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Sequence::Constant(x)),
        Ok(_) => Err(Error::NonFinite { field: field.into() }),
        Err(_) => Err(parse_err(field, format!("unrecognized rule `{s}`"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalModel {
    pub a: Sequence,
    pub w: Sequence,
    pub b: Vec<f64>,
    pub rho: f64,
    /// Diagonal of `T`; `None` means `T = √ρ I`.
    pub t: Option<Sequence>,
    pub n: Option<usize>,
}

impl DiagonalModel {
    pub fn build(&self, n: usize) -> Result<ProblemSpec> {
        if n == 0 {
            return Err(Error::EmptyDimension("truncation order"));
        }
        let a = DMatrix::from_diagonal(&self.a.head(n));
        let b = DVector::from_fn(n, |i, _| self.b.get(i).copied().unwrap_or(0.0));
        let w = WeightOperator::diagonal(self.w.head(n))?;
        let t = match &self.t {
            None => Regularizer::identity_scaled(self.rho)?,
            Some(seq) => Regularizer::Dense(DMatrix::from_diagonal(&seq.head(n))),
        };
        Ok(ProblemSpec::new(a, b, w, t)?.with_origin(Origin {
            model_kind: ModelKind::Diagonal,
            truncation_order: n,
        }))
    }

    /// Number of leading coordinates carrying `b`.
    pub fn support(&self) -> usize {
        self.b.iter().rposition(|v| *v != 0.0).map_or(0, |i| i + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// `exp(−(s − t)² / (2 · 0.1²))` on `[0, 1]²`.
    Gaussian,
    /// `2 + cos t` on `[0, 2π]²`.
    CosineDemo,
}

impl Kernel {
    fn eval(self, s: f64, t: f64) -> f64 {
        match self {
            Kernel::Gaussian => (-(s - t).powi(2) / (2.0 * 0.01)).exp(),
            Kernel::CosineDemo => 2.0 + t.cos(),
        }
    }

    pub fn domain(self) -> (f64, f64) {
        match self {
            Kernel::Gaussian => (0.0, 1.0),
            Kernel::CosineDemo => (0.0, std::f64::consts::TAU),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralModel {
    pub kernel: Kernel,
    /// Simpson subintervals per cell and direction (even).
    pub grid: usize,
    pub rho: f64,
    pub n: Option<usize>,
}

impl IntegralModel {
    /// Galerkin matrix in the orthonormal box basis `φᵢ = h^{-1/2} 1_{cellᵢ}`,
    /// data `b = 1` and weights `wᵢ = 1/i²`.
    pub fn build(&self, n: usize) -> Result<ProblemSpec> {
        if n == 0 {
            return Err(Error::EmptyDimension("truncation order"));
        }
        let (lo, hi) = self.kernel.domain();
        let h = (hi - lo) / n as f64;
        let (nodes, weights) = simpson_weights(h, self.grid)?;
        let a = DMatrix::from_fn(n, n, |i, j| {
            let (si, tj) = (lo + i as f64 * h, lo + j as f64 * h);
            let mut acc = 0.0;
            for (ns, ws) in nodes.iter().zip(&weights) {
                for (nt, wt) in nodes.iter().zip(&weights) {
                    acc += ws * wt * self.kernel.eval(si + ns, tj + nt);
                }
            }
            acc / h
        });
        let b = DVector::from_element(n, h.sqrt());
        let w = WeightOperator::diagonal(DVector::from_fn(n, |i, _| ((i + 1) as f64).powi(-2)))?;
        Ok(ProblemSpec::new(a, b, w, Regularizer::identity_scaled(self.rho)?)?.with_origin(Origin {
            model_kind: ModelKind::Integral,
            truncation_order: n,
        }))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Diagonal(DiagonalModel),
    Integral(IntegralModel),
}

impl ModelSpec {
    pub fn build(&self, n: usize) -> Result<ProblemSpec> {
        match self {
            ModelSpec::Diagonal(m) => m.build(n),
            ModelSpec::Integral(m) => m.build(n),
        }
    }

    pub fn default_n(&self) -> Option<usize> {
        match self {
            ModelSpec::Diagonal(m) => m.n,
            ModelSpec::Integral(m) => m.n,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| parse_err("<root>", "expected an object"))?;
        let n = match obj.get("n") {
            None | Some(Value::Null) => None,
            Some(x) => Some(
                x.as_u64()
                    .filter(|n| *n >= 1)
                    .ok_or_else(|| parse_err("n", "expected a positive integer"))? as usize,
            ),
        };
        let rho = |default: Option<f64>| -> Result<f64> {
            match (obj.get("rho"), default) {
                (Some(x), _) => finite(x, "rho"),
                (None, Some(d)) => Ok(d),
                (None, None) => Err(parse_err("rho", "missing field")),
            }
        };
        if let Some(k) = obj.get("kernel") {
            reject_unknown(obj, "<root>", &["kernel", "grid", "rho", "n"])?;
            let kernel = match k.as_str() {
                Some("named:gaussian") => Kernel::Gaussian,
                Some("named:cosine_demo") => Kernel::CosineDemo,
                _ => return Err(parse_err("kernel", "expected `named:gaussian` or `named:cosine_demo`")),
            };
            let grid = required(obj, "grid", "<root>")?
                .as_u64()
                .ok_or_else(|| parse_err("grid", "expected a positive even integer"))? as usize;
            if grid == 0 || grid % 2 == 1 {
                return Err(parse_err("grid", format!("Simpson needs a positive even count, got {grid}")));
            }
            return Ok(ModelSpec::Integral(IntegralModel {
                kernel,
                grid,
                rho: rho(Some(1.0))?,
                n,
            }));
        }
        reject_unknown(obj, "<root>", &["a", "w", "b", "rho", "t", "n"])?;
        let b = match Sequence::parse(required(obj, "b", "<root>")?, "b")? {
            Sequence::List(v) => v,
            _ => return Err(parse_err("b", "expected an explicit list")),
        };
        let t = match obj.get("t") {
            None | Some(Value::Null) => None,
            Some(x) => Some(Sequence::parse(x, "t")?),
        };
        Ok(ModelSpec::Diagonal(DiagonalModel {
            a: Sequence::parse(required(obj, "a", "<root>")?, "a")?,
            w: Sequence::parse(required(obj, "w", "<root>")?, "w")?,
            b,
            rho: rho(None)?,
            t,
            n,
        }))
    }
}

/// `a_k = 1/k` for `k ≥ 2` with `a₁ = 0`, `w_k = 1/k²`, `b = e₁`.
///
/// With `a₁ = 1` the data would lie in the range of `A` and the problem would
/// be trivial; removing the first diagonal entry keeps the decaying spectrum
/// and makes `b` unreachable.
pub fn tls_default_model(n: usize) -> DiagonalModel {
    DiagonalModel {
        a: Sequence::Override {
            base: Box::new(Sequence::Power(1.0)),
            set: vec![(1, 0.0)],
        },
        w: Sequence::Power(2.0),
        b: vec![1.0],
        rho: 1.0,
        t: None,
        n: Some(n),
    }
}

/// `a_k = 1/k`, `w_k = 1/k²`, `T = diag(1/k²)`, `b = e₁`.
pub fn rtls_default_model(n: usize) -> DiagonalModel {
    DiagonalModel {
        a: Sequence::Power(1.0),
        w: Sequence::Power(2.0),
        b: vec![1.0],
        rho: 1.0,
        t: Some(Sequence::Power(2.0)),
        n: Some(n),
    }
}

fn finite(v: &Value, field: &str) -> Result<f64> {
    let x = match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| parse_err(field, "not representable"))?,
        Value::String(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| parse_err(field, format!("`{s}` is not a number")))?,
        _ => return Err(parse_err(field, "expected a number")),
    };
    if !x.is_finite() {
        return Err(Error::NonFinite { field: field.into() });
    }
    Ok(x)
}

fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str, parent: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| {
        let path = if parent == "<root>" { key.to_string() } else { format!("{parent}.{key}") };
        parse_err(&path, "missing field")
    })
}

fn reject_unknown(obj: &Map<String, Value>, field: &str, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(parse_err(field, format!("unknown key `{k}`"))),
        None => Ok(()),
    }
}
