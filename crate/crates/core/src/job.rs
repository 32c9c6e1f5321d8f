//! JSON encodings and job specifications. Polynomials are arrays of
//! coefficient strings `"p/q"` indexed by degree; Laurent series are
//! `{minExp, coeffs, truncOrder}`. Parse failures carry a JSON path.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{parse_rational, ExactPoly, LaurentSeries, Rational};
use crate::cech::{CocycleKind, HyperCocycle, MatLaurent};
use crate::error::{Error, Result};
use crate::hitchin::{DivisorP1, HiggsFieldP1};
use crate::lie::{Family, TracelessMatrix};

fn fail(path: &str, message: impl Into<String>) -> Error {
    Error::Format { path: path.to_string(), message: message.into() }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| fail(path, "expected an array"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| fail(path, "expected an integer"))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| fail(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        _ => Err(fail(path, "expected a rational string \"p/q\"")),
    }
}

pub fn poly_to_json(p: &ExactPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn poly_from_json(v: &Value, path: &str) -> Result<ExactPoly> {
    let items = as_array(v, path)?;
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from_json(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactPoly::new(coeffs))
}

pub fn laurent_to_json(s: &LaurentSeries<Rational>) -> Value {
    let coeffs: Vec<Value> =
        (s.min_exp()..=s.order()).map(|k| Value::String(s.coeff(k).expect("within order").to_string())).collect();
    json!({ "minExp": s.min_exp(), "coeffs": coeffs, "truncOrder": s.order() })
}

pub fn laurent_from_json(v: &Value, path: &str) -> Result<LaurentSeries<Rational>> {
    let obj = v.as_object().ok_or_else(|| fail(path, "expected an object"))?;
    let field = |k: &str| obj.get(k).ok_or_else(|| fail(&format!("{path}.{k}"), "missing field"));
    let min_exp = as_i64(field("minExp")?, &format!("{path}.minExp"))?;
    let order = as_i64(field("truncOrder")?, &format!("{path}.truncOrder"))?;
    let cpath = format!("{path}.coeffs");
    let coeffs = as_array(field("coeffs")?, &cpath)?
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from_json(c, &format!("{cpath}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    LaurentSeries::new("w", min_exp, coeffs, order).map_err(|e| fail(path, e.to_string()))
}

fn matrix_from_json(v: &Value, path: &str) -> Result<Vec<Vec<Rational>>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let rp = format!("{path}[{i}]");
            as_array(row, &rp)?.iter().enumerate().map(|(j, x)| rational_from_json(x, &format!("{rp}[{j}]"))).collect()
        })
        .collect()
}

fn mat_laurent_to_json(m: &MatLaurent) -> Value {
    Value::Array(
        m.terms()
            .iter()
            .map(|(k, c)| {
                let rows: Vec<Value> =
                    c.iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect();
                json!([k, rows])
            })
            .collect(),
    )
}

fn mat_laurent_from_json(v: &Value, n: usize, path: &str) -> Result<MatLaurent> {
    let terms = as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let tp = format!("{path}[{i}]");
            let pair = as_array(t, &tp)?;
            if pair.len() != 2 {
                return Err(fail(&tp, "expected [exponent, matrix]"));
            }
            Ok((as_i64(&pair[0], &format!("{tp}[0]"))?, matrix_from_json(&pair[1], &format!("{tp}[1]"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    MatLaurent::from_terms(n, terms).map_err(|e| fail(path, e.to_string()))
}

pub fn cocycle_to_json(c: &HyperCocycle) -> Value {
    json!({
        "kind": c.kind,
        "overlap": mat_laurent_to_json(&c.overlap),
        "chart0": mat_laurent_to_json(&c.chart0),
        "chart1": mat_laurent_to_json(&c.chart1),
    })
}

/// `{"kind": "tangent"|"cotangent", "overlap": [[k, M], ...], "chart0": ..., "chart1": ...}`.
pub fn cocycle_from_json(v: &Value, n: usize, path: &str) -> Result<HyperCocycle> {
    let obj = v.as_object().ok_or_else(|| fail(path, "expected an object"))?;
    let kind = match obj.get("kind").and_then(Value::as_str) {
        Some("tangent") => CocycleKind::Tangent,
        Some("cotangent") => CocycleKind::Cotangent,
        _ => return Err(fail(&format!("{path}.kind"), "expected \"tangent\" or \"cotangent\"")),
    };
    let part = |k: &str| -> Result<MatLaurent> {
        let p = format!("{path}.{k}");
        match obj.get(k) {
            Some(x) => mat_laurent_from_json(x, n, &p),
            None => Ok(MatLaurent::zero(n)),
        }
    };
    Ok(HyperCocycle { kind, overlap: part("overlap")?, chart0: part("chart0")?, chart1: part("chart1")? })
}

pub fn divisor_to_json(d: &DivisorP1) -> Value {
    Value::Array(d.points().iter().map(|(q, n)| json!([q.to_string(), n])).collect())
}

pub fn divisor_from_json(v: &Value, path: &str) -> Result<DivisorP1> {
    let pts = as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let pp = format!("{path}[{i}]");
            let pair = as_array(p, &pp)?;
            if pair.len() != 2 {
                return Err(fail(&pp, "expected [point, multiplicity]"));
            }
            let q = rational_from_json(&pair[0], &format!("{pp}[0]"))?;
            let n = pair[1]
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| fail(&format!("{pp}[1]"), "expected a positive integer"))?;
            Ok((q, n))
        })
        .collect::<Result<Vec<_>>>()?;
    DivisorP1::new(pts).map_err(|e| fail(path, e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Numerical and evaluation settings, all with defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JobOptions {
    pub mode: Mode,
    pub tol: f64,
    pub nodes: usize,
    pub fd_step: String,
    pub gram: bool,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions { mode: Mode::Exact, tol: 1e-12, nodes: 48, fd_step: "1/1000".into(), gram: false }
    }
}

impl JobOptions {
    pub fn fd_step_rational(&self) -> Result<Rational> {
        parse_rational(&self.fd_step).map_err(|e| fail("$.options.fdStep", e.to_string()))
    }
}

/// A parsed job file. Which fields are required depends on the subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub family: Family,
    pub rank: usize,
    pub divisor: Option<DivisorP1>,
    pub theta: Option<TracelessMatrix>,
    pub b: Option<ExactPoly>,
    pub bdot: Option<ExactPoly>,
    pub eta: Option<ExactPoly>,
    pub zeta: Option<ExactPoly>,
    pub alpha: Option<HyperCocycle>,
    pub beta: Option<HyperCocycle>,
    pub options: JobOptions,
}

const KNOWN: [&str; 11] = ["type", "rank", "divisor", "theta", "b", "bdot", "eta", "zeta", "alpha", "beta", "options"];

impl JobSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| fail("$", "job must be an object"))?;
        if let Some(k) = obj.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(fail(&format!("$.{k}"), "unknown field"));
        }
        let family = match obj.get("type") {
            None => Family::A,
            Some(Value::String(s)) => s.parse().map_err(|_| fail("$.type", format!("unknown family {s:?}")))?,
            Some(_) => return Err(fail("$.type", "expected a string")),
        };
        let rank = match obj.get("rank") {
            None => 1,
            Some(r) => {
                r.as_u64().filter(|&r| r >= 1).ok_or_else(|| fail("$.rank", "expected a positive integer"))? as usize
            }
        };
        let divisor = obj.get("divisor").map(|d| divisor_from_json(d, "$.divisor")).transpose()?;
        let theta = obj
            .get("theta")
            .map(|t| -> Result<TracelessMatrix> {
                let rows = as_array(t, "$.theta")?;
                let entries = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let rp = format!("$.theta[{i}]");
                        as_array(r, &rp)?
                            .iter()
                            .enumerate()
                            .map(|(j, e)| poly_from_json(e, &format!("{rp}[{j}]")))
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<ExactPoly>>>>()?;
                if entries.iter().any(|r| r.len() != entries.len()) || entries.is_empty() {
                    return Err(fail("$.theta", "expected a nonempty square matrix"));
                }
                TracelessMatrix::new(entries).map_err(|e| fail("$.theta", e.to_string()))
            })
            .transpose()?;
        let poly = |k: &str| obj.get(k).map(|p| poly_from_json(p, &format!("$.{k}"))).transpose();
        let n = theta.as_ref().map_or(rank + 1, TracelessMatrix::size);
        let cocycle = |k: &str| obj.get(k).map(|c| cocycle_from_json(c, n, &format!("$.{k}"))).transpose();
        let options = match obj.get("options") {
            None => JobOptions::default(),
            Some(o) => parse_options(o)?,
        };
        Ok(JobSpec {
            family,
            rank,
            divisor,
            theta,
            b: poly("b")?,
            bdot: poly("bdot")?,
            eta: poly("eta")?,
            zeta: poly("zeta")?,
            alpha: cocycle("alpha")?,
            beta: cocycle("beta")?,
            options,
        })
    }

    pub fn require_divisor(&self) -> Result<&DivisorP1> {
        self.divisor.as_ref().ok_or_else(|| fail("$.divisor", "missing field"))
    }

    pub fn require_b(&self) -> Result<&ExactPoly> {
        self.b.as_ref().ok_or_else(|| fail("$.b", "missing field"))
    }

    /// The Higgs field, checked against the declared type.
    pub fn higgs_field(&self) -> Result<HiggsFieldP1> {
        let theta = self.theta.clone().ok_or_else(|| fail("$.theta", "missing field"))?;
        if self.family != Family::A || theta.size() != self.rank + 1 {
            return Err(fail("$.theta", format!("expected a {0}x{0} matrix for type A{1}", self.rank + 1, self.rank)));
        }
        HiggsFieldP1::new(self.require_divisor()?.clone(), theta)
    }

    /// Canonical JSON of every field, defaults included.
    pub fn resolved(&self) -> Value {
        let mut m = Map::new();
        m.insert("type".into(), json!(self.family.letter().to_string()));
        m.insert("rank".into(), json!(self.rank));
        if let Some(d) = &self.divisor {
            m.insert("divisor".into(), divisor_to_json(d));
        }
        if let Some(t) = &self.theta {
            let rows: Vec<Value> =
                t.entries().iter().map(|r| Value::Array(r.iter().map(poly_to_json).collect())).collect();
            m.insert("theta".into(), Value::Array(rows));
        }
        for (k, p) in [("b", &self.b), ("bdot", &self.bdot), ("eta", &self.eta), ("zeta", &self.zeta)] {
            if let Some(p) = p {
                m.insert(k.into(), poly_to_json(p));
            }
        }
        for (k, c) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            if let Some(c) = c {
                m.insert(k.into(), cocycle_to_json(c));
            }
        }
        m.insert("options".into(), serde_json::to_value(&self.options).expect("plain data"));
        Value::Object(m)
    }
}

fn parse_options(v: &Value) -> Result<JobOptions> {
    let obj = v.as_object().ok_or_else(|| fail("$.options", "expected an object"))?;
    let mut o = JobOptions::default();
    for (k, x) in obj {
        let path = format!("$.options.{k}");
        match k.as_str() {
            "mode" => {
                o.mode = match x.as_str() {
                    Some("exact") => Mode::Exact,
                    Some("float") => Mode::Float,
                    _ => return Err(fail(&path, "expected \"exact\" or \"float\"")),
                }
            }
            "tol" => {
                o.tol = x.as_f64().filter(|t| *t > 0.0).ok_or_else(|| fail(&path, "expected a positive number"))?
            }
            "nodes" => {
                o.nodes = x
                    .as_u64()
                    .filter(|n| (4..=4096).contains(n))
                    .ok_or_else(|| fail(&path, "expected an integer in 4..=4096"))? as usize
            }
            "fdStep" => {
                let s = rational_from_json(x, &path)?;
                if s <= Rational::from_integer(0.into()) {
                    return Err(fail(&path, "step must be positive"));
                }
                o.fd_step = s.to_string();
            }
            "gram" => o.gram = x.as_bool().ok_or_else(|| fail(&path, "expected a boolean"))?,
            _ => return Err(fail(&path, "unknown option")),
        }
    }
    Ok(o)
}
