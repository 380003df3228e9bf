//! JSON documents for ring values, matrices and graphs.
//!
//! Indices inside documents are 1-based; everything in the library is
//! 0-based, and the conversion happens here. Every decoding failure is
//! reported as [`Error::Parse`].
//!
//! ```text
//! RingSpec       {"kind": "rational" | "gf2" | "block", "block_dim": d}
//! RingValue      "p/q" | "p"   |   0 | 1   |   [["p/q", ...], ...]
//! matrix         {"spec"?: RingSpec, "m": int, "n": int, "entries": [[RingValue]]}
//! graph          {"spec"?: RingSpec, "m": int, "n": int,
//!                 "edges": [[i, j, RingValue?]], "matching"?: [[i, j]]}
//! simple graph   {"n": int, "edges": [[u, v]]}
//! ```

use serde_json::{json, Map, Value};

use crate::bigraph::{BipartiteGraph, Matching};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::Matrix;
use crate::ring::{Block, Rational, RingSpec, RingValue};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn reparse(context: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse(m) => Error::Parse(m),
        other => Error::Parse(format!("{context}: {other}")),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

/// A 1-based index in `1..=bound`, returned 0-based.
fn as_index(v: &Value, bound: usize, what: &str) -> Result<usize> {
    let k = as_usize(v, what)?;
    if k == 0 || k > bound {
        return Err(parse_err(format!("{what} {k} is out of range 1..={bound}")));
    }
    Ok(k - 1)
}

// ---------------------------------------------------------------------------
// Ring values

pub fn spec_to_json(spec: RingSpec) -> Value {
    match spec.block_dim() {
        Some(d) => json!({"kind": spec.kind_name(), "block_dim": d}),
        None => json!({"kind": spec.kind_name()}),
    }
}

pub fn spec_from_json(v: &Value) -> Result<RingSpec> {
    let obj = as_object(v, "spec")?;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| parse_err("spec.kind must be a string"))?;
    match kind {
        "rational" => Ok(RingSpec::Rational),
        "gf2" => Ok(RingSpec::Gf2),
        "block" => {
            let d = as_usize(field(obj, "block_dim")?, "spec.block_dim")?;
            RingSpec::block(d).map_err(reparse("spec.block_dim"))
        }
        other => Err(parse_err(format!("unknown ring kind \"{other}\""))),
    }
}

/// Parses a ring name as given on the command line: `rational`, `gf2`,
/// `block` (dimension 2) or `block:d`.
pub fn spec_from_name(name: &str) -> Result<RingSpec> {
    match name {
        "rational" => Ok(RingSpec::Rational),
        "gf2" => Ok(RingSpec::Gf2),
        "block" => RingSpec::block(2),
        _ => match name.strip_prefix("block:").map(str::parse::<usize>) {
            Some(Ok(d)) => RingSpec::block(d).map_err(reparse("block dimension")),
            _ => Err(parse_err(format!("unknown ring \"{name}\""))),
        },
    }
}

fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(reparse("rational")),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| parse_err(format!("rational {n} must be an integer or a \"p/q\" string"))),
        other => Err(parse_err(format!("expected a rational, found {other}"))),
    }
}

pub fn value_to_json(v: &RingValue) -> Value {
    match v {
        RingValue::Rational(r) => rational_to_json(r),
        RingValue::Gf2(b) => json!(u8::from(*b)),
        RingValue::Block(b) => Value::Array(b.rows().map(|row| row.iter().map(rational_to_json).collect()).collect()),
    }
}

pub fn value_from_json(spec: RingSpec, v: &Value) -> Result<RingValue> {
    match spec {
        RingSpec::Rational => rational_from_json(v).map(RingValue::Rational),
        RingSpec::Gf2 => match v {
            Value::Number(n) if n.as_u64() == Some(0) => Ok(RingValue::Gf2(false)),
            Value::Number(n) if n.as_u64() == Some(1) => Ok(RingValue::Gf2(true)),
            Value::Bool(b) => Ok(RingValue::Gf2(*b)),
            other => Err(parse_err(format!("GF(2) entries are 0 or 1, found {other}"))),
        },
        RingSpec::Block(d) => {
            let rows = as_array(v, "block")?;
            if rows.len() != d.get() {
                return Err(parse_err(format!("block must have {d} rows, found {}", rows.len())));
            }
            let rows = rows
                .iter()
                .map(|row| {
                    let row = as_array(row, "block row")?;
                    if row.len() != d.get() {
                        return Err(parse_err(format!("block rows must have {d} entries, found {}", row.len())));
                    }
                    row.iter().map(rational_from_json).collect()
                })
                .collect::<Result<Vec<Vec<Rational>>>>()?;
            Block::from_rows(rows).map(RingValue::Block).map_err(reparse("block"))
        }
    }
}

// ---------------------------------------------------------------------------
// Matrices

pub fn matrix_to_json(a: &Matrix) -> Value {
    json!({
        "spec": spec_to_json(a.spec()),
        "m": a.rows(),
        "n": a.cols(),
        "entries": a.iter_rows().map(|r| r.iter().map(value_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let obj = as_object(v, "matrix document")?;
    let spec = match obj.get("spec") {
        Some(s) => spec_from_json(s)?,
        None => RingSpec::Rational,
    };
    let m = as_usize(field(obj, "m")?, "m")?;
    let n = as_usize(field(obj, "n")?, "n")?;
    let entries = as_array(field(obj, "entries")?, "entries")?;
    if entries.len() != m {
        return Err(parse_err(format!("entries has {} rows but m = {m}", entries.len())));
    }
    let rows = entries
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row = as_array(row, "entries row")?;
            if row.len() != n {
                return Err(parse_err(format!("row {} has {} entries but n = {n}", i + 1, row.len())));
            }
            row.iter().map(|x| value_from_json(spec, x)).collect()
        })
        .collect::<Result<Vec<Vec<RingValue>>>>()?;
    if m == 0 {
        return Ok(Matrix::zeros(spec, 0, n));
    }
    Matrix::from_rows(spec, rows).map_err(reparse("entries"))
}

// ---------------------------------------------------------------------------
// Bipartite graphs

pub fn matching_to_json(mm: &Matching) -> Value {
    Value::Array(mm.pairs().iter().map(|&(r, c)| json!([r + 1, c + 1])).collect())
}

/// Graph document; `matching` is included when given.
pub fn graph_to_json(g: &BipartiteGraph, matching: Option<&Matching>) -> Value {
    let mut obj = Map::new();
    obj.insert("spec".into(), spec_to_json(g.spec()));
    obj.insert("m".into(), json!(g.rows()));
    obj.insert("n".into(), json!(g.cols()));
    obj.insert(
        "edges".into(),
        Value::Array(g.edges().map(|(r, c, w)| json!([r + 1, c + 1, value_to_json(w)])).collect()),
    );
    if let Some(mm) = matching {
        obj.insert("matching".into(), matching_to_json(mm));
    }
    Value::Object(obj)
}

/// A decoded graph document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: BipartiteGraph,
    pub matching: Option<Matching>,
}

/// Decodes a graph document. As for matrices, `spec` defaults to rational and an edge without
/// a weight has weight one.
pub fn graph_from_json(v: &Value) -> Result<GraphDocument> {
    let obj = as_object(v, "graph document")?;
    let spec = match obj.get("spec") {
        Some(s) => spec_from_json(s)?,
        None => RingSpec::Rational,
    };
    let m = as_usize(field(obj, "m")?, "m")?;
    let n = as_usize(field(obj, "n")?, "n")?;
    let mut edges = Vec::new();
    for e in as_array(field(obj, "edges")?, "edges")? {
        let e = as_array(e, "edge")?;
        if e.len() != 2 && e.len() != 3 {
            return Err(parse_err("edges are [row, col] or [row, col, weight]"));
        }
        let r = as_index(&e[0], m, "edge row")?;
        let c = as_index(&e[1], n, "edge column")?;
        let w = match e.get(2) {
            Some(w) => value_from_json(spec, w)?,
            None => RingValue::one(spec),
        };
        edges.push((r, c, w));
    }
    let graph = BipartiteGraph::new(spec, m, n, edges).map_err(reparse("edges"))?;
    let matching = match obj.get("matching") {
        None | Some(Value::Null) => None,
        Some(pairs) => {
            let pairs = as_array(pairs, "matching")?
                .iter()
                .map(|p| {
                    let p = as_array(p, "matching pair")?;
                    if p.len() != 2 {
                        return Err(parse_err("matching pairs are [row, col]"));
                    }
                    Ok((as_index(&p[0], m, "matching row")?, as_index(&p[1], n, "matching column")?))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(Matching::new(&graph, pairs).map_err(reparse("matching"))?)
        }
    };
    Ok(GraphDocument { graph, matching })
}

/// Reads either a graph document or a matrix document (told apart by the
/// `entries` field).
pub fn graph_or_matrix_from_json(v: &Value) -> Result<GraphDocument> {
    if v.get("entries").is_some() {
        let a = matrix_from_json(v)?;
        Ok(GraphDocument { graph: BipartiteGraph::from_matrix(&a), matching: None })
    } else {
        graph_from_json(v)
    }
}

// ---------------------------------------------------------------------------
// Simple graphs

pub fn simple_graph_to_json(g: &SimpleGraph) -> Value {
    json!({
        "n": g.vertex_count(),
        "edges": g.edges().into_iter().map(|(u, v)| json!([u + 1, v + 1])).collect::<Vec<_>>(),
    })
}

pub fn simple_graph_from_json(v: &Value) -> Result<SimpleGraph> {
    let obj = as_object(v, "simple graph document")?;
    let n = as_usize(field(obj, "n")?, "n")?;
    let edges = as_array(field(obj, "edges")?, "edges")?
        .iter()
        .map(|e| {
            let e = as_array(e, "edge")?;
            if e.len() != 2 {
                return Err(parse_err("edges are [u, v]"));
            }
            Ok((as_index(&e[0], n, "vertex")?, as_index(&e[1], n, "vertex")?))
        })
        .collect::<Result<Vec<_>>>()?;
    SimpleGraph::from_edges(n, edges).map_err(reparse("edges"))
}
