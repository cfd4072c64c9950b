//! Wire formats shared by the CLI, tests, and fuzz targets.
//!
//! Rationals travel as "p/q" strings (or plain integers), probabilities
//! and correlators as JSON numbers. Every parser here validates before
//! touching constructors that assert, so malformed input surfaces as an
//! error rather than a panic — the fuzz targets lean on that.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chordal::{Graph, PartialSymMatrix};
use crate::corsets::{BehaviorTable, Cor33Witness, Correlation};
use crate::fme::{LinIneq, LinSystem, Rat};
use crate::numkernel::SymMatrix;
use crate::polytope::{HPolytope, Polytope, VPolytope};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid {kind}: {reason}")]
    Invalid { kind: &'static str, reason: String },
}

fn invalid(kind: &'static str, reason: impl Into<String>) -> JsonError {
    JsonError::Invalid {
        kind,
        reason: reason.into(),
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, JsonError> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    // reject absurd magnitudes early; exactness never needs them
    if s.len() > 256 {
        return Err(invalid("rational", "literal too long"));
    }
    let t = s.trim();
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num_str).map_err(|e| invalid("rational", format!("{s:?}: {e}")))?;
    let den = BigInt::from_str(den_str).map_err(|e| invalid("rational", format!("{s:?}: {e}")))?;
    if den.is_zero() {
        return Err(invalid("rational", format!("{s:?}: zero denominator")));
    }
    Ok(Rat::new(num, den))
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

// ---------------------------------------------------------------------
// correlations and behaviors

#[derive(Serialize, Deserialize)]
struct CorrelationDto {
    n: usize,
    m: usize,
    c: Vec<Vec<f64>>,
}

pub fn parse_correlation(text: &str) -> Result<Correlation, JsonError> {
    let dto: CorrelationDto = serde_json::from_str(text)?;
    if dto.n == 0 || dto.m == 0 {
        return Err(invalid("correlation", "n and m must be positive"));
    }
    if dto.c.len() != dto.n || dto.c.iter().any(|row| row.len() != dto.m) {
        return Err(invalid("correlation", "matrix shape does not match n x m"));
    }
    Correlation::new(dto.c).map_err(|e| invalid("correlation", e.to_string()))
}

pub fn correlation_to_json(corr: &Correlation) -> serde_json::Value {
    serde_json::json!({
        "n": corr.n(),
        "m": corr.m(),
        "c": corr.rows(),
    })
}

#[derive(Serialize, Deserialize)]
struct BehaviorDto {
    n: usize,
    m: usize,
    p: BTreeMap<String, f64>,
}

pub fn parse_behavior(text: &str) -> Result<BehaviorTable, JsonError> {
    let dto: BehaviorDto = serde_json::from_str(text)?;
    if dto.n == 0 || dto.m == 0 {
        return Err(invalid("behavior", "n and m must be positive"));
    }
    let mut p = BTreeMap::new();
    for (key, value) in dto.p {
        let parts: Vec<&str> = key.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(invalid("behavior", format!("key {key:?} is not a,b,x,y")));
        }
        let a: i8 = parts[0]
            .parse()
            .map_err(|_| invalid("behavior", format!("outcome {:?}", parts[0])))?;
        let b: i8 = parts[1]
            .parse()
            .map_err(|_| invalid("behavior", format!("outcome {:?}", parts[1])))?;
        let x: usize = parts[2]
            .parse()
            .map_err(|_| invalid("behavior", format!("setting {:?}", parts[2])))?;
        let y: usize = parts[3]
            .parse()
            .map_err(|_| invalid("behavior", format!("setting {:?}", parts[3])))?;
        p.insert((a, b, x, y), value);
    }
    BehaviorTable::new(dto.n, dto.m, p).map_err(|e| invalid("behavior", e.to_string()))
}

// ---------------------------------------------------------------------
// partial matrices and witnesses

#[derive(Serialize, Deserialize)]
struct PartialDto {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

pub fn parse_partial_matrix(text: &str) -> Result<PartialSymMatrix, JsonError> {
    let dto: PartialDto = serde_json::from_str(text)?;
    if dto.dim == 0 || dto.dim > 64 {
        return Err(invalid("partial matrix", "dim out of range"));
    }
    for &(_, _, v) in &dto.entries {
        if !v.is_finite() {
            return Err(invalid("partial matrix", "non-finite entry"));
        }
    }
    PartialSymMatrix::from_entries(dto.dim, &dto.entries)
        .map_err(|e| invalid("partial matrix", e.to_string()))
}

pub fn partial_matrix_to_json(p: &PartialSymMatrix) -> serde_json::Value {
    let entries: Vec<(usize, usize, f64)> = p.entries().collect();
    serde_json::json!({ "dim": p.dim(), "entries": entries })
}

pub fn sym_matrix_to_json(m: &SymMatrix) -> serde_json::Value {
    serde_json::json!(m.to_rows())
}

pub fn witness_to_json(w: &Cor33Witness) -> serde_json::Value {
    serde_json::json!({
        "alpha": w.alpha,
        "beta": w.beta,
        "gamma": w.gamma,
        "margin": w.margin,
        "gram": w.gram.to_rows(),
        "vectors": w.vectors,
    })
}

// ---------------------------------------------------------------------
// linear systems

#[derive(Serialize, Deserialize)]
struct IneqDto {
    coeffs: BTreeMap<String, String>,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct LinSystemDto {
    vars: Vec<String>,
    ineqs: Vec<IneqDto>,
}

pub fn parse_linsystem(text: &str) -> Result<LinSystem, JsonError> {
    let dto: LinSystemDto = serde_json::from_str(text)?;
    if dto.vars.is_empty() || dto.vars.len() > 64 {
        return Err(invalid("linear system", "variable count out of range"));
    }
    let declared: std::collections::BTreeSet<&String> = dto.vars.iter().collect();
    if declared.len() != dto.vars.len() {
        return Err(invalid("linear system", "duplicate variable names"));
    }
    let mut ineqs = Vec::with_capacity(dto.ineqs.len());
    for q in &dto.ineqs {
        let mut coeffs = BTreeMap::new();
        for (v, c) in &q.coeffs {
            if !declared.contains(v) {
                return Err(invalid("linear system", format!("undeclared variable {v:?}")));
            }
            coeffs.insert(v.clone(), parse_rat(c)?);
        }
        ineqs.push(LinIneq::new(coeffs, parse_rat(&q.rhs)?));
    }
    Ok(LinSystem::new(dto.vars, ineqs))
}

pub fn linsystem_to_json(system: &LinSystem) -> serde_json::Value {
    let ineqs: Vec<serde_json::Value> = system
        .ineqs
        .iter()
        .map(|q| {
            let coeffs: BTreeMap<String, String> = q
                .coeffs
                .iter()
                .map(|(v, c)| (v.clone(), rat_to_string(c)))
                .collect();
            serde_json::json!({ "coeffs": coeffs, "rhs": rat_to_string(&q.rhs) })
        })
        .collect();
    serde_json::json!({ "vars": system.vars, "ineqs": ineqs })
}

// ---------------------------------------------------------------------
// polytopes

#[derive(Serialize, Deserialize)]
struct HRowDto {
    coeffs: Vec<String>,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct HPolytopeDto {
    dim: usize,
    ineqs: Vec<HRowDto>,
    #[serde(default)]
    equations: Vec<HRowDto>,
}

#[derive(Serialize, Deserialize)]
struct VPolytopeDto {
    dim: usize,
    vertices: Vec<Vec<String>>,
}

const MAX_POLYTOPE_DIM: usize = 64;

fn parse_h_rows(rows: &[HRowDto], dim: usize) -> Result<Vec<(Vec<Rat>, Rat)>, JsonError> {
    rows.iter()
        .map(|row| {
            if row.coeffs.len() != dim {
                return Err(invalid("polytope", "coefficient row has wrong length"));
            }
            let coeffs = row
                .coeffs
                .iter()
                .map(|c| parse_rat(c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((coeffs, parse_rat(&row.rhs)?))
        })
        .collect()
}

pub fn parse_hpolytope(text: &str) -> Result<HPolytope, JsonError> {
    let dto: HPolytopeDto = serde_json::from_str(text)?;
    if dto.dim == 0 || dto.dim > MAX_POLYTOPE_DIM {
        return Err(invalid("polytope", "dim out of range"));
    }
    let mut h = HPolytope::new(dto.dim, parse_h_rows(&dto.ineqs, dto.dim)?);
    h.equations = parse_h_rows(&dto.equations, dto.dim)?;
    Ok(h.canonical())
}

pub fn parse_vpolytope(text: &str) -> Result<VPolytope, JsonError> {
    let dto: VPolytopeDto = serde_json::from_str(text)?;
    if dto.dim == 0 || dto.dim > MAX_POLYTOPE_DIM {
        return Err(invalid("polytope", "dim out of range"));
    }
    if dto.vertices.len() > 1 << 22 {
        return Err(invalid("polytope", "too many vertices"));
    }
    let vertices = dto
        .vertices
        .iter()
        .map(|v| {
            if v.len() != dto.dim {
                return Err(invalid("polytope", "vertex has wrong length"));
            }
            v.iter().map(|c| parse_rat(c)).collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VPolytope::new(dto.dim, vertices))
}

/// Accepts either representation, keyed by the presence of "vertices".
pub fn parse_polytope(text: &str) -> Result<Polytope, JsonError> {
    let probe: serde_json::Value = serde_json::from_str(text)?;
    if probe.get("vertices").is_some() {
        Ok(Polytope::V(parse_vpolytope(text)?))
    } else {
        Ok(Polytope::H(parse_hpolytope(text)?))
    }
}

pub fn hpolytope_to_json(h: &HPolytope) -> serde_json::Value {
    let rows = |list: &[(Vec<Rat>, Rat)]| -> Vec<serde_json::Value> {
        list.iter()
            .map(|(coeffs, rhs)| {
                serde_json::json!({
                    "coeffs": coeffs.iter().map(rat_to_string).collect::<Vec<_>>(),
                    "rhs": rat_to_string(rhs),
                })
            })
            .collect()
    };
    serde_json::json!({
        "dim": h.dim,
        "ineqs": rows(&h.ineqs),
        "equations": rows(&h.equations),
    })
}

pub fn vpolytope_to_json(v: &VPolytope) -> serde_json::Value {
    serde_json::json!({
        "dim": v.dim,
        "vertices": v
            .vertices
            .iter()
            .map(|vert| vert.iter().map(rat_to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------
// graphs

#[derive(Serialize, Deserialize)]
struct GraphDto {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_graph(text: &str) -> Result<Graph, JsonError> {
    let dto: GraphDto = serde_json::from_str(text)?;
    if dto.vertices == 0 || dto.vertices > 1 << 16 {
        return Err(invalid("graph", "vertex count out of range"));
    }
    Graph::from_edges(dto.vertices, &dto.edges).map_err(|e| invalid("graph", e.to_string()))
}

pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_list(),
    })
}
