//! JSON graph files and machine-readable reports.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::covers::CoverResult;
use crate::error::{Error, Result};
use crate::graph::{Arrow, PlumbingGraph, Vertex};
use crate::latcoh::{EuResult, EuStatus};
use crate::lattice::{DualVector, Rational};
use crate::sw::{CapReport, IntegralSurgeryTable, SwReport};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: u32,
    pub euler: i64,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub vertex: u32,
    pub multiplicity: i64,
}

/// On-disk form of a plumbing graph.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<BTreeMap<String, i64>>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<PlumbingGraph> {
        if self.vertices.is_empty() {
            return Err(Error::Parse("graph has no vertices".into()));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.genus != 0) {
            return Err(Error::Parse(format!("vertex {} has genus {}; only genus 0 is supported", v.id, v.genus)));
        }
        let index: BTreeMap<u32, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        if index.len() != self.vertices.len() {
            return Err(Error::Parse("vertex ids are not unique".into()));
        }
        let lookup = |id: u32, what: &str| {
            index.get(&id).copied().ok_or_else(|| Error::Parse(format!("{what} references unknown vertex id {id}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((lookup(*a, "edge")?, lookup(*b, "edge")?)))
            .collect::<Result<Vec<_>>>()?;
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok(Arrow { vertex: lookup(a.vertex, "arrow")?, multiplicity: a.multiplicity }))
            .collect::<Result<Vec<_>>>()?;
        let multiplicities = match &self.multiplicities {
            None => None,
            Some(map) => {
                let mut m = vec![None; self.vertices.len()];
                for (k, &val) in map {
                    let id: u32 =
                        k.parse().map_err(|_| Error::Parse(format!("multiplicity key '{k}' is not an id")))?;
                    m[lookup(id, "multiplicity")?] = Some(val);
                }
                Some(
                    m.into_iter()
                        .enumerate()
                        .map(|(i, x)| {
                            x.ok_or_else(|| Error::Parse(format!("vertex {} has no multiplicity", self.vertices[i].id)))
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        let vertices = self.vertices.iter().map(|v| Vertex { id: v.id, euler: v.euler }).collect();
        let g = PlumbingGraph::from_parts(vertices, edges, arrows, multiplicities)?;
        if !g.is_connected() {
            return Err(Error::Structure("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn from_graph(g: &PlumbingGraph) -> Self {
        let vertices = g.vertices().iter().map(|v| VertexEntry { id: v.id, euler: v.euler, genus: 0 }).collect();
        let mut edges: Vec<[u32; 2]> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (g.id(a), g.id(b));
                [x.min(y), x.max(y)]
            })
            .collect();
        edges.sort_unstable();
        let arrows =
            g.arrows().iter().map(|a| ArrowEntry { vertex: g.id(a.vertex), multiplicity: a.multiplicity }).collect();
        let multiplicities = g.multiplicities().map(|m| (0..g.len()).map(|v| (g.id(v).to_string(), m[v])).collect());
        Self { vertices, edges, arrows, multiplicities }
    }
}

pub fn parse_graph_str(text: &str) -> Result<PlumbingGraph> {
    let file: GraphFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    file.to_graph()
}

pub fn parse_graph(path: &Path) -> Result<PlumbingGraph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph_str(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn graph_to_json(g: &PlumbingGraph) -> Value {
    serde_json::to_value(GraphFile::from_graph(g)).expect("serializable")
}

pub fn serialize_graph(g: &PlumbingGraph) -> String {
    serde_json::to_string_pretty(&graph_to_json(g)).expect("serializable")
}

pub fn write_graph(g: &PlumbingGraph, path: &Path) -> Result<()> {
    std::fs::write(path, serialize_graph(g) + "\n")?;
    Ok(())
}

pub fn rational_json(x: &Rational) -> Value {
    json!({ "num": big_json(x.numer()), "den": big_json(x.denom()) })
}

/// Integers as JSON numbers when they fit, otherwise as decimal strings.
pub fn big_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn dual_vector_json(x: &DualVector) -> Value {
    Value::Array(x.coords.iter().map(rational_json).collect())
}

pub fn sw_report_json(r: &SwReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "class": row.class,
                "residues": row.residues,
                "representative": dual_vector_json(&row.representative),
                "i": rational_json(&row.i),
                "s": big_json(&row.s),
                "sw": rational_json(&row.sw),
            })
        })
        .collect();
    json!({ "invariant_factors": r.factors, "classes": rows, "total_s": big_json(&r.total) })
}

pub fn eu_json(class: usize, r: &EuResult) -> Value {
    let (status, bounds) = match &r.status {
        EuStatus::Converged { bounds } => ("converged", bounds),
        EuStatus::Inconclusive { last_bounds } => ("inconclusive", last_bounds),
    };
    json!({
        "class": class,
        "eu": r.eu.as_ref().map(big_json),
        "min_weight": r.min_weight,
        "b0_profile": r.b0_profile,
        "status": status,
        "box": bounds,
    })
}

pub fn cover_json(c: &CoverResult) -> Value {
    json!({
        "graph": graph_to_json(&c.graph),
        "fibers": c.fibers.iter().map(|f| f.iter().map(|&v| c.graph.id(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "multiplicities": c.multiplicities,
    })
}

pub fn cap_json(c: &CapReport) -> Value {
    json!({
        "cover_s0": big_json(&c.cover_s0),
        "base_s": c.base_values.iter().map(big_json).collect::<Vec<_>>(),
        "base_total": big_json(&c.base_total),
        "holds": c.holds,
        "cover": graph_to_json(&c.cover),
    })
}

pub fn integral_table_json(t: &IntegralSurgeryTable) -> Value {
    let list = |v: &[BigInt]| v.iter().map(big_json).collect::<Vec<_>>();
    json!({
        "d": t.d,
        "alexander": list(t.alexander.coeffs()),
        "delta": big_json(&t.delta),
        "q": list(t.q_poly.coeffs()),
        "q_at_one": big_json(&t.q_at_one),
        "s_shifted": list(&t.s_shifted),
        "c": list(&t.c_chi),
        "s": list(&t.s),
        "c_total": big_json(&t.c_total),
        "total": big_json(&t.total),
    })
}
