//! `dimerlab-graph-v1` JSON, polynomial JSON and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, Graph, GraphError, VertexId, VertexRole, WeightSymbol};
use crate::poly::{Monomial, Polynomial};

pub const GRAPH_FORMAT: &str = "dimerlab-graph-v1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format tag {0:?}, expected {GRAPH_FORMAT:?}")]
    Format(String),
    #[error("vertex ids must be exactly 0..{0} without repeats")]
    VertexIds(usize),
    #[error("edge ids must be exactly 0..{0} without repeats")]
    EdgeIds(usize),
    #[error("unknown role {0:?}")]
    Role(String),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("unknown symbol {0:?}")]
    Symbol(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    format: String,
    #[serde(default)]
    multigraph: bool,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct VertexDoc {
    id: VertexId,
    role: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeDoc {
    id: EdgeId,
    u: VertexId,
    v: VertexId,
    #[serde(default = "unit")]
    weight: WeightSymbol,
}

fn unit() -> WeightSymbol {
    WeightSymbol::Unit
}

fn role_name(role: VertexRole) -> &'static str {
    match role {
        VertexRole::Plain => "plain",
        VertexRole::V => "v",
        VertexRole::E(_) => "e",
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphDoc {
        format: GRAPH_FORMAT.to_string(),
        multigraph: g.is_multigraph(),
        vertices: g
            .vertices()
            .map(|v| VertexDoc {
                id: v,
                role: role_name(g.roles()[v]).to_string(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeDoc {
                id,
                u: e.u,
                v: e.v,
                weight: e.weight,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph document serializes")
}

/// Parses a graph document. Ids may appear in any order but must be dense.
/// e-vertices get their originating edge number from their rank among
/// e-vertices, which matches the layout produced by the middle-graph
/// transform.
pub fn graph_from_json(text: &str) -> Result<Graph, IoError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    if doc.format != GRAPH_FORMAT {
        return Err(IoError::Format(doc.format));
    }
    let n = doc.vertices.len();
    let mut names: Vec<Option<String>> = vec![None; n];
    for v in doc.vertices {
        match names.get_mut(v.id) {
            Some(slot @ None) => *slot = Some(v.role),
            _ => return Err(IoError::VertexIds(n)),
        }
    }
    let mut roles = Vec::with_capacity(n);
    let mut next_edge_vertex = 0;
    for name in names.into_iter().map(Option::unwrap) {
        let role = match name.as_str() {
            "plain" => VertexRole::Plain,
            "v" => VertexRole::V,
            "e" => {
                next_edge_vertex += 1;
                VertexRole::E(next_edge_vertex - 1)
            }
            _ => return Err(IoError::Role(name)),
        };
        roles.push(role);
    }
    let m = doc.edges.len();
    let mut edges: Vec<Option<Edge>> = vec![None; m];
    for e in doc.edges {
        match edges.get_mut(e.id) {
            Some(slot @ None) => {
                *slot = Some(Edge {
                    u: e.u,
                    v: e.v,
                    weight: e.weight,
                })
            }
            _ => return Err(IoError::EdgeIds(m)),
        }
    }
    let edges = edges.into_iter().map(Option::unwrap).collect();
    Ok(Graph::from_parts(roles, edges, doc.multigraph)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct TermDoc {
    coeff: String,
    exps: BTreeMap<String, u32>,
}

/// Polynomial JSON: terms in ascending lexicographic exponent order, only
/// nonzero exponents listed.
pub fn polynomial_to_json(p: &Polynomial<BigUint>) -> String {
    serde_json::to_string(&polynomial_to_value(p)).expect("polynomial serializes")
}

pub fn polynomial_to_value(p: &Polynomial<BigUint>) -> serde_json::Value {
    let docs: Vec<TermDoc> = p
        .terms()
        .map(|(m, c)| TermDoc {
            coeff: c.to_string(),
            exps: WeightSymbol::VARIABLES
                .iter()
                .zip(m.0)
                .filter(|(_, e)| *e > 0)
                .map(|(s, e)| (s.as_str().to_string(), e))
                .collect(),
        })
        .collect();
    serde_json::to_value(docs).expect("polynomial serializes")
}

pub fn polynomial_from_json(text: &str) -> Result<Polynomial<BigUint>, IoError> {
    let docs: Vec<TermDoc> = serde_json::from_str(text)?;
    let mut terms = Vec::with_capacity(docs.len());
    for d in docs {
        let coeff: BigUint = d
            .coeff
            .parse()
            .map_err(|_| IoError::Coefficient(d.coeff.clone()))?;
        let mut exps = [0; 6];
        for (name, e) in d.exps {
            let idx = WeightSymbol::parse(&name)
                .and_then(WeightSymbol::index)
                .ok_or(IoError::Symbol(name))?;
            exps[idx] = e;
        }
        terms.push((Monomial(exps), coeff));
    }
    Ok(Polynomial::from_terms(terms))
}

/// Graphviz rendering: v-vertices as circles, e-vertices as squares,
/// non-unit weights as edge labels.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let shape = match g.roles()[v] {
            VertexRole::Plain => "ellipse",
            VertexRole::V => "circle",
            VertexRole::E(_) => "square",
        };
        let _ = writeln!(out, "  {v} [shape={shape}];");
    }
    for e in g.edges() {
        if e.weight == WeightSymbol::Unit {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        } else {
            let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.weight);
        }
    }
    out.push_str("}\n");
    out
}
