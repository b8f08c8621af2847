//! Line graph, vertex-edge (middle) graph, and the reductions that bring a
//! graph of maximum degree three down to a cubic base while preserving the
//! number of dimer coverings of its middle graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, Graph, GraphError, VertexId, VertexRole, WeightSymbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} has degree {degree}, expected a pendant vertex")]
    NotPendant { vertex: VertexId, degree: usize },
    #[error("vertex {vertex} has degree {degree}, expected degree 2")]
    NotDegreeTwo { vertex: VertexId, degree: usize },
    #[error("smoothing vertex {vertex} would create a loop at {neighbor}")]
    WouldCreateLoop {
        vertex: VertexId,
        neighbor: VertexId,
    },
    #[error("maximum degree {0} exceeds 3")]
    MaxDegree(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph carries no v-/e-vertex roles")]
    MissingRoles,
    #[error("base graph is not cubic: v-vertex {vertex} has {degree} incident e-vertices")]
    NotCubic { vertex: VertexId, degree: usize },
    #[error("not a middle graph of a simple cubic graph: {0}")]
    NotMiddleGraph(String),
}

/// Line graph with unit weights.
pub fn line_graph(g: &Graph) -> Graph {
    line_graph_with(g, |_, _| WeightSymbol::Unit)
}

/// Line graph whose edge weights come from `rule` applied to the two base
/// edges being joined.
///
/// Vertex `i` of the result stands for base edge `i`. Two edges are joined
/// once per shared endpoint, so parallel base edges give a doubled edge and
/// a multigraph result.
pub fn line_graph_with<F>(g: &Graph, rule: F) -> Graph
where
    F: Fn(&Edge, &Edge) -> WeightSymbol,
{
    let mut lg = empty_like(g);
    for e in 0..g.edge_count() {
        lg.add_vertex(VertexRole::E(e));
    }
    for (e, f) in incident_pairs(g) {
        let w = rule(&g.edges()[e], &g.edges()[f]);
        lg.add_edge(e, f, w).expect("incident pairs are distinct");
    }
    lg
}

/// Multigraph if `g` has parallel edges, so derived graphs may double up.
fn empty_like(g: &Graph) -> Graph {
    if g.has_parallel_edges() {
        Graph::new_multigraph()
    } else {
        Graph::new()
    }
}

/// Unordered pairs of distinct edges, one per shared endpoint, ordered by
/// that endpoint and then by position in its incidence list.
fn incident_pairs(g: &Graph) -> Vec<(EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for w in g.vertices() {
        let inc = g.incident(w);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                out.push((inc[i].min(inc[j]), inc[i].max(inc[j])));
            }
        }
    }
    out
}

/// Middle graph with unit weights.
pub fn middle_graph(g: &Graph) -> Graph {
    middle_graph_with(g, |_, _| WeightSymbol::Unit, |_| WeightSymbol::Unit)
}

/// Middle graph with weighted edges.
///
/// Layout: v-vertices `0..n` keep their base ids, the e-vertex of base edge
/// `k` is `n + k`. Edges are the line-graph edges (weighted by `pair_rule`)
/// followed by the two v-e edges of each base edge (weighted by
/// `incidence_rule`).
pub fn middle_graph_with<F, H>(g: &Graph, pair_rule: F, incidence_rule: H) -> Graph
where
    F: Fn(&Edge, &Edge) -> WeightSymbol,
    H: Fn(&Edge) -> WeightSymbol,
{
    let n = g.vertex_count();
    let mut mg = empty_like(g);
    mg.add_vertices(n, VertexRole::V);
    for e in 0..g.edge_count() {
        mg.add_vertex(VertexRole::E(e));
    }
    let add = |mg: &mut Graph, u, v, w| {
        mg.add_edge(u, v, w)
            .expect("parallel only when the base has parallel edges");
    };
    for (e, f) in incident_pairs(g) {
        let w = pair_rule(&g.edges()[e], &g.edges()[f]);
        add(&mut mg, n + e, n + f, w);
    }
    for (k, e) in g.edges().iter().enumerate() {
        let w = incidence_rule(e);
        add(&mut mg, e.u, n + k, w);
        add(&mut mg, e.v, n + k, w);
    }
    mg
}

/// The middle graph of `g` with the e-vertex of base edge `e` deleted,
/// together with every middle-graph edge touching it.
pub fn middle_graph_without_edge_vertex(g: &Graph, e: EdgeId) -> Result<Graph, TransformError> {
    g.edge(e)?;
    let mg = middle_graph(g);
    Ok(mg
        .without_vertices(&BTreeSet::from([g.vertex_count() + e]))
        .0)
}

/// Deletes a degree-1 vertex together with its edge.
pub fn remove_pendant(g: &Graph, v: VertexId) -> Result<Graph, TransformError> {
    let degree = g.degree(v)?;
    if degree != 1 {
        return Err(TransformError::NotPendant { vertex: v, degree });
    }
    Ok(g.without_vertices(&BTreeSet::from([v])).0)
}

/// Replaces a degree-2 vertex `u` with neighbours `x != y` by a new unit
/// edge `xy`. The multigraph flag is raised when the new edge is parallel
/// to an existing one. Returns the new graph and the id of the new edge.
pub fn smooth_degree_two(g: &Graph, u: VertexId) -> Result<(Graph, EdgeId), TransformError> {
    let degree = g.degree(u)?;
    if degree != 2 {
        return Err(TransformError::NotDegreeTwo { vertex: u, degree });
    }
    let mut ends = g.neighbors(u);
    let (x, y) = (ends.next().unwrap(), ends.next().unwrap());
    if x == y {
        return Err(TransformError::WouldCreateLoop {
            vertex: u,
            neighbor: x,
        });
    }
    let (mut h, map) = g.without_vertices(&BTreeSet::from([u]));
    let (x, y) = (map[x].unwrap(), map[y].unwrap());
    if h.edge_between(x, y).is_some() {
        h.set_multigraph(true);
    }
    let e = h.add_edge(x, y, WeightSymbol::Unit)?;
    Ok((h, e))
}

/// One reduction step, with ids relative to the graph it was applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum ReductionStep {
    PendantRemoval { vertex: VertexId },
    Smoothing { vertex: VertexId, new_edge: EdgeId },
}

/// Where a reduction stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseClass {
    CubicSimple,
    CubicMultigraph,
    #[serde(rename = "C2")]
    C2,
    #[serde(rename = "K1")]
    K1,
    Empty,
    /// Every remaining degree-2 vertex has both edges going to the same
    /// neighbour (a digon hanging off a larger graph), so smoothing would
    /// create a loop.
    Irreducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub base: BaseClass,
}

impl ReductionTrace {
    /// Applies the recorded steps to `g` and returns the result.
    pub fn replay(&self, g: &Graph) -> Result<Graph, TransformError> {
        let mut cur = g.clone();
        for step in &self.steps {
            cur = match *step {
                ReductionStep::PendantRemoval { vertex } => remove_pendant(&cur, vertex)?,
                ReductionStep::Smoothing { vertex, .. } => smooth_degree_two(&cur, vertex)?.0,
            };
        }
        Ok(cur)
    }
}

/// Applies a single reduction step if one is available: the lowest-id
/// pendant vertex first, otherwise the lowest-id degree-2 vertex with two
/// distinct neighbours.
pub fn reduction_step(g: &Graph) -> Option<(Graph, ReductionStep)> {
    if g.vertex_count() <= 1 {
        return None;
    }
    if let Some(v) = g.vertices().find(|&v| g.incident(v).len() == 1) {
        let h = remove_pendant(g, v).expect("vertex is pendant");
        return Some((h, ReductionStep::PendantRemoval { vertex: v }));
    }
    g.vertices()
        .filter(|&u| g.incident(u).len() == 2)
        .find_map(|u| smooth_degree_two(g, u).ok().map(|r| (u, r)))
        .map(|(u, (h, e))| {
            (
                h,
                ReductionStep::Smoothing {
                    vertex: u,
                    new_edge: e,
                },
            )
        })
}

/// Reduces a connected graph of maximum degree at most three until no
/// reduction step applies.
pub fn reduce_to_base(g: &Graph) -> Result<(Graph, ReductionTrace), TransformError> {
    let max = g.max_degree();
    if max > 3 {
        return Err(TransformError::MaxDegree(max));
    }
    if !g.is_empty() && !g.is_connected() {
        return Err(TransformError::Disconnected);
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while let Some((next, step)) = reduction_step(&cur) {
        debug_assert!(next.vertex_count() < cur.vertex_count());
        cur = next;
        steps.push(step);
    }
    let base = classify_base(&cur);
    Ok((cur, ReductionTrace { steps, base }))
}

fn classify_base(g: &Graph) -> BaseClass {
    match g.vertex_count() {
        0 => BaseClass::Empty,
        1 => BaseClass::K1,
        _ if g.is_regular(3) => {
            if g.has_parallel_edges() {
                BaseClass::CubicMultigraph
            } else {
                BaseClass::CubicSimple
            }
        }
        2 if g.is_regular(2) => BaseClass::C2,
        _ => BaseClass::Irreducible,
    }
}

/// The complete graph induced in a middle graph by one v-vertex and the
/// three e-vertices of its incident base edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K4Block {
    /// Id of the vertex in the base graph (rank among v-vertices).
    pub base_vertex: VertexId,
    /// Ids of the three incident base edges.
    pub base_edges: [EdgeId; 3],
    /// The v-vertex in the middle graph.
    pub center: VertexId,
    /// The three e-vertices in the middle graph, parallel to `base_edges`.
    pub corners: [VertexId; 3],
    /// The v-e edges `center–corners[i]`.
    pub spokes: [EdgeId; 3],
    /// The e-e edges; `rim[i]` is opposite `corners[i]`, joining the other
    /// two corners.
    pub rim: [EdgeId; 3],
}

impl K4Block {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.spokes.iter().chain(&self.rim).copied()
    }

    pub fn vertices(&self) -> [VertexId; 4] {
        [
            self.center,
            self.corners[0],
            self.corners[1],
            self.corners[2],
        ]
    }

    /// Corner position holding `v`, if `v` is a corner.
    pub fn corner_index(&self, v: VertexId) -> Option<usize> {
        self.corners.iter().position(|&c| c == v)
    }
}

/// Splits the edges of the middle graph of a simple cubic graph into one
/// K4 per base vertex.
pub fn k4_decomposition(mg: &Graph) -> Result<Vec<K4Block>, TransformError> {
    let roles = mg.roles();
    if roles.contains(&VertexRole::Plain) || !roles.contains(&VertexRole::V) {
        return Err(TransformError::MissingRoles);
    }
    let mut used = vec![false; mg.edge_count()];
    let mut claim = |e: EdgeId| -> Result<EdgeId, TransformError> {
        if std::mem::replace(&mut used[e], true) {
            return Err(TransformError::NotMiddleGraph(format!(
                "edge {e} lies in two blocks"
            )));
        }
        Ok(e)
    };
    let mut blocks = Vec::new();
    for center in mg.vertices().filter(|&v| roles[v] == VertexRole::V) {
        let inc = mg.incident(center);
        if inc.len() != 3 {
            return Err(TransformError::NotCubic {
                vertex: center,
                degree: inc.len(),
            });
        }
        let mut corners = [0; 3];
        let mut base_edges = [0; 3];
        let mut spokes = [0; 3];
        for (i, &e) in inc.iter().enumerate() {
            let c = mg.edges()[e].other(center);
            match roles[c] {
                VertexRole::E(k) => base_edges[i] = k,
                _ => {
                    return Err(TransformError::NotMiddleGraph(format!(
                        "v-vertex {center} is adjacent to non-e-vertex {c}"
                    )))
                }
            }
            corners[i] = c;
            spokes[i] = claim(e)?;
        }
        let mut rim = [0; 3];
        for i in 0..3 {
            let (a, b) = (corners[(i + 1) % 3], corners[(i + 2) % 3]);
            let e = mg.edge_between(a, b).ok_or_else(|| {
                TransformError::NotMiddleGraph(format!("corners {a} and {b} are not adjacent"))
            })?;
            rim[i] = claim(e)?;
        }
        blocks.push(K4Block {
            base_vertex: blocks.len(),
            base_edges,
            center,
            corners,
            spokes,
            rim,
        });
    }
    if let Some(e) = used.iter().position(|u| !u) {
        return Err(TransformError::NotMiddleGraph(format!(
            "edge {e} lies in no block"
        )));
    }
    Ok(blocks)
}
