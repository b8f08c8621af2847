//! Labeled multigraphs with vertex roles and edge weight symbols.
//!
//! Vertices and edges carry dense integer ids assigned in insertion order.
//! Removal operations relabel densely and keep the relative order of the
//! survivors, so iteration order is reproducible.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// What a vertex stands for in a derived graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRole {
    Plain,
    /// An original vertex of the base graph inside a middle graph.
    V,
    /// A vertex standing for the base edge with the given id.
    E(EdgeId),
}

impl VertexRole {
    pub fn is_edge_vertex(self) -> bool {
        matches!(self, VertexRole::E(_))
    }
}

/// The closed weight alphabet. `Unit` is the multiplicative identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightSymbol {
    #[serde(rename = "1")]
    Unit,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "z")]
    Z,
}

impl WeightSymbol {
    /// The six non-unit symbols in exponent-vector order.
    pub const VARIABLES: [WeightSymbol; 6] = [
        WeightSymbol::A,
        WeightSymbol::B,
        WeightSymbol::C,
        WeightSymbol::X,
        WeightSymbol::Y,
        WeightSymbol::Z,
    ];

    /// Position in [`WeightSymbol::VARIABLES`], `None` for `Unit`.
    pub fn index(self) -> Option<usize> {
        WeightSymbol::VARIABLES.iter().position(|&s| s == self)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WeightSymbol::Unit => "1",
            WeightSymbol::A => "a",
            WeightSymbol::B => "b",
            WeightSymbol::C => "c",
            WeightSymbol::X => "x",
            WeightSymbol::Y => "y",
            WeightSymbol::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<WeightSymbol> {
        match s {
            "1" => Some(WeightSymbol::Unit),
            "a" => Some(WeightSymbol::A),
            "b" => Some(WeightSymbol::B),
            "c" => Some(WeightSymbol::C),
            "x" => Some(WeightSymbol::X),
            "y" => Some(WeightSymbol::Y),
            "z" => Some(WeightSymbol::Z),
            _ => None,
        }
    }

    /// Weight of the pair joining two lattice directions: the symbol
    /// opposite the third direction. `{y,z} -> a`, `{x,z} -> b`,
    /// `{x,y} -> c`. Returns `None` unless the arguments are two distinct
    /// directions among `x, y, z`.
    pub fn complement_pair(self, other: WeightSymbol) -> Option<WeightSymbol> {
        use WeightSymbol::*;
        match (self.min(other), self.max(other)) {
            (Y, Z) => Some(A),
            (X, Z) => Some(B),
            (X, Y) => Some(C),
            _ => None,
        }
    }
}

impl fmt::Display for WeightSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: WeightSymbol,
}

impl Edge {
    /// The endpoint opposite `w`. `w` must be an endpoint.
    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("loop at vertex {0} is not allowed")]
    Loop(VertexId),
    #[error("parallel edge {0}-{1} in a graph without the multigraph flag")]
    Parallel(VertexId, VertexId),
}

/// Undirected graph; parallel edges are allowed only with the multigraph
/// flag, loops never.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    roles: Vec<VertexRole>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
    multigraph: bool,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_multigraph() -> Self {
        Graph {
            multigraph: true,
            ..Self::default()
        }
    }

    /// Graph with `n` plain vertices and the given unit-weight edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        g.add_vertices(n, VertexRole::Plain);
        for &(u, v) in edges {
            g.add_edge(u, v, WeightSymbol::Unit)?;
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but with the multigraph flag set.
    pub fn multigraph_from_edges(
        n: usize,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new_multigraph();
        g.add_vertices(n, VertexRole::Plain);
        for &(u, v) in edges {
            g.add_edge(u, v, WeightSymbol::Unit)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, role: VertexRole) -> VertexId {
        self.roles.push(role);
        self.incidence.push(Vec::new());
        self.roles.len() - 1
    }

    pub fn add_vertices(&mut self, count: usize, role: VertexRole) {
        for _ in 0..count {
            self.add_vertex(role);
        }
    }

    pub fn add_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        weight: WeightSymbol,
    ) -> Result<EdgeId, GraphError> {
        for w in [u, v] {
            if w >= self.roles.len() {
                return Err(GraphError::UnknownVertex(w));
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if !self.multigraph && self.edge_between(u, v).is_some() {
            return Err(GraphError::Parallel(u, v));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, weight });
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn set_multigraph(&mut self, flag: bool) {
        self.multigraph = flag;
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.roles.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge, GraphError> {
        self.edges.get(e).ok_or(GraphError::UnknownEdge(e))
    }

    pub fn role(&self, v: VertexId) -> Result<VertexRole, GraphError> {
        self.roles
            .get(v)
            .copied()
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub fn roles(&self) -> &[VertexRole] {
        &self.roles
    }

    /// Edge ids incident to `v`, in edge-id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v]
            .iter()
            .map(move |&e| self.edges[e].other(v))
    }

    /// Number of edge endpoints at `v`; parallel edges count separately.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.incidence
            .get(v)
            .map(Vec::len)
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Every vertex has degree exactly `k` (vacuously true when empty).
    pub fn is_regular(&self, k: usize) -> bool {
        self.incidence.iter().all(|inc| inc.len() == k)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.incidence
            .get(u)?
            .iter()
            .copied()
            .find(|&e| self.edges[e].other(u) == v)
    }

    /// True when some pair of vertices is joined by more than one edge.
    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .any(|e| !seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    /// The distinct non-unit symbols carried by edges.
    pub fn weight_symbols(&self) -> BTreeSet<WeightSymbol> {
        self.edges
            .iter()
            .map(|e| e.weight)
            .filter(|&w| w != WeightSymbol::Unit)
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Edges whose removal increases the number of components.
    ///
    /// Iterative low-link DFS. The parent edge is skipped by id rather than
    /// by endpoint, so a parallel twin acts as a back edge and parallel
    /// edges are never reported.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut clock = 0;
        let mut out = BTreeSet::new();
        // (vertex, edge used to enter it, next incidence position)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            stack.push((root, None, 0));
            while let Some(frame) = stack.last_mut() {
                let (v, parent_edge, pos) = *frame;
                if let Some(&e) = self.incidence[v].get(pos) {
                    frame.2 += 1;
                    if Some(e) == parent_edge {
                        continue;
                    }
                    let w = self.edges[e].other(v);
                    if disc[w] == usize::MAX {
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.insert(e);
                        }
                    }
                }
            }
        }
        out
    }

    /// Copy of the graph without the listed edges; remaining edge ids are
    /// relabeled densely in their original order.
    pub fn without_edges(&self, removed: &BTreeSet<EdgeId>) -> Graph {
        let mut g = Graph {
            roles: self.roles.clone(),
            edges: Vec::new(),
            incidence: vec![Vec::new(); self.roles.len()],
            multigraph: self.multigraph,
        };
        for (id, e) in self.edges.iter().enumerate() {
            if !removed.contains(&id) {
                g.push_edge_unchecked(*e);
            }
        }
        g
    }

    /// Copy of the graph without the listed vertices and their incident
    /// edges; survivors are relabeled densely in order. Returns the old to
    /// new vertex map alongside.
    pub fn without_vertices(&self, removed: &BTreeSet<VertexId>) -> (Graph, Vec<Option<VertexId>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut g = Graph {
            multigraph: self.multigraph,
            ..Graph::default()
        };
        for v in self.vertices() {
            if !removed.contains(&v) {
                map[v] = Some(g.add_vertex(self.roles[v]));
            }
        }
        for e in &self.edges {
            if let (Some(u), Some(v)) = (map[e.u], map[e.v]) {
                g.push_edge_unchecked(Edge {
                    u,
                    v,
                    weight: e.weight,
                });
            }
        }
        (g, map)
    }

    fn push_edge_unchecked(&mut self, e: Edge) -> EdgeId {
        let id = self.edges.len();
        self.incidence[e.u].push(id);
        self.incidence[e.v].push(id);
        self.edges.push(e);
        id
    }

    /// Checks the structural invariants: endpoints exist, no loops, and no
    /// parallel edges unless the multigraph flag is set.
    pub fn validate(&self) -> Result<(), GraphError> {
        for e in &self.edges {
            for w in [e.u, e.v] {
                if w >= self.roles.len() {
                    return Err(GraphError::UnknownVertex(w));
                }
            }
            if e.u == e.v {
                return Err(GraphError::Loop(e.u));
            }
        }
        if !self.multigraph {
            let mut seen = BTreeSet::new();
            for e in &self.edges {
                let key = (e.u.min(e.v), e.u.max(e.v));
                if !seen.insert(key) {
                    return Err(GraphError::Parallel(key.0, key.1));
                }
            }
        }
        Ok(())
    }

    /// Replaces the weight of one edge.
    pub fn set_weight(&mut self, e: EdgeId, weight: WeightSymbol) -> Result<(), GraphError> {
        let edge = self.edges.get_mut(e).ok_or(GraphError::UnknownEdge(e))?;
        edge.weight = weight;
        Ok(())
    }

    /// Rebuilds a graph from raw parts, validating invariants.
    pub(crate) fn from_parts(
        roles: Vec<VertexRole>,
        edges: Vec<Edge>,
        multigraph: bool,
    ) -> Result<Graph, GraphError> {
        let mut g = Graph {
            incidence: vec![Vec::new(); roles.len()],
            roles,
            edges: Vec::new(),
            multigraph,
        };
        for e in edges {
            for w in [e.u, e.v] {
                if w >= g.roles.len() {
                    return Err(GraphError::UnknownVertex(w));
                }
            }
            g.push_edge_unchecked(e);
        }
        g.validate()?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn degrees() {
        let g = k4();
        assert!(g.vertices().all(|v| g.degree(v).unwrap() == 3));
        assert_eq!(path(3).degree(1).unwrap(), 2);
        let c2 = Graph::multigraph_from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(c2.degree(0).unwrap(), 2);
        assert_eq!(c2.degree(1).unwrap(), 2);
        assert_eq!(k4().degree(9), Err(GraphError::UnknownVertex(9)));
    }

    #[test]
    fn construction_errors() {
        let mut g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(
            g.add_edge(0, 0, WeightSymbol::Unit),
            Err(GraphError::Loop(0))
        );
        assert_eq!(
            g.add_edge(1, 0, WeightSymbol::Unit),
            Err(GraphError::Parallel(1, 0))
        );
        assert_eq!(
            g.add_edge(0, 5, WeightSymbol::Unit),
            Err(GraphError::UnknownVertex(5))
        );
        g.set_multigraph(true);
        assert!(g.add_edge(1, 0, WeightSymbol::X).is_ok());
        assert!(g.has_parallel_edges());
    }

    #[test]
    fn components_of_disjoint_union() {
        assert_eq!(k4().components(), vec![vec![0, 1, 2, 3]]);
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend(edges.clone().iter().map(|&(u, v)| (u + 4, v + 4)));
        let g = Graph::from_edges(8, &edges).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 4));
        assert_eq!(Graph::from_edges(3, &[]).unwrap().components().len(), 3);
        assert!(!Graph::new().is_connected());
    }

    #[test]
    fn bridges_of_path_and_cycle() {
        assert_eq!(path(4).bridges(), (0..3).collect());
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.bridges().is_empty());
        // A pendant hanging off a triangle.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(g.bridges(), [3].into_iter().collect());
    }

    #[test]
    fn parallel_edges_are_never_bridges() {
        let g = Graph::multigraph_from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.bridges(), [2].into_iter().collect());
    }

    #[test]
    fn vertex_removal_relabels_in_order() {
        let g = path(4);
        let (h, map) = g.without_vertices(&[1].into_iter().collect());
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
        assert_eq!(h.edge_count(), 1);
        assert_eq!((h.edges()[0].u, h.edges()[0].v), (1, 2));
    }

    #[test]
    fn complement_pairs() {
        use WeightSymbol::*;
        assert_eq!(Y.complement_pair(Z), Some(A));
        assert_eq!(Z.complement_pair(X), Some(B));
        assert_eq!(X.complement_pair(Y), Some(C));
        assert_eq!(X.complement_pair(X), None);
        assert_eq!(A.complement_pair(X), None);
    }
}
