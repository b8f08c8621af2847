//! Toroidal honeycomb, Kagomé and silicate lattices, a handful of named
//! cubic graphs, and seeded random corpora.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId, VertexRole, WeightSymbol};
use crate::transforms::{line_graph_with, middle_graph_with};

pub const DEFAULT_RETRY_BUDGET: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice size {rows}x{cols} is below the 2x2 minimum")]
    TooSmall { rows: usize, cols: usize },
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("a cubic graph needs an even vertex count of at least 4, got {0}")]
    BadCubicOrder(usize),
    #[error("no acceptable graph after {0} attempts")]
    RetryBudget(usize),
    #[error("the only connected graph on 2 vertices has an odd edge count")]
    NoEvenOrderTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeFamily {
    Honeycomb,
    Kagome,
    Silicate,
}

impl FromStr for LatticeFamily {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "honeycomb" => Ok(LatticeFamily::Honeycomb),
            "kagome" => Ok(LatticeFamily::Kagome),
            "silicate" => Ok(LatticeFamily::Silicate),
            _ => Err(LatticeError::UnknownName(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub family: LatticeFamily,
    pub rows: usize,
    pub cols: usize,
    pub weighted: bool,
}

impl LatticeSpec {
    pub fn new(family: LatticeFamily, rows: usize, cols: usize, weighted: bool) -> Self {
        LatticeSpec {
            family,
            rows,
            cols,
            weighted,
        }
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    fn check(&self) -> Result<(), LatticeError> {
        if self.rows < 2 || self.cols < 2 {
            return Err(LatticeError::TooSmall {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Graph, LatticeError> {
        match self.family {
            LatticeFamily::Honeycomb => honeycomb_torus(self),
            LatticeFamily::Kagome => kagome_torus(self),
            LatticeFamily::Silicate => silicate_torus(self),
        }
    }
}

fn with_unit_weights(mut g: Graph) -> Graph {
    for e in 0..g.edge_count() {
        g.set_weight(e, WeightSymbol::Unit).expect("edge exists");
    }
    g
}

/// Honeycomb torus with `2mn` vertices. `u(i,j)` has id `2(i*cols+j)`,
/// `w(i,j)` the next id. Edges per cell, in order: `u(i,j)-w(i,j)` (x),
/// `w(i,j)-u(i,j+1)` (y), `w(i,j)-u(i+1,j)` (z), indices mod the torus.
pub fn honeycomb_torus(spec: &LatticeSpec) -> Result<Graph, LatticeError> {
    spec.check()?;
    let (rows, cols) = (spec.rows, spec.cols);
    let u = |i: usize, j: usize| 2 * ((i % rows) * cols + (j % cols));
    let mut g = Graph::new();
    g.add_vertices(2 * rows * cols, VertexRole::Plain);
    for i in 0..rows {
        for j in 0..cols {
            let w = u(i, j) + 1;
            let weights = if spec.weighted {
                [WeightSymbol::X, WeightSymbol::Y, WeightSymbol::Z]
            } else {
                [WeightSymbol::Unit; 3]
            };
            for (to, weight) in [u(i, j), u(i, j + 1), u(i + 1, j)].into_iter().zip(weights) {
                g.add_edge(to, w, weight)
                    .expect("2x2 and larger tori are simple");
            }
        }
    }
    Ok(g)
}

fn directed_honeycomb(spec: &LatticeSpec) -> Result<Graph, LatticeError> {
    honeycomb_torus(&LatticeSpec {
        weighted: true,
        ..*spec
    })
}

fn pair_weight(e: &Edge, f: &Edge) -> WeightSymbol {
    e.weight
        .complement_pair(f.weight)
        .expect("adjacent honeycomb edges have distinct directions")
}

/// Kagomé torus: the line graph of the honeycomb torus. An edge joining
/// honeycomb edges of directions `{y,z}` weighs `a`, `{x,z}` weighs `b`,
/// `{x,y}` weighs `c`.
pub fn kagome_torus(spec: &LatticeSpec) -> Result<Graph, LatticeError> {
    let h = directed_honeycomb(spec)?;
    let k = line_graph_with(&h, pair_weight);
    Ok(if spec.weighted {
        k
    } else {
        with_unit_weights(k)
    })
}

/// Silicate torus: the middle graph of the honeycomb torus. A v-e edge
/// carries the direction of its e-vertex; an e-e edge carries the symbol of
/// the direction pair it joins, as in the Kagomé lattice. Every K4 block
/// then has dimer sum `ax + by + cz`.
pub fn silicate_torus(spec: &LatticeSpec) -> Result<Graph, LatticeError> {
    let h = directed_honeycomb(spec)?;
    let s = middle_graph_with(&h, pair_weight, |e| e.weight);
    Ok(if spec.weighted {
        s
    } else {
        with_unit_weights(s)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedCubic {
    K4,
    K33,
    Prism,
    Cube,
    Petersen,
    /// Two copies of K4 with one edge subdivided, joined at the
    /// subdivision vertices.
    Bridged10,
    /// Two copies of K3,3 with one edge subdivided, joined the same way.
    Bridged14,
}

impl NamedCubic {
    pub const ALL: [NamedCubic; 7] = [
        NamedCubic::K4,
        NamedCubic::K33,
        NamedCubic::Prism,
        NamedCubic::Cube,
        NamedCubic::Petersen,
        NamedCubic::Bridged10,
        NamedCubic::Bridged14,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedCubic::K4 => "K4",
            NamedCubic::K33 => "K33",
            NamedCubic::Prism => "prism",
            NamedCubic::Cube => "cube",
            NamedCubic::Petersen => "petersen",
            NamedCubic::Bridged10 => "bridged10",
            NamedCubic::Bridged14 => "bridged14",
        }
    }
}

impl fmt::Display for NamedCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedCubic {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedCubic::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LatticeError::UnknownName(s.to_string()))
    }
}

const K4_SUBDIVIDED: [(usize, usize); 7] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (4, 3)];
const K33_SUBDIVIDED: [(usize, usize); 10] = [
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 6),
    (6, 5),
];

/// Two copies of `side` (with `hub` its degree-2 vertex) plus the edge
/// joining the hubs; the joining edge is last.
fn bridged(side: &[(usize, usize)], order: usize, hub: usize) -> Vec<(usize, usize)> {
    let mut edges: Vec<_> = side.to_vec();
    edges.extend(side.iter().map(|&(u, v)| (u + order, v + order)));
    edges.push((hub, hub + order));
    edges
}

pub fn named_cubic(name: NamedCubic) -> Graph {
    let (n, edges): (usize, Vec<(usize, usize)>) = match name {
        NamedCubic::K4 => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        NamedCubic::K33 => (
            6,
            (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
        ),
        NamedCubic::Prism => (
            6,
            vec![
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        ),
        NamedCubic::Cube => (
            8,
            (0..8)
                .flat_map(|v: usize| {
                    (0..3)
                        .map(move |b| (v, v ^ (1 << b)))
                        .filter(|&(v, w)| v < w)
                })
                .collect(),
        ),
        NamedCubic::Petersen => (
            10,
            (0..5)
                .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
                .collect(),
        ),
        NamedCubic::Bridged10 => (10, bridged(&K4_SUBDIVIDED, 5, 4)),
        NamedCubic::Bridged14 => (14, bridged(&K33_SUBDIVIDED, 7, 6)),
    };
    Graph::from_edges(n, &edges).expect("named graphs are simple")
}

/// Configuration-model random cubic graph: the `3n` half-edges are shuffled
/// and paired consecutively; pairings with loops, parallel edges or more
/// than one component are rejected and redrawn. Deterministic in
/// `(n, seed)`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph, LatticeError> {
    random_cubic_with_budget(n, seed, DEFAULT_RETRY_BUDGET)
}

pub fn random_cubic_with_budget(n: usize, seed: u64, budget: usize) -> Result<Graph, LatticeError> {
    if n < 4 || n % 2 == 1 {
        return Err(LatticeError::BadCubicOrder(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<VertexId> = (0..n).flat_map(|v| [v; 3]).collect();
    'attempt: for _ in 0..budget {
        points.shuffle(&mut rng);
        let mut pairs: Vec<(VertexId, VertexId)> = points
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        pairs.sort_unstable();
        if pairs.iter().any(|&(u, v)| u == v) || pairs.windows(2).any(|w| w[0] == w[1]) {
            continue 'attempt;
        }
        let g = Graph::from_edges(n, &pairs).expect("pairs are simple");
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(LatticeError::RetryBudget(budget))
}

/// Random connected graph on `n` vertices with maximum degree at most
/// three: a random tree plus random chords. With `even_edges` the edge
/// count is adjusted to be even. Deterministic in `(n, seed)`.
pub fn random_subcubic(n: usize, seed: u64, even_edges: bool) -> Result<Graph, LatticeError> {
    if even_edges && n == 2 {
        return Err(LatticeError::NoEvenOrderTwo);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_RETRY_BUDGET {
        let mut g = Graph::new();
        g.add_vertices(n, VertexRole::Plain);
        let mut tree_edges = 0;
        for v in 1..n {
            let open: Vec<VertexId> = (0..v).filter(|&w| g.incident(w).len() < 3).collect();
            let w = *open
                .choose(&mut rng)
                .expect("a tree on v vertices has a free slot");
            g.add_edge(w, v, WeightSymbol::Unit)
                .expect("tree edge is new");
            tree_edges += 1;
        }
        let chords = rng.gen_range(0..=n / 2 + 1);
        for _ in 0..chords {
            let free = free_pairs(&g);
            if let Some(&(u, v)) = free.choose(&mut rng) {
                g.add_edge(u, v, WeightSymbol::Unit).expect("pair is free");
            }
        }
        if even_edges && g.edge_count() % 2 == 1 {
            let free = free_pairs(&g);
            if let Some(&(u, v)) = free.choose(&mut rng) {
                g.add_edge(u, v, WeightSymbol::Unit).expect("pair is free");
            } else if g.edge_count() > tree_edges {
                // Drop the last chord; the tree keeps the graph connected.
                let last: std::collections::BTreeSet<_> = [g.edge_count() - 1].into();
                g = g.without_edges(&last);
            } else {
                continue;
            }
        }
        return Ok(g);
    }
    Err(LatticeError::RetryBudget(DEFAULT_RETRY_BUDGET))
}

fn free_pairs(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let open: Vec<VertexId> = g.vertices().filter(|&v| g.incident(v).len() < 3).collect();
    let mut out = Vec::new();
    for (i, &u) in open.iter().enumerate() {
        for &v in &open[i + 1..] {
            if g.edge_between(u, v).is_none() {
                out.push((u, v));
            }
        }
    }
    out
}
