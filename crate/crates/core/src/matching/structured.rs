//! The decomposition of the dimer coverings of `M(G)`, `G` connected cubic
//! with an even number of edges, into one family per dimer covering of the
//! line graph `L(G)`.
//!
//! `M(G)` splits into one K4 block per base vertex. A dimer covering `M_l`
//! of `L(G)` lies in the rims of those blocks, using at most one rim edge
//! per block. Each occupied block swaps its rim edge for the spoke opposite
//! it (the set `M_l'`); the remaining free blocks are vertex-disjoint and
//! each contributes one of its three perfect matchings independently. Every
//! check below is run on every family, and the families are audited
//! against a full enumeration of `𝒫ℳ(M(G))`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::transforms::{k4_decomposition, line_graph, middle_graph, K4Block, TransformError};

use super::{enumerate_pm, Matching};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("graph has parallel edges")]
    Multigraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph has an odd number of edges ({0})")]
    OddEdges(usize),
    #[error("{check} check fails for family {family}: {detail}")]
    Invariant {
        check: &'static str,
        family: usize,
        detail: String,
    },
}

/// One family `𝓜_l*` together with the data it is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredFamily {
    /// Position of `M_l` in the enumeration order of `𝒫ℳ(L(G))`.
    pub index: usize,
    /// `M_l` as edge ids of `L(G)`.
    pub line_matching: Matching,
    /// `M_l` embedded in `M(G)` (e-e edges).
    pub ml: Vec<EdgeId>,
    /// `M_l'`: the spoke opposite each rim edge of `M_l`.
    pub ml_prime: Vec<EdgeId>,
    /// Blocks (by base vertex) containing no edge of `M_l`.
    pub free_blocks: Vec<VertexId>,
    /// `M_l' ∪ M` for every dimer covering `M` of the free blocks.
    pub members: Vec<Matching>,
}

/// Serialized summary of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub l: usize,
    #[serde(rename = "Ml")]
    pub ml: Vec<EdgeId>,
    #[serde(rename = "Mlprime")]
    pub ml_prime: Vec<EdgeId>,
    pub free_blocks: Vec<VertexId>,
    pub family_size: usize,
}

impl StructuredFamily {
    pub fn report(&self) -> FamilyReport {
        FamilyReport {
            l: self.index,
            ml: self.ml.clone(),
            ml_prime: self.ml_prime.clone(),
            free_blocks: self.free_blocks.clone(),
            family_size: self.members.len(),
        }
    }
}

struct Context {
    n: usize,
    m: usize,
    lg: Graph,
    mg: Graph,
    blocks: Vec<K4Block>,
    /// For each rim edge of `M(G)`: owning block and the corner it faces.
    rim_owner: HashMap<EdgeId, (usize, usize)>,
    /// Line-graph edge to the same e-e edge in `M(G)`.
    line_to_middle: Vec<EdgeId>,
}

impl Context {
    fn new(g: &Graph) -> Result<Self, StructureError> {
        if g.is_multigraph() && g.has_parallel_edges() {
            return Err(StructureError::Multigraph);
        }
        if !g.is_connected() {
            return Err(StructureError::Disconnected);
        }
        if !g.is_regular(3) {
            return Err(StructureError::NotCubic);
        }
        let (n, m) = (g.vertex_count(), g.edge_count());
        if m % 2 == 1 {
            return Err(StructureError::OddEdges(m));
        }
        let lg = line_graph(g);
        let mg = middle_graph(g);
        let blocks = k4_decomposition(&mg)?;
        let mut rim_owner = HashMap::new();
        for (b, block) in blocks.iter().enumerate() {
            for (i, &e) in block.rim.iter().enumerate() {
                rim_owner.insert(e, (b, i));
            }
        }
        let line_to_middle = lg
            .edges()
            .iter()
            .map(|le| {
                mg.edge_between(n + le.u, n + le.v)
                    .expect("line-graph edge appears in the middle graph")
            })
            .collect();
        Ok(Context {
            n,
            m,
            lg,
            mg,
            blocks,
            rim_owner,
            line_to_middle,
        })
    }

    fn build_family(
        &self,
        index: usize,
        line_matching: Matching,
    ) -> Result<StructuredFamily, StructureError> {
        let fail = |check, detail: String| StructureError::Invariant {
            check,
            family: index,
            detail,
        };
        let ml: Vec<EdgeId> = line_matching
            .edges()
            .iter()
            .map(|&e| self.line_to_middle[e])
            .collect();

        // Exactly m/2 blocks hold one edge of M_l, none holds more.
        let mut occupant: Vec<Option<usize>> = vec![None; self.blocks.len()];
        for &e in &ml {
            let (b, i) = self.rim_owner[&e];
            if occupant[b].replace(i).is_some() {
                return Err(fail(
                    "occupied-blocks",
                    format!("block {b} holds two edges of M_l"),
                ));
            }
        }
        let occupied = occupant.iter().filter(|o| o.is_some()).count();
        if occupied != self.m / 2 {
            return Err(fail(
                "1",
                format!("{occupied} occupied blocks, expected {}", self.m / 2),
            ));
        }

        let ml_prime: Vec<EdgeId> = occupant
            .iter()
            .enumerate()
            .filter_map(|(b, o)| o.map(|i| self.blocks[b].spokes[i]))
            .collect();
        let free_blocks: Vec<usize> = (0..self.blocks.len())
            .filter(|&b| occupant[b].is_none())
            .collect();

        // The corners of a free block are covered by three
        // different edges of M_l, none of them inside the block.
        let mut cover: HashMap<VertexId, EdgeId> = HashMap::new();
        for &e in &ml {
            let edge = &self.mg.edges()[e];
            cover.insert(edge.u, e);
            cover.insert(edge.v, e);
        }
        for &b in &free_blocks {
            let block = &self.blocks[b];
            let mut seen = BTreeSet::new();
            for c in block.corners {
                let e = *cover.get(&c).ok_or_else(|| {
                    fail(
                        "free-corners",
                        format!("corner {c} of block {b} is uncovered"),
                    )
                })?;
                if block.rim.contains(&e) {
                    return Err(fail(
                        "2",
                        format!("edge {e} of M_l lies inside free block {b}"),
                    ));
                }
                seen.insert(e);
            }
            if seen.len() != 3 {
                return Err(fail(
                    "2",
                    format!("corners of block {b} share an edge of M_l"),
                ));
            }
        }

        // n/4 free blocks, pairwise vertex-disjoint.
        if free_blocks.len() != self.n - self.m / 2 {
            return Err(fail(
                "3",
                format!(
                    "{} free blocks, expected {}",
                    free_blocks.len(),
                    self.n - self.m / 2
                ),
            ));
        }
        let mut used = BTreeSet::new();
        for &b in &free_blocks {
            for v in self.blocks[b].vertices() {
                if !used.insert(v) {
                    return Err(fail("free-blocks", format!("free blocks share vertex {v}")));
                }
            }
        }

        // M_l' is a matching of M(G).
        let prime = Matching::new(ml_prime.clone());
        if !prime.is_matching_in(&self.mg) {
            return Err(fail("lifted-matching", "M_l' is not a matching".into()));
        }

        // Every member is a dimer covering of size (n+m)/2.
        let mut members = Vec::new();
        let mut choice = vec![0usize; free_blocks.len()];
        loop {
            let mut edges = ml_prime.clone();
            for (&b, &i) in free_blocks.iter().zip(&choice) {
                edges.push(self.blocks[b].spokes[i]);
                edges.push(self.blocks[b].rim[i]);
            }
            let member = Matching::new(edges);
            if member.len() != (self.n + self.m) / 2 || !member.is_perfect_in(&self.mg) {
                return Err(fail(
                    "5",
                    format!("member {:?} is not a dimer covering", member),
                ));
            }
            members.push(member);
            // Odometer over free-block choices, last block fastest.
            let Some(k) = (0..choice.len()).rev().find(|&k| choice[k] < 2) else {
                break;
            };
            choice[k] += 1;
            choice[k + 1..].iter_mut().for_each(|c| *c = 0);
        }

        let mut ml_sorted = ml;
        ml_sorted.sort_unstable();
        Ok(StructuredFamily {
            index,
            line_matching,
            ml: ml_sorted,
            ml_prime,
            free_blocks,
            members,
        })
    }

    /// Inverse direction: the dimer covering of `L(G)` whose family holds
    /// `m_star`.
    fn line_matching_of(&self, m_star: &Matching) -> Option<Matching> {
        let mut chosen = Vec::new();
        for block in &self.blocks {
            let spokes: Vec<usize> = (0..3)
                .filter(|&i| m_star.contains(block.spokes[i]))
                .collect();
            let rims = block.rim.iter().filter(|&&e| m_star.contains(e)).count();
            match (spokes.as_slice(), rims) {
                // Occupied block: its spoke came from the opposite rim edge.
                ([i], 0) => {
                    let rim = self.mg.edges()[block.rim[*i]];
                    let (e, f) = (rim.u - self.n, rim.v - self.n);
                    chosen.push(self.lg.edge_between(e, f)?);
                }
                // Free block covered by one of its own matchings.
                ([i], 1) if m_star.contains(block.rim[*i]) => {}
                _ => return None,
            }
        }
        let ml = Matching::new(chosen);
        ml.is_perfect_in(&self.lg).then_some(ml)
    }
}

/// Builds one family per dimer covering of `L(g)` and audits them:
/// every per-family invariant, pairwise disjointness, and that their union is
/// exactly the set of dimer coverings of `M(g)`.
pub fn structured_pm_families(g: &Graph) -> Result<Vec<StructuredFamily>, StructureError> {
    let ctx = Context::new(g)?;
    let families = enumerate_pm(&ctx.lg)
        .enumerate()
        .map(|(l, ml)| ctx.build_family(l, ml))
        .collect::<Result<Vec<_>, _>>()?;

    // Families are pairwise disjoint.
    let mut owner: HashMap<&Matching, usize> = HashMap::new();
    for f in &families {
        for member in &f.members {
            if let Some(prev) = owner.insert(member, f.index) {
                return Err(StructureError::Invariant {
                    check: "disjoint",
                    family: f.index,
                    detail: format!("member shared with family {prev}"),
                });
            }
        }
    }

    // Every dimer covering of M(G) lies in the family of the
    // line-graph covering recovered from it.
    let by_line: HashMap<&Matching, usize> = families
        .iter()
        .map(|f| (&f.line_matching, f.index))
        .collect();
    let mut total = 0usize;
    for m_star in enumerate_pm(&ctx.mg) {
        total += 1;
        let uncovered = |detail: String| StructureError::Invariant {
            check: "coverage",
            family: owner.get(&m_star).copied().unwrap_or(usize::MAX),
            detail,
        };
        let ml = ctx
            .line_matching_of(&m_star)
            .ok_or_else(|| uncovered(format!("{m_star:?} yields no dimer covering of L(G)")))?;
        let l = by_line[&ml];
        if owner.get(&m_star) != Some(&l) {
            return Err(uncovered(format!("{m_star:?} is not in family {l}")));
        }
    }
    if total != owner.len() {
        return Err(StructureError::Invariant {
            check: "coverage",
            family: usize::MAX,
            detail: format!("{} members but {total} dimer coverings", owner.len()),
        });
    }
    Ok(families)
}

/// The index of the family holding a dimer covering of `M(g)`, computed
/// from the block structure alone.
pub fn family_index_of(
    g: &Graph,
    families: &[StructuredFamily],
    m_star: &Matching,
) -> Result<Option<usize>, StructureError> {
    let ctx = Context::new(g)?;
    Ok(ctx.line_matching_of(m_star).and_then(|ml| {
        families
            .iter()
            .find(|f| f.line_matching == ml)
            .map(|f| f.index)
    }))
}
