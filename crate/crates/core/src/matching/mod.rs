//! Exact perfect-matching machinery.
//!
//! Two independent backends compute the same sum over perfect matchings:
//! a branching enumerator and a frontier dynamic program. Both are generic
//! over the value type, so counts, weight polynomials and real-valued
//! partition functions share one code path per backend.

mod enumerate;
mod frontier;
mod structured;

use std::collections::BTreeSet;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, WeightSymbol};
use crate::{Count, Scalar, WeightPolynomial};

pub use enumerate::{enumerate_pm, PerfectMatchings};
pub use frontier::{frontier_width, DEFAULT_FRONTIER_CAP, MAX_FRONTIER_CAP};
pub use structured::{
    family_index_of, structured_pm_families, FamilyReport, StructureError, StructuredFamily,
};

/// Largest number of distinct symbols the DP backend accepts for weighted
/// sums.
pub const DP_SYMBOL_LIMIT: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("frontier width {width} exceeds the cap of {cap} vertices")]
    Capacity { width: usize, cap: usize },
    #[error("frontier DP refuses weighted sums over {used} symbols (limit {limit})")]
    SymbolBudget { used: usize, limit: usize },
}

/// Counting backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Enumerate,
    FrontierDp,
}

/// A set of edges, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching(Vec<EdgeId>);

impl Matching {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        Matching(edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// No two edges share an endpoint and no edge repeats.
    pub fn is_matching_in(&self, g: &Graph) -> bool {
        let mut covered = BTreeSet::new();
        self.0.windows(2).all(|w| w[0] != w[1])
            && self.0.iter().all(|&e| match g.edges().get(e) {
                Some(edge) => covered.insert(edge.u) && covered.insert(edge.v),
                None => false,
            })
    }

    /// A matching covering every vertex of `g`.
    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        self.is_matching_in(g) && 2 * self.len() == g.vertex_count()
    }

    /// Product of the edge weights as a polynomial.
    pub fn weight(&self, g: &Graph) -> WeightPolynomial {
        self.0.iter().fold(WeightPolynomial::one(), |acc, &e| {
            acc * WeightPolynomial::symbol(g.edges()[e].weight)
        })
    }
}

/// Sum over perfect matchings of the product of `value(weight)` over the
/// matched edges.
pub fn pm_sum<T, F>(g: &Graph, method: Method, cap: usize, value: F) -> Result<T, EngineError>
where
    T: Scalar,
    F: Fn(WeightSymbol) -> T,
{
    match method {
        Method::Enumerate => Ok(enumerate::sum(g, &value)),
        Method::FrontierDp => frontier::sum(g, cap, &value),
    }
}

/// Number of perfect matchings, with the default DP cap.
pub fn count_pm(g: &Graph, method: Method) -> Result<Count, EngineError> {
    count_pm_with_cap(g, method, DEFAULT_FRONTIER_CAP)
}

pub fn count_pm_with_cap(g: &Graph, method: Method, cap: usize) -> Result<Count, EngineError> {
    pm_sum(g, method, cap, |_| Count::one())
}

/// Sum of matching weights as a polynomial, via enumeration.
pub fn weighted_pm_sum(g: &Graph) -> WeightPolynomial {
    enumerate::sum(g, &WeightPolynomial::symbol)
}

/// Weighted sum with an explicit backend. The DP backend refuses graphs
/// using more than [`DP_SYMBOL_LIMIT`] distinct symbols.
pub fn weighted_pm_sum_with(
    g: &Graph,
    method: Method,
    cap: usize,
) -> Result<WeightPolynomial, EngineError> {
    if method == Method::FrontierDp {
        let used = g.weight_symbols().len();
        if used > DP_SYMBOL_LIMIT {
            return Err(EngineError::SymbolBudget {
                used,
                limit: DP_SYMBOL_LIMIT,
            });
        }
    }
    pm_sum(g, method, cap, WeightPolynomial::symbol)
}
