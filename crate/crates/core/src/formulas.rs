//! Closed-form dimer counts and the dispatcher that picks one for an
//! arbitrary connected graph of maximum degree three.
//!
//! All arithmetic is exact: powers of two and three as big integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError};
use crate::io::polynomial_to_value;
use crate::poly::Monomial;
use crate::transforms::{reduce_to_base, BaseClass, ReductionTrace, TransformError};
use crate::{Count, WeightPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has parallel edges")]
    NotSimple,
    #[error("maximum degree {0} exceeds 3")]
    MaxDegree(usize),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("edge count {0} is odd, an even count is required")]
    OddEdges(usize),
    #[error("edge count {0} is even, an odd count is required")]
    EvenEdges(usize),
    #[error("lattice has {0} cells, an even number is required")]
    OddCells(usize),
    #[error("lattice size {0}x{1} is below the 2x2 minimum")]
    TooSmall(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    /// An identity that holds for every valid input failed; indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Which closed form produced a value. The serialized names are the wire
/// tags of the prediction JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredictionTag {
    /// Line graph of a connected graph, max degree 3, even size.
    #[serde(rename = "Thm1.1")]
    LineGraph,
    /// Middle graph of a connected cubic graph with an even edge count.
    #[serde(rename = "Thm1.4")]
    MiddleCubicEven,
    /// Cubic graph, odd edge count, minus a non-bridge edge.
    #[serde(rename = "Thm1.5")]
    MinusNonBridge,
    /// Minus a bridge whose sides both have an even edge count.
    #[serde(rename = "Thm1.6a")]
    MinusBridgeEvenSides,
    /// Minus a bridge whose sides both have an odd edge count.
    #[serde(rename = "Thm1.6b")]
    MinusBridgeOddSides,
    #[serde(rename = "Eq3.1")]
    KagomeCount,
    #[serde(rename = "Eq3.2")]
    KagomeWeighted,
    #[serde(rename = "Thm3.1")]
    SilicateWeighted,
    #[serde(rename = "Remark3.2")]
    SilicateCount,
    #[serde(rename = "base-C2")]
    BaseC2,
    #[serde(rename = "base-empty")]
    BaseEmpty,
    #[serde(rename = "base-K1")]
    BaseK1,
    #[serde(rename = "parity-zero")]
    ParityZero,
    #[serde(rename = "not-covered")]
    NotCovered,
}

impl PredictionTag {
    pub fn as_str(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredictionValue {
    Count(Count),
    Polynomial(WeightPolynomial),
}

/// A predicted value with the closed form that produced it. `not-covered`
/// results carry no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionResult {
    pub value: Option<PredictionValue>,
    pub tag: PredictionTag,
    pub trace: Option<ReductionTrace>,
}

impl PredictionResult {
    fn count(value: Count, tag: PredictionTag) -> Self {
        PredictionResult {
            value: Some(PredictionValue::Count(value)),
            tag,
            trace: None,
        }
    }

    pub fn as_count(&self) -> Option<&Count> {
        match &self.value {
            Some(PredictionValue::Count(c)) => Some(c),
            _ => None,
        }
    }

    /// `{"value":"288","tag":"Thm1.4","trace":[...]}`; polynomial values
    /// use the polynomial JSON layout, missing values are `null`. The trace
    /// key is present only when a reduction ran, with its terminal class
    /// under `"base"`.
    pub fn to_json(&self) -> serde_json::Value {
        let value = match &self.value {
            None => serde_json::Value::Null,
            Some(PredictionValue::Count(c)) => json!(c.to_string()),
            Some(PredictionValue::Polynomial(p)) => polynomial_to_value(p),
        };
        let mut doc = json!({ "value": value, "tag": self.tag });
        if let Some(trace) = &self.trace {
            doc["trace"] = json!(trace.steps);
            doc["base"] = json!(trace.base);
        }
        doc
    }
}

/// `2^a 3^b`.
pub fn pow23(a: u32, b: u32) -> Count {
    BigUint::from(2u32).pow(a) * BigUint::from(3u32).pow(b)
}

fn require_connected_simple(g: &Graph) -> Result<(), FormulaError> {
    if !g.is_connected() {
        return Err(FormulaError::NotConnected);
    }
    if g.has_parallel_edges() {
        return Err(FormulaError::NotSimple);
    }
    Ok(())
}

fn require_cubic(g: &Graph) -> Result<(usize, usize), FormulaError> {
    require_connected_simple(g)?;
    if !g.is_regular(3) {
        return Err(FormulaError::NotCubic);
    }
    Ok((g.vertex_count(), g.edge_count()))
}

/// Dimer coverings of the line graph: `2^(m-n+1)`.
pub fn pm_line_formula(g: &Graph) -> Result<Count, FormulaError> {
    require_connected_simple(g)?;
    let max = g.max_degree();
    if max > 3 {
        return Err(FormulaError::MaxDegree(max));
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m % 2 == 1 {
        return Err(FormulaError::OddEdges(m));
    }
    // Connected, so m >= n - 1.
    Ok(pow23((m + 1 - n) as u32, 0))
}

/// Dimer coverings of `M(g)` for connected cubic `g` with `m` even:
/// `2^(m-n+1) 3^((2n-m)/2)`, equal to `2^(n/2+1) 3^(n/4)`.
pub fn pm_middle_cubic_even(g: &Graph) -> Result<Count, FormulaError> {
    let (n, m) = require_cubic(g)?;
    if m % 2 == 1 {
        return Err(FormulaError::OddEdges(m));
    }
    let by_size = pow23((m + 1 - n) as u32, ((2 * n - m) / 2) as u32);
    let by_order = pow23((n / 2 + 1) as u32, (n / 4) as u32);
    if by_size != by_order {
        return Err(FormulaError::Inconsistent(format!(
            "exponent forms disagree for n={n}, m={m}"
        )));
    }
    Ok(by_order)
}

/// Dimer coverings of `M(g - e)` for connected cubic `g` with `m` odd.
///
/// Non-bridge: `2^(n/2) 3^((n-2)/4)`. Bridge: with `g - e = G1 ∪ G2`, both
/// sides even gives 0 and both sides odd gives `2^(n/2+1) 3^((n-2)/4)`.
/// Each side must satisfy `3(n_i - 1) + 2 = 2 m_i` with `n_i` odd.
pub fn pm_middle_cubic_minus_edge(g: &Graph, e: EdgeId) -> Result<PredictionResult, FormulaError> {
    let (n, m) = require_cubic(g)?;
    g.edge(e)?;
    if m % 2 == 0 {
        return Err(FormulaError::EvenEdges(m));
    }
    let twos = (n / 2) as u32;
    let threes = ((n - 2) / 4) as u32;
    if !g.bridges().contains(&e) {
        return Ok(PredictionResult::count(
            pow23(twos, threes),
            PredictionTag::MinusNonBridge,
        ));
    }
    let split = g.without_edges(&[e].into());
    let sides = split.components();
    if sides.len() != 2 {
        return Err(FormulaError::Inconsistent(format!(
            "removing bridge {e} left {} components",
            sides.len()
        )));
    }
    let mut side_edges = [0usize; 2];
    for (i, side) in sides.iter().enumerate() {
        let (ni, mi) = (
            side.len(),
            split
                .edges()
                .iter()
                .filter(|edge| side.binary_search(&edge.u).is_ok())
                .count(),
        );
        if 3 * (ni - 1) + 2 != 2 * mi || ni % 2 == 0 {
            return Err(FormulaError::Inconsistent(format!(
                "side with {ni} vertices and {mi} edges violates 3(n-1)+2=2m"
            )));
        }
        side_edges[i] = mi;
    }
    match (side_edges[0] % 2, side_edges[1] % 2) {
        (0, 0) => Ok(PredictionResult::count(
            Count::zero(),
            PredictionTag::MinusBridgeEvenSides,
        )),
        (1, 1) => Ok(PredictionResult::count(
            pow23(twos + 1, threes),
            PredictionTag::MinusBridgeOddSides,
        )),
        _ => Err(FormulaError::Inconsistent(format!(
            "sides of bridge {e} have edge counts of mixed parity {side_edges:?}"
        ))),
    }
}

/// Predicts the dimer count of `M(h)` for connected `h` with maximum
/// degree at most three by reducing `h` to a base graph and dispatching on
/// it. Bases outside the simple cubic case come back `not-covered`.
pub fn predict_pm_middle(h: &Graph) -> Result<PredictionResult, FormulaError> {
    let max = h.max_degree();
    if max > 3 {
        return Err(FormulaError::MaxDegree(max));
    }
    if !h.is_empty() && !h.is_connected() {
        return Err(FormulaError::NotConnected);
    }
    if (h.vertex_count() + h.edge_count()) % 2 == 1 {
        return Ok(PredictionResult::count(
            Count::zero(),
            PredictionTag::ParityZero,
        ));
    }
    let (base, trace) = reduce_to_base(h)?;
    let (value, tag) = match trace.base {
        BaseClass::CubicSimple => (
            Some(pm_middle_cubic_even(&base)?),
            PredictionTag::MiddleCubicEven,
        ),
        BaseClass::C2 => (Some(Count::from(2u32)), PredictionTag::BaseC2),
        BaseClass::Empty => (Some(Count::one()), PredictionTag::BaseEmpty),
        BaseClass::K1 => (Some(Count::zero()), PredictionTag::BaseK1),
        BaseClass::CubicMultigraph | BaseClass::Irreducible => (None, PredictionTag::NotCovered),
    };
    Ok(PredictionResult {
        value: value.map(PredictionValue::Count),
        tag,
        trace: Some(trace),
    })
}

fn check_lattice(n: usize, m: usize) -> Result<u32, FormulaError> {
    if n < 2 || m < 2 {
        return Err(FormulaError::TooSmall(n, m));
    }
    if (n * m) % 2 == 1 {
        return Err(FormulaError::OddCells(n * m));
    }
    Ok((n * m) as u32)
}

/// Kagomé torus: `2^(mn+1)`.
pub fn pm_kagome_formula(n: usize, m: usize) -> Result<Count, FormulaError> {
    let cells = check_lattice(n, m)?;
    Ok(pow23(cells + 1, 0))
}

/// Weighted Kagomé torus: `2^(mn+1) (abc)^(mn/2)`.
pub fn pm_kagome_weighted(n: usize, m: usize) -> Result<WeightPolynomial, FormulaError> {
    let cells = check_lattice(n, m)?;
    let half = cells / 2;
    Ok(WeightPolynomial::monomial(
        Monomial([half, half, half, 0, 0, 0]),
        pow23(cells + 1, 0),
    ))
}

/// Weighted silicate torus: `2^(mn+1) (xyz)^(mn/2) (ax+by+cz)^(mn/2)`,
/// fully expanded.
pub fn pm_silicate_weighted(n: usize, m: usize) -> Result<WeightPolynomial, FormulaError> {
    use crate::graph::WeightSymbol::*;
    let cells = check_lattice(n, m)?;
    let half = cells / 2;
    let sym = WeightPolynomial::symbol;
    let block = sym(A) * sym(X) + sym(B) * sym(Y) + sym(C) * sym(Z);
    let prefix =
        WeightPolynomial::monomial(Monomial([0, 0, 0, half, half, half]), pow23(cells + 1, 0));
    Ok(prefix * block.pow(half as u64))
}

/// Silicate torus: `2^(mn+1) 3^(mn/2)`.
pub fn pm_silicate_count(n: usize, m: usize) -> Result<Count, FormulaError> {
    let cells = check_lattice(n, m)?;
    Ok(pow23(cells + 1, cells / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{named_cubic, NamedCubic};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn line_formula() {
        assert_eq!(
            pm_line_formula(&named_cubic(NamedCubic::K4)).unwrap(),
            8u32.into()
        );
        assert_eq!(
            pm_line_formula(&named_cubic(NamedCubic::Cube)).unwrap(),
            32u32.into()
        );
        assert_eq!(
            pm_line_formula(&named_cubic(NamedCubic::Petersen)),
            Err(FormulaError::OddEdges(15))
        );
        let star4 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(pm_line_formula(&star4), Err(FormulaError::MaxDegree(4)));
    }

    #[test]
    fn middle_cubic_even() {
        assert_eq!(
            pm_middle_cubic_even(&named_cubic(NamedCubic::K4)).unwrap(),
            24u32.into()
        );
        assert_eq!(
            pm_middle_cubic_even(&named_cubic(NamedCubic::Cube)).unwrap(),
            288u32.into()
        );
        assert_eq!(
            pm_middle_cubic_even(&named_cubic(NamedCubic::K33)),
            Err(FormulaError::OddEdges(9))
        );
        assert_eq!(pm_middle_cubic_even(&cycle(4)), Err(FormulaError::NotCubic));
    }

    #[test]
    fn exponent_forms_agree() {
        for n in (4..=400).step_by(4) {
            let m = 3 * n / 2;
            assert_eq!(
                pow23((m - n + 1) as u32, ((2 * n - m) / 2) as u32),
                pow23((n / 2 + 1) as u32, (n / 4) as u32)
            );
        }
    }

    #[test]
    fn minus_edge_dispatch() {
        let p = named_cubic(NamedCubic::Petersen);
        for e in 0..15 {
            let r = pm_middle_cubic_minus_edge(&p, e).unwrap();
            assert_eq!(r.tag, PredictionTag::MinusNonBridge);
            assert_eq!(r.as_count().unwrap(), &Count::from(288u32));
        }
        let b10 = named_cubic(NamedCubic::Bridged10);
        let r = pm_middle_cubic_minus_edge(&b10, 14).unwrap();
        assert_eq!(
            (r.tag, r.as_count().unwrap().clone()),
            (PredictionTag::MinusBridgeOddSides, 576u32.into())
        );
        let b14 = named_cubic(NamedCubic::Bridged14);
        let r = pm_middle_cubic_minus_edge(&b14, 20).unwrap();
        assert_eq!(
            (r.tag, r.as_count().unwrap().clone()),
            (PredictionTag::MinusBridgeEvenSides, 0u32.into())
        );
        assert_eq!(
            pm_middle_cubic_minus_edge(&named_cubic(NamedCubic::K4), 0),
            Err(FormulaError::EvenEdges(6))
        );
        assert_eq!(
            pm_middle_cubic_minus_edge(&p, 99),
            Err(FormulaError::Graph(GraphError::UnknownEdge(99)))
        );
    }

    #[test]
    fn predict_examples() {
        let r = predict_pm_middle(&cycle(5)).unwrap();
        assert_eq!(
            (r.tag, r.as_count().unwrap().clone()),
            (PredictionTag::BaseC2, 2u32.into())
        );
        let sub = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (4, 3)])
            .unwrap();
        let r = predict_pm_middle(&sub).unwrap();
        assert_eq!(
            (r.tag, r.as_count().unwrap().clone()),
            (PredictionTag::MiddleCubicEven, 24u32.into())
        );
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = predict_pm_middle(&p4).unwrap();
        assert_eq!(
            (r.tag, r.as_count().unwrap().clone()),
            (PredictionTag::ParityZero, 0u32.into())
        );
        assert!(r.trace.is_none());
        let r = predict_pm_middle(&Graph::new()).unwrap();
        assert_eq!(
            (r.tag, r.as_count().unwrap().clone()),
            (PredictionTag::BaseEmpty, 1u32.into())
        );
    }

    #[test]
    fn lattice_formulas() {
        assert_eq!(pm_kagome_formula(2, 2).unwrap(), 32u32.into());
        assert_eq!(pm_kagome_formula(2, 3).unwrap(), 128u32.into());
        let w = pm_kagome_weighted(2, 2).unwrap();
        assert_eq!(w.term_count(), 1);
        assert_eq!(w.coefficient(&Monomial([2, 2, 2, 0, 0, 0])), 32u32.into());
        assert_eq!(pm_silicate_count(2, 2).unwrap(), 288u32.into());
        let s = pm_silicate_weighted(2, 2).unwrap();
        assert_eq!(s.term_count(), 6);
        assert_eq!(s.eval_at_one(), 288u32.into());
        assert_eq!(s.coefficient(&Monomial([2, 0, 0, 4, 2, 2])), 32u32.into());
        assert_eq!(s.coefficient(&Monomial([1, 1, 0, 3, 3, 2])), 64u32.into());
        assert_eq!(pm_silicate_count(3, 3), Err(FormulaError::OddCells(9)));
        assert_eq!(pm_kagome_formula(1, 4), Err(FormulaError::TooSmall(1, 4)));
    }

    #[test]
    fn prediction_json() {
        let r = predict_pm_middle(&cycle(3)).unwrap();
        let doc = r.to_json();
        assert_eq!(doc["value"], "2");
        assert_eq!(doc["tag"], "base-C2");
        assert_eq!(doc["base"], "C2");
        assert_eq!(doc["trace"].as_array().unwrap().len(), 1);
        assert_eq!(PredictionTag::MiddleCubicEven.as_str(), "Thm1.4");
        let nc = PredictionResult {
            value: None,
            tag: PredictionTag::NotCovered,
            trace: None,
        };
        assert!(nc.to_json()["value"].is_null());
    }
}
