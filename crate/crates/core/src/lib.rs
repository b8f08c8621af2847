//! Exact dimer-covering (perfect matching) counts for line graphs and
//! middle graphs of graphs with maximum degree three, with closed forms for
//! cubic graphs and the Kagomé and silicate tori.

pub mod formulas;
pub mod graph;
pub mod io;
pub mod lattices;
pub mod matching;
pub mod poly;
pub mod transforms;
pub mod verify;

use num_traits::{One, Zero};

/// Coefficient ring for matching sums.
pub trait Scalar: Clone + Zero + One {}

impl<T: Clone + Zero + One> Scalar for T {}

/// Exact matching counts.
pub type Count = num_bigint::BigUint;

/// Generating polynomials over the weight symbols with exact coefficients.
pub type WeightPolynomial = poly::Polynomial<Count>;

/// Floating-point counterpart, for quick estimates.
pub type RealPolynomial = poly::Polynomial<f64>;

pub use formulas::{FormulaError, PredictionResult, PredictionTag, PredictionValue};
pub use graph::{Edge, EdgeId, Graph, GraphError, VertexId, VertexRole, WeightSymbol};
pub use matching::{count_pm, weighted_pm_sum, EngineError, Matching, Method};
pub use poly::{Monomial, Polynomial};
pub use transforms::{line_graph, middle_graph, TransformError};
