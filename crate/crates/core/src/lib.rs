//! Homology of clique complexes of preferential attachment graphs.
//!
//! The pipeline runs from [`pa_graph`] (sampling `G(T, δ, m)`) through
//! [`complex`] (flag complexes) and [`homology`] (GF(2) reduction) to the
//! per-node link estimators in [`estimators`]. [`theory`] predicts growth
//! rates exactly, [`census`] counts small patterns, and [`harness`] runs
//! seeded ensembles.

pub mod census;
pub mod complex;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod homology;
pub mod pa_graph;
pub mod scalar;
pub mod theory;

use num_rational::Ratio;

pub use complex::{SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use pa_graph::{generate, MultiDiGraph, PaParams, SimpleGraph};
pub use scalar::Scalar;
pub use theory::{CountSequence, GrowthPrediction, PatternGraph, Regime};

pub type Rational = Ratio<i64>;
pub type ExactPrediction = GrowthPrediction<Rational>;
pub type FloatPrediction = GrowthPrediction<f64>;
pub type ExactSequence = CountSequence<Rational>;
pub type FloatSequence = CountSequence<f64>;
