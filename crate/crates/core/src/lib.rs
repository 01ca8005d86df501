//! Exact arithmetic for continuous polynomial valuations on rational polytopes.

pub mod acceptance;
pub mod error;
pub mod filtration;
pub mod geometry;
pub mod integration;
pub mod interval;
pub mod invariant;
pub mod json;
pub mod linalg;
pub mod mixed;
pub mod polynomial;
pub mod random;
pub mod scalar;
pub mod valuation;

pub use error::{Error, Result};
pub use geometry::{LinearMap, Point, Polytope, Triangulation, TriangulationMethod};
pub use scalar::{Rational, Scalar};

/// Polytope with exact rational coordinates.
pub type QPolytope = Polytope<Rational>;
/// Polytope with double-precision coordinates.
pub type FPolytope = Polytope<f64>;
/// Linear map with exact rational entries.
pub type QLinearMap = LinearMap<Rational>;
