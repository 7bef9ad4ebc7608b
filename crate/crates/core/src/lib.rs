//! Exact tools for colorings of the max-norm plane that avoid monochromatic
//! isometric copies of a triangle.
//!
//! The geometric core is generic over an exact [`Scalar`] type. The
//! aliases at the crate root fix it to arbitrary-precision rationals, which
//! is what the command-line front end uses.

pub mod deduction;
pub mod density;
pub mod format;
pub mod geometry;
pub mod hypergraph;
pub mod line;
pub mod plane;
pub mod scalar;

pub use geometry::{enumerate_copies, is_copy, lemma1_filter, linf_dist, scale_instance, two_distance_locus};
pub use geometry::{GeometryError, TriangleClass};
pub use scalar::{parse_scalar, ParseScalarError, Scalar};

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;
/// Fixed-width rational for callers who control magnitudes.
pub type Rational64 = num_rational::Ratio<i64>;

pub type Point = geometry::Point<Rational>;
pub type Triangle = geometry::Triangle<Rational>;
pub type PointSet = geometry::PointSet<Rational>;
pub type LineColoring = line::LineColoring<Rational>;
pub type PlaneColoring = plane::PlaneColoring<Rational>;
pub type CopyHypergraph = hypergraph::CopyHypergraph<Rational>;
