//! Maximum relative diameter of k-partitions and k-subdivisions of
//! rotationally symmetric planar convex bodies.
//!
//! Every geometric type is generic over [`Scalar`] (`f32` or `f64`); the
//! crate root re-exports `f64` aliases for convenience.

// `!(x > 0)` style guards deliberately reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod body;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod optimizer;
pub mod render;
pub mod repro;
pub mod scalar;
pub mod subdivision;
pub mod tolerances;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Point = geometry::Point<f64>;
pub type Tolerance = geometry::Tolerance<f64>;
pub type BoundaryPiece = geometry::BoundaryPiece<f64>;
pub type Polyline = geometry::Polyline<f64>;
pub type ConvexPolygon = geometry::ConvexPolygon<f64>;
pub type PieceLoop = geometry::PieceLoop<f64>;
pub type ConvexBody = body::ConvexBody<f64>;
pub type BodyMetrics = body::BodyMetrics<f64>;
pub type KPartition = subdivision::KPartition<f64>;
pub type KSubdivision = subdivision::KSubdivision<f64>;
pub type DiameterWitness = subdivision::DiameterWitness<f64>;
pub type HexLattice = constructions::HexLattice<f64>;
pub type BoundReport = bounds::BoundReport<f64>;
pub type SearchConfig = optimizer::SearchConfig<f64>;
pub type SearchResult = optimizer::SearchResult<f64>;

/// JSON schemas of the interchange formats.
pub mod schemas {
    pub const BODY: &str = include_str!("../schemas/body.schema.json");
    pub const PARTITION: &str = include_str!("../schemas/partition.schema.json");
    pub const SUBDIVISION: &str = include_str!("../schemas/subdivision.schema.json");
}
