//! Planar primitives with a single tolerance policy.

mod piece;
mod point;
mod polygon;
mod polyline;
mod region;
mod tolerance;
pub mod triangulate;

pub use piece::{arc_chord_count, sagitta, BoundaryPiece, Orientation};
pub use point::{distance, wrap_angle, Point};
pub use polygon::{
    clip_convex, convex_hull, convex_hull_indices, convex_intersection_area, point_set_diameter,
    point_set_diameter_pair, polygon_diameter, shoelace, ConvexPolygon,
};
pub use polyline::{point_segment_distance, segment_distance, segments_cross, Polyline};
pub use region::{polygon_area, Diameter, PieceLoop};
pub use tolerance::Tolerance;

use crate::error::Result;
use crate::scalar::Scalar;

/// Discretizes an arc piece into a polyline whose chords have sagitta at most `max_sagitta`.
pub fn discretize_arc<T: Scalar>(arc: &BoundaryPiece<T>, max_sagitta: T) -> Result<Polyline<T>> {
    Ok(Polyline::new_unchecked(arc.discretize(max_sagitta)?))
}
