use serde::{Deserialize, Serialize};

use super::KSubdivision;
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{
    distance, segment_distance, BoundaryPiece, PieceLoop, Point, Polyline, Tolerance,
};
use crate::scalar::{cmp, Scalar};

/// k polylines from a common interior point to k distinct boundary points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "PartitionJson<T>",
    into = "PartitionJson<T>",
    bound = "T: Scalar"
)]
pub struct KPartition<T: Scalar> {
    body: ConvexBody<T>,
    common_point: Point<T>,
    curves: Vec<Polyline<T>>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
struct PartitionJson<T: Scalar> {
    body: ConvexBody<T>,
    common_point: Point<T>,
    curves: Vec<Polyline<T>>,
}

impl<T: Scalar> TryFrom<PartitionJson<T>> for KPartition<T> {
    type Error = Error;
    fn try_from(j: PartitionJson<T>) -> Result<Self> {
        KPartition::new(j.body, j.common_point, j.curves, &Tolerance::default())
    }
}

impl<T: Scalar> From<KPartition<T>> for PartitionJson<T> {
    fn from(p: KPartition<T>) -> Self {
        PartitionJson {
            body: p.body,
            common_point: p.common_point,
            curves: p.curves,
        }
    }
}

impl<T: Scalar> KPartition<T> {
    /// Validates: `c` strictly interior; every curve simple, starting at `c`,
    /// with interior vertices strictly inside the body and its last vertex on
    /// the boundary; endpoints distinct; curves disjoint away from `c`.
    pub fn new(
        body: ConvexBody<T>,
        common_point: Point<T>,
        curves: Vec<Polyline<T>>,
        tol: &Tolerance<T>,
    ) -> Result<Self> {
        let eps = tol.eps_geom;
        if curves.len() < 2 {
            return Err(Error::InvalidPartition(
                "a partition needs at least two curves".into(),
            ));
        }
        if !body.contains_interior(common_point, eps) {
            return Err(Error::InvalidPartition(
                "common point must be interior".into(),
            ));
        }
        for (i, c) in curves.iter().enumerate() {
            c.validate(tol)
                .map_err(|e| Error::InvalidPartition(format!("curve {i}: {e}")))?;
            if distance(c.first(), common_point) > eps {
                return Err(Error::InvalidPartition(format!(
                    "curve {i} does not start at the common point"
                )));
            }
            let v = c.vertices();
            for (j, &p) in v.iter().enumerate().take(v.len() - 1).skip(1) {
                if !body.contains_interior(p, eps) {
                    return Err(Error::InvalidPartition(format!(
                        "curve {i} vertex {j} is not strictly inside the body"
                    )));
                }
            }
            if body.distance_to_boundary(c.last()) > eps {
                return Err(Error::InvalidPartition(format!(
                    "curve {i} does not end on the boundary"
                )));
            }
        }
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                if distance(curves[i].last(), curves[j].last()) <= eps {
                    return Err(Error::EndpointCollision(i, j));
                }
                if curves_meet(&curves[i], &curves[j], eps) {
                    return Err(Error::CrossingCurves(i, j));
                }
            }
        }
        Ok(KPartition {
            body,
            common_point,
            curves,
        })
    }

    pub fn body(&self) -> &ConvexBody<T> {
        &self.body
    }

    pub fn common_point(&self) -> Point<T> {
        self.common_point
    }

    pub fn curves(&self) -> &[Polyline<T>] {
        &self.curves
    }

    pub fn k(&self) -> usize {
        self.curves.len()
    }

    /// Boundary endpoints in curve order.
    pub fn endpoints(&self) -> Vec<Point<T>> {
        self.curves.iter().map(|c| c.last()).collect()
    }

    /// Curve indices sorted by the polar angle of their endpoint around the
    /// body center (ties by index).
    pub fn angular_order(&self) -> Vec<usize> {
        let c = self.body.center();
        let ang: Vec<T> = self
            .curves
            .iter()
            .map(|cv| crate::geometry::wrap_angle((cv.last() - c).angle()))
            .collect();
        let mut idx: Vec<usize> = (0..self.curves.len()).collect();
        idx.sort_by(|&i, &j| cmp(&ang[i], &ang[j]).then(i.cmp(&j)));
        idx
    }

    /// Image under a similarity transform.
    pub fn similarity(&self, rotation: T, scale: T, translate: Point<T>) -> Self {
        let f = |p: Point<T>| translate + p.rotate(rotation) * scale;
        KPartition {
            body: self.body.similarity(rotation, scale, translate),
            common_point: f(self.common_point),
            curves: self.curves.iter().map(|c| c.map(f)).collect(),
        }
    }

    /// The k regions: region i is bounded by curve i, the boundary arc from
    /// its endpoint counterclockwise to the next endpoint, and the next curve.
    pub fn regions(&self, tol: &Tolerance<T>) -> Result<KSubdivision<T>> {
        regions_of_partition(self, tol)
    }
}

/// Splits a partition into its k regions (counterclockwise loops).
pub fn regions_of_partition<T: Scalar>(
    p: &KPartition<T>,
    tol: &Tolerance<T>,
) -> Result<KSubdivision<T>> {
    let order = p.angular_order();
    let k = order.len();
    let mut regions = Vec::with_capacity(k);
    for s in 0..k {
        let (ci, cj) = (&p.curves[order[s]], &p.curves[order[(s + 1) % k]]);
        let mut pieces: Vec<BoundaryPiece<T>> = Vec::new();
        for (a, b) in ci.segments() {
            pieces.push(BoundaryPiece::segment(a, b));
        }
        pieces.extend(p.body.boundary_path(ci.last(), cj.last(), tol)?);
        let back = cj.reversed();
        for (a, b) in back.segments() {
            pieces.push(BoundaryPiece::segment(a, b));
        }
        // Make the loop close exactly at the common point.
        let n = pieces.len();
        let start = pieces[0].start();
        pieces[n - 1] = pieces[n - 1].with_endpoints(pieces[n - 1].start(), start);
        let region = PieceLoop::new(pieces);
        if region.signed_area() <= tol.eps_area {
            return Err(Error::CrossingCurves(order[s], order[(s + 1) % k]));
        }
        regions.push(region);
    }
    Ok(KSubdivision::new(p.body.clone(), regions))
}

/// Do two curves meet anywhere except at their shared start?
fn curves_meet<T: Scalar>(a: &Polyline<T>, b: &Polyline<T>, eps: T) -> bool {
    let sa: Vec<_> = a.segments().collect();
    let sb: Vec<_> = b.segments().collect();
    for (i, &(p1, p2)) in sa.iter().enumerate() {
        for (j, &(q1, q2)) in sb.iter().enumerate() {
            if i == 0 && j == 0 {
                // Both leave the common point: they may only touch there.
                let (u, v) = (p2 - p1, q2 - q1);
                let collinear = u.cross(v).abs() <= eps * u.norm() * v.norm();
                // Non-collinear segments sharing an endpoint meet only there.
                if collinear && u.dot(v) > T::zero() {
                    return true;
                }
                continue;
            }
            if segment_distance(p1, p2, q1, q2) <= eps {
                return true;
            }
        }
    }
    false
}
