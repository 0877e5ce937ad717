//! Planar-graph bookkeeping for the edge-count bound.

use super::KSubdivision;
use crate::geometry::{distance, BoundaryPiece, Point, Tolerance};
use crate::scalar::Scalar;

/// Counts of the planar graph formed by all region boundaries, after
/// splitting edges at T-junctions and suppressing degree-2 vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphCounts {
    pub vertices: usize,
    pub edges: usize,
    /// Bounded faces (the regions).
    pub faces: usize,
    /// Smallest vertex degree after suppression.
    pub min_degree: usize,
}

impl GraphCounts {
    /// Euler characteristic `V - E + F` counting the unbounded face.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 + 1
    }
}

/// Builds the boundary graph of `s` and counts it.
pub fn graph_counts<T: Scalar>(s: &KSubdivision<T>, tol: &Tolerance<T>) -> GraphCounts {
    let eps = tol.eps_geom * T::lit(100.0);
    let mut verts: Vec<Point<T>> = Vec::new();
    let vid = |p: Point<T>, verts: &mut Vec<Point<T>>| -> usize {
        if let Some(i) = verts.iter().position(|&q| distance(p, q) <= eps) {
            i
        } else {
            verts.push(p);
            verts.len() - 1
        }
    };
    let mut pieces: Vec<BoundaryPiece<T>> = Vec::new();
    for r in s.regions() {
        for p in r.pieces() {
            vid(p.start(), &mut verts);
            vid(p.end(), &mut verts);
            pieces.push(*p);
        }
    }
    // Split pieces at vertices lying in their relative interior.
    let mut split: Vec<BoundaryPiece<T>> = Vec::new();
    for p in pieces {
        let mut ts: Vec<T> = verts
            .iter()
            .filter(|&&v| {
                p.distance_to(v) <= eps
                    && distance(v, p.start()) > eps
                    && distance(v, p.end()) > eps
            })
            .map(|&v| p.param_of(v))
            .collect();
        ts.sort_by(crate::scalar::cmp);
        let mut start = p.start();
        for t in ts.into_iter().chain(std::iter::once(T::one())) {
            let end = if t >= T::one() {
                p.end()
            } else {
                p.point_at(t)
            };
            split.push(p.with_endpoints(start, end));
            start = end;
        }
    }
    // Deduplicate undirected edges by endpoints and midpoint.
    let mut edges: Vec<(usize, usize, Point<T>)> = Vec::new();
    for p in split {
        let (a, b) = (vid(p.start(), &mut verts), vid(p.end(), &mut verts));
        if a == b {
            continue;
        }
        let mid = p.point_at(T::lit(0.5));
        let key = (a.min(b), a.max(b));
        if !edges
            .iter()
            .any(|&(x, y, m)| (x, y) == key && distance(m, mid) <= eps)
        {
            edges.push((key.0, key.1, mid));
        }
    }
    let mut degree = vec![0usize; verts.len()];
    for &(a, b, _) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let used: Vec<usize> = degree.iter().copied().filter(|&d| d > 0).collect();
    let deg2 = used.iter().filter(|&&d| d == 2).count();
    GraphCounts {
        vertices: used.len() - deg2,
        edges: edges.len() - deg2,
        faces: s.k(),
        min_degree: used.iter().copied().filter(|&d| d != 2).min().unwrap_or(0),
    }
}
