//! Closed loops of boundary pieces: exact area, containment, clipping and diameter.

use serde::{Deserialize, Serialize};

use super::piece::BoundaryPiece;
use super::point::{distance, Point};
use super::polygon::{convex_hull_indices, shoelace};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A closed loop of boundary pieces, counterclockwise for positive area.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "T: Scalar")]
pub struct PieceLoop<T> {
    pieces: Vec<BoundaryPiece<T>>,
}

/// A realized diameter: `value == distance(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diameter<T> {
    pub value: T,
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T: Scalar> PieceLoop<T> {
    pub fn new(pieces: Vec<BoundaryPiece<T>>) -> Self {
        PieceLoop { pieces }
    }

    /// Loop of straight segments through `vertices` (closing edge implied).
    pub fn polygon(vertices: &[Point<T>]) -> Self {
        let n = vertices.len();
        PieceLoop {
            pieces: (0..n)
                .map(|i| BoundaryPiece::segment(vertices[i], vertices[(i + 1) % n]))
                .collect(),
        }
    }

    pub fn pieces(&self) -> &[BoundaryPiece<T>] {
        &self.pieces
    }

    pub fn into_pieces(self) -> Vec<BoundaryPiece<T>> {
        self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Every piece is valid and each one ends where the next begins.
    pub fn check_closed(&self, tol: &Tolerance<T>) -> Result<()> {
        let n = self.pieces.len();
        if n < 2 {
            return Err(Error::Degenerate("a loop needs at least two pieces".into()));
        }
        for (i, p) in self.pieces.iter().enumerate() {
            p.validate(tol)?;
            let next = self.pieces[(i + 1) % n].start();
            if distance(p.end(), next) > tol.eps_geom {
                return Err(Error::Degenerate(format!("loop opens after piece {i}")));
            }
        }
        Ok(())
    }

    /// Exact signed area (shoelace plus circular-segment terms).
    pub fn signed_area(&self) -> T {
        self.pieces.iter().map(|p| p.signed_area_term()).sum()
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    pub fn perimeter(&self) -> T {
        self.pieces.iter().map(|p| p.length()).sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point<T> {
        let a = self.signed_area();
        let m = self
            .pieces
            .iter()
            .fold(Point::origin(), |acc, p| acc + p.moment_term());
        m * (T::one() / a)
    }

    pub fn vertices(&self) -> Vec<Point<T>> {
        self.pieces.iter().map(|p| p.start()).collect()
    }

    /// Polygonal approximation: each piece's discretization without its final point.
    pub fn discretize(&self, max_sagitta: T) -> Result<Vec<Point<T>>> {
        let mut out = Vec::new();
        for p in &self.pieces {
            let pts = p.discretize(max_sagitta)?;
            out.extend_from_slice(&pts[..pts.len() - 1]);
        }
        Ok(out)
    }

    pub fn distance_to_boundary(&self, p: Point<T>) -> T {
        self.pieces
            .iter()
            .map(|q| q.distance_to(p))
            .fold(T::infinity(), T::min)
    }

    /// Closed containment: points within `eps` of the loop count as inside.
    pub fn contains(&self, p: Point<T>, eps: T) -> bool {
        if self.distance_to_boundary(p) <= eps {
            return true;
        }
        self.strictly_contains(p)
    }

    /// Winding-number containment (boundary behavior unspecified).
    pub fn strictly_contains(&self, p: Point<T>) -> bool {
        let total: T = self.pieces.iter().map(|q| q.winding_angle(p)).sum();
        total.abs() > T::PI()
    }

    pub fn bbox(&self) -> (Point<T>, Point<T>) {
        let mut lo = Point::new(T::infinity(), T::infinity());
        let mut hi = Point::new(T::neg_infinity(), T::neg_infinity());
        for p in &self.pieces {
            let (a, b) = p.bbox();
            lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
            hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
        }
        (lo, hi)
    }

    pub fn similarity(&self, rotation: T, scale: T, translate: Point<T>) -> Self {
        PieceLoop {
            pieces: self
                .pieces
                .iter()
                .map(|p| p.similarity(rotation, scale, translate))
                .collect(),
        }
    }

    /// Reverses the traversal direction.
    pub fn reversed(&self) -> Self {
        PieceLoop {
            pieces: self.pieces.iter().rev().map(|p| p.reversed()).collect(),
        }
    }

    /// Intersection of a convex loop with the half-plane `n . x <= c`.
    /// Returns `None` when less than `eps_area` remains.
    pub fn clip_halfplane(&self, n: Point<T>, c: T, tol: &Tolerance<T>) -> Option<Self> {
        let len = n.norm();
        if !(len > T::zero()) {
            return Some(self.clone());
        }
        let (n, c) = (n * (T::one() / len), c / len);
        let eps = tol.eps_geom;
        let mut tagged: Vec<(BoundaryPiece<T>, bool)> = Vec::with_capacity(self.pieces.len() + 2);
        for piece in &self.pieces {
            let ts = piece.line_crossings(n, c, eps);
            let mut start = piece.start();
            let mut t0 = T::zero();
            let mut cuts: Vec<(T, Point<T>)> = ts.iter().map(|&t| (t, piece.point_at(t))).collect();
            cuts.push((T::one(), piece.end()));
            for (t1, p1) in cuts {
                let sub = piece.with_endpoints(start, p1);
                let mid = piece.point_at((t0 + t1) * T::lit(0.5));
                tagged.push((sub, n.dot(mid) - c <= eps));
                start = p1;
                t0 = t1;
            }
        }
        let kept = tagged.iter().filter(|(_, k)| *k).count();
        if kept == tagged.len() {
            return Some(self.clone());
        }
        if kept == 0 {
            return None;
        }
        // Start right after a dropped piece, bridge every gap with a chord.
        let m = tagged.len();
        let first = (0..m).find(|&i| !tagged[i].1 && tagged[(i + 1) % m].1)?;
        let mut out: Vec<BoundaryPiece<T>> = Vec::new();
        let mut pending_gap = false;
        for s in 1..=m {
            let (piece, keep) = tagged[(first + s) % m];
            if !keep {
                pending_gap = true;
                continue;
            }
            if pending_gap {
                if let Some(last) = out.last() {
                    let from = last.end();
                    if distance(from, piece.start()) > eps {
                        out.push(BoundaryPiece::segment(from, piece.start()));
                    }
                }
                pending_gap = false;
            }
            if piece.length() > eps {
                out.push(piece);
            } else if let Some(last) = out.last_mut() {
                // Absorb a sliver piece by stretching the previous one.
                let a = last.start();
                *last = last.with_endpoints(a, piece.end());
            }
        }
        if let (Some(first_piece), Some(last)) = (out.first(), out.last()) {
            let (from, to) = (last.end(), first_piece.start());
            if distance(from, to) > eps {
                out.push(BoundaryPiece::segment(from, to));
            }
        }
        let res = PieceLoop { pieces: out };
        if res.len() < 2 || res.signed_area() < tol.eps_area {
            None
        } else {
            Some(res)
        }
    }

    /// Diameter of the closed region bounded by the loop. Arcs are sampled
    /// at `max_sagitta`, then the best pair is refined with exact farthest
    /// points on the arcs it touches.
    pub fn diameter(&self, max_sagitta: T) -> Result<Diameter<T>> {
        if self.pieces.is_empty() {
            return Err(Error::Degenerate("empty loop".into()));
        }
        let mut pts: Vec<Point<T>> = Vec::new();
        let mut owner: Vec<usize> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let d = p.discretize(max_sagitta)?;
            for q in &d[..d.len() - 1] {
                pts.push(*q);
                owner.push(i);
            }
        }
        let hull = convex_hull_indices(&pts);
        let hp: Vec<Point<T>> = hull.iter().map(|&i| pts[i]).collect();
        let (_, hi, hj) = super::polygon::point_set_diameter_pair(&hp)?;
        let (mut a, mut b) = (hp[hi], hp[hj]);
        let (mut pa, mut pb) = (Some(owner[hull[hi]]), Some(owner[hull[hj]]));
        let mut best = distance(a, b);

        let arcs: Vec<usize> = (0..self.pieces.len())
            .filter(|&i| self.pieces[i].is_arc())
            .collect();
        if arcs.is_empty() {
            return Ok(Diameter { value: best, a, b });
        }
        // Exact vertex-to-arc farthest points.
        for &ai in &arcs {
            for (vi, v) in self.pieces.iter().map(|p| p.start()).enumerate() {
                let f = self.pieces[ai].farthest_point(v);
                let d = distance(v, f);
                if d > best {
                    best = d;
                    a = v;
                    b = f;
                    pa = Some(vi);
                    pb = Some(ai);
                }
            }
        }
        // Alternate exact farthest-point steps on the pieces holding a and b
        // (and their neighbours, since shared endpoints belong to both).
        let n = self.pieces.len();
        let around = |i: usize| [i, (i + n - 1) % n, (i + 1) % n];
        for _ in 0..64 {
            let mut improved = false;
            if let Some(i) = pa {
                for k in around(i) {
                    let cand = self.pieces[k].farthest_point(b);
                    let d = distance(cand, b);
                    if d > best {
                        best = d;
                        a = cand;
                        pa = Some(k);
                        improved = true;
                    }
                }
            }
            if let Some(j) = pb {
                for k in around(j) {
                    let cand = self.pieces[k].farthest_point(a);
                    let d = distance(a, cand);
                    if d > best {
                        best = d;
                        b = cand;
                        pb = Some(k);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        let value = distance(a, b);
        Ok(Diameter { value, a, b })
    }
}

/// Signed area of a polygon given by its vertices.
pub fn polygon_area<T: Scalar>(v: &[Point<T>]) -> T {
    shoelace(v)
}
