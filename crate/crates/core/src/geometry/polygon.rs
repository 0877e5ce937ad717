//! Convex polygons, hulls, rotating calipers and convex clipping.

use serde::{Deserialize, Serialize};

use super::point::{distance, Point};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};
use crate::scalar::{cmp, Scalar};

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "T: Scalar")]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Normalizes the input: drops duplicate and collinear vertices and
    /// reorients clockwise input. Fails unless the result is strictly convex
    /// with at least three vertices.
    pub fn new(vertices: Vec<Point<T>>, tol: &Tolerance<T>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::Degenerate("non-finite polygon vertex".into()));
        }
        let mut v = dedup_cyclic(vertices, tol.eps_geom);
        if v.len() < 3 {
            return Err(Error::Degenerate("fewer than 3 distinct vertices".into()));
        }
        if shoelace(&v) < T::zero() {
            v.reverse();
        }
        let v = drop_collinear(v, tol.eps_geom);
        if v.len() < 3 {
            return Err(Error::Degenerate("vertices are collinear".into()));
        }
        let n = v.len();
        for i in 0..n {
            let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
            if (b - a).cross(c - b) <= T::zero() {
                return Err(Error::NotConvex);
            }
        }
        // A star polygon passes the local test but winds more than once.
        let turning: T = (0..n)
            .map(|i| {
                let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
                let (u, w) = (b - a, c - b);
                u.cross(w).atan2(u.dot(w))
            })
            .sum();
        if (turning - T::TAU()).abs() > T::lit(1e-6) {
            return Err(Error::NotConvex);
        }
        Ok(ConvexPolygon { vertices: v })
    }

    /// Regular polygon with `n` vertices on a circle.
    pub fn regular(n: usize, circumradius: T, center: Point<T>, phase: T) -> Result<Self> {
        if n < 3 {
            return Err(Error::param("n", "a polygon needs at least 3 vertices"));
        }
        let step = T::TAU() / T::from_usize_lossy(n);
        let v = (0..n)
            .map(|i| center + Point::polar(circumradius, phase + step * T::from_usize_lossy(i)))
            .collect();
        ConvexPolygon::new(v, &Tolerance::default())
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> T {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> T {
        let n = self.vertices.len();
        (0..n)
            .map(|i| distance(self.vertices[i], self.vertices[(i + 1) % n]))
            .sum()
    }

    /// Diameter by rotating calipers.
    pub fn diameter(&self) -> T {
        calipers(&self.vertices).0
    }

    /// Diameter together with the indices of a realizing vertex pair.
    pub fn diameter_pair(&self) -> (T, usize, usize) {
        calipers(&self.vertices)
    }

    /// Closed containment (boundary counts as inside within `eps`).
    pub fn contains(&self, p: Point<T>, eps: T) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            (b - a).cross(p - a) >= -eps * distance(a, b)
        })
    }
}

/// Diameter of a convex polygon (rotating calipers).
pub fn polygon_diameter<T: Scalar>(p: &ConvexPolygon<T>) -> T {
    p.diameter()
}

/// Maximum pairwise distance of a point set, via convex hull and calipers.
pub fn point_set_diameter<T: Scalar>(pts: &[Point<T>]) -> Result<T> {
    point_set_diameter_pair(pts).map(|(d, _, _)| d)
}

/// Like [`point_set_diameter`] but also returns indices into `pts` of a realizing pair.
pub fn point_set_diameter_pair<T: Scalar>(pts: &[Point<T>]) -> Result<(T, usize, usize)> {
    if pts.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let hull = convex_hull_indices(pts);
    let hp: Vec<Point<T>> = hull.iter().map(|&i| pts[i]).collect();
    let (d, i, j) = calipers(&hp);
    Ok((d, hull[i], hull[j]))
}

/// Indices of the convex hull vertices (counterclockwise, collinear points
/// dropped) by Andrew's monotone chain.
pub fn convex_hull_indices<T: Scalar>(pts: &[Point<T>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| cmp(&pts[i].x, &pts[j].x).then(cmp(&pts[i].y, &pts[j].y)));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let turn = |h: &[usize], k: usize| {
        let (a, b) = (pts[h[h.len() - 2]], pts[h[h.len() - 1]]);
        (b - a).cross(pts[k] - a)
    };
    let mut lower: Vec<usize> = Vec::new();
    for &k in &idx {
        while lower.len() >= 2 && turn(&lower, k) <= T::zero() {
            lower.pop();
        }
        lower.push(k);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &k in idx.iter().rev() {
        while upper.len() >= 2 && turn(&upper, k) <= T::zero() {
            upper.pop();
        }
        upper.push(k);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Convex hull as points.
pub fn convex_hull<T: Scalar>(pts: &[Point<T>]) -> Vec<Point<T>> {
    convex_hull_indices(pts)
        .into_iter()
        .map(|i| pts[i])
        .collect()
}

/// Rotating calipers over a counterclockwise convex vertex list. Examines
/// every antipodal pair; ties keep the first pair in scan order.
fn calipers<T: Scalar>(v: &[Point<T>]) -> (T, usize, usize) {
    let n = v.len();
    match n {
        0 | 1 => return (T::zero(), 0, 0),
        2 => return (distance(v[0], v[1]), 0, 1),
        _ => {}
    }
    let area2 = |i: usize, j: usize, k: usize| (v[j] - v[i]).cross(v[k] - v[i]).abs();
    let mut best = (T::neg_infinity(), 0, 0);
    let mut consider = |i: usize, j: usize| {
        let d = distance(v[i], v[j]);
        if d > best.0 {
            best = (d, i.min(j), i.max(j));
        }
    };
    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        // Advance while the next vertex is at least as far from edge (i, ni);
        // equal heights (parallel edges) produce two antipodal vertices.
        let mut steps = 0;
        while steps < n && area2(i, ni, (j + 1) % n) > area2(i, ni, j) {
            j = (j + 1) % n;
            steps += 1;
        }
        consider(i, j);
        consider(ni, j);
        let nj = (j + 1) % n;
        if area2(i, ni, nj) >= area2(i, ni, j) {
            consider(i, nj);
            consider(ni, nj);
        }
    }
    best
}

/// Intersection of two convex polygons (Sutherland-Hodgman). Returns `None`
/// when the intersection has area below `eps_area`.
pub fn clip_convex<T: Scalar>(
    subject: &ConvexPolygon<T>,
    clip: &ConvexPolygon<T>,
    tol: &Tolerance<T>,
) -> Option<ConvexPolygon<T>> {
    let out = clip_polygon_by_convex(subject.vertices(), clip.vertices());
    if out.len() < 3 || shoelace(&out) < tol.eps_area {
        return None;
    }
    ConvexPolygon::new(out, tol)
        .ok()
        .filter(|p| p.area() >= tol.eps_area)
}

/// Area of the intersection of two convex vertex lists (ccw), without
/// re-validating convexity.
pub fn convex_intersection_area<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> T {
    let out = clip_polygon_by_convex(a, b);
    if out.len() < 3 {
        T::zero()
    } else {
        shoelace(&out).max(T::zero())
    }
}

fn clip_polygon_by_convex<T: Scalar>(subject: &[Point<T>], clip: &[Point<T>]) -> Vec<Point<T>> {
    let mut out: Vec<Point<T>> = subject.to_vec();
    let m = clip.len();
    for e in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[e], clip[(e + 1) % m]);
        let side = |p: Point<T>| (b - a).cross(p - a);
        let input = std::mem::take(&mut out);
        let n = input.len();
        for i in 0..n {
            let (p, q) = (input[i], input[(i + 1) % n]);
            let (sp, sq) = (side(p), side(q));
            if sp >= T::zero() {
                out.push(p);
            }
            if (sp >= T::zero()) != (sq >= T::zero()) {
                let t = sp / (sp - sq);
                out.push(p.lerp(q, t));
            }
        }
    }
    out
}

/// Signed area of a closed vertex list (positive when counterclockwise).
pub fn shoelace<T: Scalar>(v: &[Point<T>]) -> T {
    let n = v.len();
    let s: T = (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum();
    s * T::lit(0.5)
}

fn dedup_cyclic<T: Scalar>(v: Vec<Point<T>>, eps: T) -> Vec<Point<T>> {
    let mut out: Vec<Point<T>> = Vec::with_capacity(v.len());
    for p in v {
        if out.last().is_none_or(|&q| distance(p, q) > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && distance(out[0], out[out.len() - 1]) <= eps {
        out.pop();
    }
    out
}

fn drop_collinear<T: Scalar>(mut v: Vec<Point<T>>, eps: T) -> Vec<Point<T>> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let found = (0..n).find(|&i| {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            // Distance of b from line ac.
            let base = distance(a, c);
            base <= T::zero() || ((c - a).cross(b - a)).abs() / base <= eps
        });
        match found {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}
