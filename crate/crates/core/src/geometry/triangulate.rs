//! Ear-clipping triangulation of simple polygons.

use super::point::Point;
use super::polygon::shoelace;
use crate::scalar::Scalar;

/// Triangulates a simple polygon (either orientation). Returns counterclockwise
/// triangles, or `None` if no ear can be found (self-intersecting input).
pub fn ear_clip<T: Scalar>(poly: &[Point<T>]) -> Option<Vec<[Point<T>; 3]>> {
    let mut v: Vec<Point<T>> = poly.to_vec();
    if shoelace(&v) < T::zero() {
        v.reverse();
    }
    let mut idx: Vec<usize> = (0..v.len()).collect();
    let mut tris = Vec::with_capacity(v.len().saturating_sub(2));
    let cross = |a: Point<T>, b: Point<T>, c: Point<T>| (b - a).cross(c - a);
    while idx.len() > 3 {
        let n = idx.len();
        let mut clipped = false;
        for i in 0..n {
            let (ia, ib, ic) = (idx[(i + n - 1) % n], idx[i], idx[(i + 1) % n]);
            let (a, b, c) = (v[ia], v[ib], v[ic]);
            let turn = cross(a, b, c);
            if turn < T::zero() {
                continue;
            }
            if turn == T::zero() {
                // Drop a flat vertex outright.
                idx.remove(i);
                clipped = true;
                break;
            }
            let blocked = idx.iter().any(|&j| {
                if j == ia || j == ib || j == ic {
                    return false;
                }
                let p = v[j];
                if p == a || p == b || p == c {
                    return false;
                }
                cross(a, b, p) >= T::zero()
                    && cross(b, c, p) >= T::zero()
                    && cross(c, a, p) >= T::zero()
            });
            if blocked {
                continue;
            }
            tris.push([a, b, c]);
            idx.remove(i);
            clipped = true;
            break;
        }
        if !clipped {
            return None;
        }
    }
    if idx.len() == 3 {
        let (a, b, c) = (v[idx[0]], v[idx[1]], v[idx[2]]);
        if cross(a, b, c) > T::zero() {
            tris.push([a, b, c]);
        }
    }
    Some(tris)
}

/// True when every turn of the (counterclockwise) polygon is a left turn or straight.
pub fn is_convex<T: Scalar>(poly: &[Point<T>], eps: T) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let sign = if shoelace(poly) >= T::zero() {
        T::one()
    } else {
        -T::one()
    };
    (0..n).all(|i| {
        let (a, b, c) = (poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
        sign * (b - a).cross(c - b) >= -eps * (b - a).norm() * (c - b).norm()
    })
}
