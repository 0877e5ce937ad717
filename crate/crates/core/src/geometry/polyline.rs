use serde::{Deserialize, Serialize};

use super::point::{distance, Point};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An open simple polyline with at least two vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "T: Scalar")]
pub struct Polyline<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn new(vertices: Vec<Point<T>>, tol: &Tolerance<T>) -> Result<Self> {
        let line = Polyline { vertices };
        line.validate(tol)?;
        Ok(line)
    }

    /// Skips validation; callers guarantee the invariants.
    pub fn new_unchecked(vertices: Vec<Point<T>>) -> Self {
        Polyline { vertices }
    }

    pub fn validate(&self, tol: &Tolerance<T>) -> Result<()> {
        let v = &self.vertices;
        if v.len() < 2 {
            return Err(Error::Degenerate(
                "polyline needs at least two vertices".into(),
            ));
        }
        if v.iter().any(|p| !p.is_finite()) {
            return Err(Error::Degenerate("non-finite polyline vertex".into()));
        }
        for w in v.windows(2) {
            if distance(w[0], w[1]) <= tol.eps_geom {
                return Err(Error::Degenerate(
                    "consecutive polyline vertices coincide".into(),
                ));
            }
        }
        let n = v.len() - 1;
        for i in 0..n {
            for j in i + 1..n {
                let touching = if j == i + 1 {
                    // Adjacent segments may only share their joint: reject folding back.
                    let (d1, d2) = (v[i + 1] - v[i], v[j + 1] - v[j]);
                    d1.cross(d2).abs() <= tol.eps_geom * d1.norm() * d2.norm()
                        && d1.dot(d2) < T::zero()
                } else {
                    segment_distance(v[i], v[i + 1], v[j], v[j + 1]) <= tol.eps_geom
                };
                if touching {
                    return Err(Error::Degenerate(format!(
                        "polyline self-intersects at segments {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn first(&self) -> Point<T> {
        self.vertices[0]
    }

    pub fn last(&self) -> Point<T> {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn length(&self) -> T {
        self.vertices.windows(2).map(|w| distance(w[0], w[1])).sum()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point<T>, Point<T>)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline { vertices: v }
    }

    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Self {
        Polyline {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
        }
    }
}

/// Distance from `p` to the segment `ab`.
pub fn point_segment_distance<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
    let d = b - a;
    let l2 = d.norm2();
    if l2 <= T::zero() {
        return distance(p, a);
    }
    let t = ((p - a).dot(d) / l2).max(T::zero()).min(T::one());
    distance(p, a + d * t)
}

/// True if the open segments `p1p2` and `q1q2` cross properly.
pub fn segments_cross<T: Scalar>(p1: Point<T>, p2: Point<T>, q1: Point<T>, q2: Point<T>) -> bool {
    let d1 = (p2 - p1).cross(q1 - p1);
    let d2 = (p2 - p1).cross(q2 - p1);
    let d3 = (q2 - q1).cross(p1 - q1);
    let d4 = (q2 - q1).cross(p2 - q1);
    let z = T::zero();
    ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z))
}

/// Minimal distance between the closed segments `p1p2` and `q1q2`.
pub fn segment_distance<T: Scalar>(p1: Point<T>, p2: Point<T>, q1: Point<T>, q2: Point<T>) -> T {
    if segments_cross(p1, p2, q1, q2) {
        return T::zero();
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}
