//! Boundary pieces: straight segments and circular arcs.

use serde::{Deserialize, Serialize};

use super::point::{distance, wrap_angle, Point};
use super::tolerance::Tolerance;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Traversal direction of an arc around its center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Ccw,
    Cw,
}

impl Orientation {
    pub fn is_ccw(&self) -> bool {
        *self == Orientation::Ccw
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

/// One piece of a closed boundary, traversed from `a` to `b`.
///
/// Bodies only use counterclockwise arcs. Region loops of a subdivision may
/// traverse an arc clockwise where the region lies on the concave side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", bound = "T: Scalar")]
pub enum BoundaryPiece<T> {
    Segment {
        a: Point<T>,
        b: Point<T>,
    },
    Arc {
        a: Point<T>,
        b: Point<T>,
        center: Point<T>,
        radius: T,
        #[serde(default, skip_serializing_if = "Orientation::is_ccw")]
        orientation: Orientation,
    },
}

impl<T: Scalar> BoundaryPiece<T> {
    pub fn segment(a: Point<T>, b: Point<T>) -> Self {
        BoundaryPiece::Segment { a, b }
    }

    /// Counterclockwise arc from `a` to `b`.
    pub fn arc(a: Point<T>, b: Point<T>, center: Point<T>, radius: T) -> Self {
        BoundaryPiece::Arc {
            a,
            b,
            center,
            radius,
            orientation: Orientation::Ccw,
        }
    }

    /// Arc traversed clockwise from `a` to `b`.
    pub fn arc_cw(a: Point<T>, b: Point<T>, center: Point<T>, radius: T) -> Self {
        BoundaryPiece::Arc {
            a,
            b,
            center,
            radius,
            orientation: Orientation::Cw,
        }
    }

    /// Counterclockwise arc on the circle `(center, radius)` between two polar angles.
    pub fn arc_between_angles(center: Point<T>, radius: T, from: T, to: T) -> Self {
        BoundaryPiece::arc(
            center + Point::polar(radius, from),
            center + Point::polar(radius, to),
            center,
            radius,
        )
    }

    #[inline]
    pub fn start(&self) -> Point<T> {
        match *self {
            BoundaryPiece::Segment { a, .. } | BoundaryPiece::Arc { a, .. } => a,
        }
    }

    #[inline]
    pub fn end(&self) -> Point<T> {
        match *self {
            BoundaryPiece::Segment { b, .. } | BoundaryPiece::Arc { b, .. } => b,
        }
    }

    #[inline]
    pub fn is_arc(&self) -> bool {
        matches!(self, BoundaryPiece::Arc { .. })
    }

    /// The same point set traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        match *self {
            BoundaryPiece::Segment { a, b } => BoundaryPiece::Segment { a: b, b: a },
            BoundaryPiece::Arc {
                a,
                b,
                center,
                radius,
                orientation,
            } => BoundaryPiece::Arc {
                a: b,
                b: a,
                center,
                radius,
                orientation: orientation.flipped(),
            },
        }
    }

    /// Checks endpoint and radius invariants.
    pub fn validate(&self, tol: &Tolerance<T>) -> Result<()> {
        let (a, b) = (self.start(), self.end());
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::Degenerate("non-finite piece endpoint".into()));
        }
        if distance(a, b) <= tol.eps_geom {
            return Err(Error::Degenerate("piece endpoints coincide".into()));
        }
        if let BoundaryPiece::Arc { center, radius, .. } = *self {
            if !(radius > T::zero() && radius.is_finite() && center.is_finite()) {
                return Err(Error::Degenerate("arc radius must be positive".into()));
            }
            let slack = tol.eps_geom;
            if (distance(a, center) - radius).abs() > slack
                || (distance(b, center) - radius).abs() > slack
            {
                return Err(Error::Degenerate("arc endpoint off its circle".into()));
            }
        }
        Ok(())
    }

    /// Signed traversal direction: +1 for ccw arcs, -1 for cw arcs, 0 for segments.
    fn turn(&self) -> T {
        match *self {
            BoundaryPiece::Segment { .. } => T::zero(),
            BoundaryPiece::Arc {
                orientation: Orientation::Ccw,
                ..
            } => T::one(),
            BoundaryPiece::Arc {
                orientation: Orientation::Cw,
                ..
            } => -T::one(),
        }
    }

    /// Polar angle of the start point around the arc center (0 for segments).
    pub fn start_angle(&self) -> T {
        match *self {
            BoundaryPiece::Segment { .. } => T::zero(),
            BoundaryPiece::Arc { a, center, .. } => (a - center).angle(),
        }
    }

    /// Unsigned angle swept by an arc, in `(0, 2pi)`; 0 for segments.
    pub fn sweep(&self) -> T {
        match *self {
            BoundaryPiece::Segment { .. } => T::zero(),
            BoundaryPiece::Arc {
                a,
                b,
                center,
                orientation,
                ..
            } => {
                let (aa, ab) = ((a - center).angle(), (b - center).angle());
                match orientation {
                    Orientation::Ccw => wrap_angle(ab - aa),
                    Orientation::Cw => wrap_angle(aa - ab),
                }
            }
        }
    }

    pub fn length(&self) -> T {
        match *self {
            BoundaryPiece::Segment { a, b } => distance(a, b),
            BoundaryPiece::Arc { radius, .. } => radius * self.sweep(),
        }
    }

    /// Point at normalized parameter `t` in `[0, 1]`.
    pub fn point_at(&self, t: T) -> Point<T> {
        match *self {
            BoundaryPiece::Segment { a, b } => a.lerp(b, t),
            BoundaryPiece::Arc { center, radius, .. } => {
                if t <= T::zero() {
                    return self.start();
                }
                if t >= T::one() {
                    return self.end();
                }
                let ang = self.start_angle() + self.turn() * t * self.sweep();
                center + Point::polar(radius, ang)
            }
        }
    }

    /// Unit tangent in the direction of traversal at parameter `t`.
    pub fn tangent_at(&self, t: T) -> Point<T> {
        match *self {
            BoundaryPiece::Segment { a, b } => (b - a).normalized(),
            BoundaryPiece::Arc { center, .. } => {
                let radial = (self.point_at(t) - center).normalized();
                radial.perp() * self.turn()
            }
        }
    }

    /// Traversal offset of polar angle `ang` from the arc start, in `[0, 2pi)`.
    fn arc_offset(&self, ang: T) -> T {
        let s = self.start_angle();
        if self.turn() > T::zero() {
            wrap_angle(ang - s)
        } else {
            wrap_angle(s - ang)
        }
    }

    /// True if the polar angle `ang` (around the arc center) lies on the arc,
    /// allowing `slack` radians at either end.
    pub fn arc_contains_angle(&self, ang: T, slack: T) -> bool {
        let sweep = self.sweep();
        let off = self.arc_offset(ang);
        off <= sweep + slack || off >= T::TAU() - slack
    }

    /// Parameter of the point on the piece closest to `p` (clamped to `[0, 1]`).
    pub fn param_of(&self, p: Point<T>) -> T {
        match *self {
            BoundaryPiece::Segment { a, b } => {
                let d = b - a;
                let l2 = d.norm2();
                if l2 <= T::zero() {
                    return T::zero();
                }
                ((p - a).dot(d) / l2).max(T::zero()).min(T::one())
            }
            BoundaryPiece::Arc { center, .. } => {
                let sweep = self.sweep();
                let off = self.arc_offset((p - center).angle());
                if off <= sweep {
                    return off / sweep;
                }
                // Outside the angular range: snap to the nearer end.
                let past_end = off - sweep;
                let before_start = T::TAU() - off;
                if past_end < before_start {
                    T::one()
                } else {
                    T::zero()
                }
            }
        }
    }

    pub fn nearest_point(&self, p: Point<T>) -> Point<T> {
        match *self {
            BoundaryPiece::Segment { .. } => self.point_at(self.param_of(p)),
            BoundaryPiece::Arc {
                a,
                b,
                center,
                radius,
                ..
            } => {
                let v = p - center;
                if v.norm() > T::zero() && self.arc_contains_angle(v.angle(), T::zero()) {
                    return center + v.normalized() * radius;
                }
                if distance(p, a) <= distance(p, b) {
                    a
                } else {
                    b
                }
            }
        }
    }

    /// Distance from `p` to the piece.
    pub fn distance_to(&self, p: Point<T>) -> T {
        match *self {
            BoundaryPiece::Segment { .. } => distance(p, self.nearest_point(p)),
            BoundaryPiece::Arc {
                a,
                b,
                center,
                radius,
                ..
            } => {
                let v = p - center;
                if v.norm() > T::zero() && self.arc_contains_angle(v.angle(), T::zero()) {
                    (v.norm() - radius).abs()
                } else {
                    distance(p, a).min(distance(p, b))
                }
            }
        }
    }

    /// The point of the piece farthest from `p`.
    pub fn farthest_point(&self, p: Point<T>) -> Point<T> {
        let (a, b) = (self.start(), self.end());
        let end = if distance(p, a) >= distance(p, b) {
            a
        } else {
            b
        };
        match *self {
            BoundaryPiece::Segment { .. } => end,
            BoundaryPiece::Arc { center, radius, .. } => {
                let u = center - p;
                if u.norm() <= T::zero() {
                    return end;
                }
                let cand = center + u.normalized() * radius;
                if self.arc_contains_angle((cand - center).angle(), T::zero())
                    && distance(p, cand) >= distance(p, end)
                {
                    cand
                } else {
                    end
                }
            }
        }
    }

    /// Maximal distance from `p` to the piece.
    pub fn max_distance(&self, p: Point<T>) -> T {
        distance(p, self.farthest_point(p))
    }

    /// Contribution of the piece to the shoelace sum `2A` (chord part) plus
    /// the signed circular-segment area, i.e. this piece's share of the
    /// signed area of any closed loop containing it.
    pub fn signed_area_term(&self) -> T {
        let (a, b) = (self.start(), self.end());
        let half = T::lit(0.5);
        let chord = a.cross(b) * half;
        match *self {
            BoundaryPiece::Segment { .. } => chord,
            BoundaryPiece::Arc { radius, .. } => {
                let th = self.sweep();
                chord + self.turn() * half * radius * radius * (th - th.sin())
            }
        }
    }

    /// First moments `(Mx, My)` of this piece's share of the loop area.
    pub fn moment_term(&self) -> Point<T> {
        let (a, b) = (self.start(), self.end());
        let six = T::lit(6.0);
        let cr = a.cross(b);
        let tri = Point::new((a.x + b.x) * cr / six, (a.y + b.y) * cr / six);
        match *self {
            BoundaryPiece::Segment { .. } => tri,
            BoundaryPiece::Arc { center, radius, .. } => {
                let th = self.sweep();
                let seg_area = T::lit(0.5) * radius * radius * (th - th.sin());
                if seg_area <= T::zero() {
                    return tri;
                }
                let mid = self.point_at(T::lit(0.5));
                let u = (mid - center).normalized();
                let half = th * T::lit(0.5);
                let dist =
                    T::lit(4.0) * radius * half.sin().powi(3) / (T::lit(3.0) * (th - th.sin()));
                let c = center + u * dist;
                tri + c * (self.turn() * seg_area)
            }
        }
    }

    /// Sub-piece between parameters `s < t`.
    pub fn sub_piece(&self, s: T, t: T) -> Self {
        let (p, q) = (self.point_at(s), self.point_at(t));
        self.with_endpoints(p, q)
    }

    /// Same carrier (line or circle), new endpoints.
    pub fn with_endpoints(&self, a: Point<T>, b: Point<T>) -> Self {
        match *self {
            BoundaryPiece::Segment { .. } => BoundaryPiece::Segment { a, b },
            BoundaryPiece::Arc {
                center,
                radius,
                orientation,
                ..
            } => BoundaryPiece::Arc {
                a,
                b,
                center,
                radius,
                orientation,
            },
        }
    }

    /// Parameters in `(0, 1)` where the piece crosses the line `n . x = c`
    /// (`n` of unit length), excluding crossings within `eps` of an endpoint.
    pub fn line_crossings(&self, n: Point<T>, c: T, eps: T) -> Vec<T> {
        let mut out = Vec::new();
        match *self {
            BoundaryPiece::Segment { a, b } => {
                let (da, db) = (n.dot(a) - c, n.dot(b) - c);
                if (da < -eps && db > eps) || (da > eps && db < -eps) {
                    out.push(da / (da - db));
                }
            }
            BoundaryPiece::Arc { center, radius, .. } => {
                let h = n.dot(center) - c;
                if h.abs() >= radius {
                    return out;
                }
                let base = n.angle();
                let delta = (-h / radius).acos();
                let sweep = self.sweep();
                let len = radius * sweep;
                for ang in [base + delta, base - delta] {
                    let off = self.arc_offset(ang);
                    if off < sweep {
                        let t = off / sweep;
                        if t * len > eps && (T::one() - t) * len > eps {
                            out.push(t);
                        }
                    }
                }
                out.sort_by(crate::scalar::cmp);
                out.dedup_by(|x, y| (*x - *y).abs() * len <= eps);
            }
        }
        out
    }

    /// Polyline approximation including both endpoints exactly; every chord of
    /// an arc has sagitta at most `max_sagitta`.
    pub fn discretize(&self, max_sagitta: T) -> Result<Vec<Point<T>>> {
        if !(max_sagitta > T::zero()) {
            return Err(Error::param("max_sagitta", "must be positive"));
        }
        match *self {
            BoundaryPiece::Segment { a, b } => Ok(vec![a, b]),
            BoundaryPiece::Arc { a, b, radius, .. } => {
                if distance(a, b) <= T::zero() {
                    return Err(Error::Degenerate("zero-length arc".into()));
                }
                let n = arc_chord_count(radius, self.sweep(), max_sagitta);
                let mut pts = Vec::with_capacity(n + 1);
                pts.push(a);
                for i in 1..n {
                    pts.push(self.point_at(T::from_usize_lossy(i) / T::from_usize_lossy(n)));
                }
                pts.push(b);
                Ok(pts)
            }
        }
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point<T>, Point<T>) {
        let (a, b) = (self.start(), self.end());
        let mut lo = Point::new(a.x.min(b.x), a.y.min(b.y));
        let mut hi = Point::new(a.x.max(b.x), a.y.max(b.y));
        if let BoundaryPiece::Arc { center, radius, .. } = *self {
            let quarter = T::FRAC_PI_2();
            for i in 0..4 {
                let ang = quarter * T::from_usize_lossy(i);
                if self.arc_contains_angle(ang, T::zero()) {
                    let p = center + Point::polar(radius, ang);
                    lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
                    hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
                }
            }
        }
        (lo, hi)
    }

    /// Applies `p -> translate + scale * R(rotation) p`.
    pub fn similarity(&self, rotation: T, scale: T, translate: Point<T>) -> Self {
        let f = |p: Point<T>| translate + p.rotate(rotation) * scale;
        match *self {
            BoundaryPiece::Segment { a, b } => BoundaryPiece::Segment { a: f(a), b: f(b) },
            BoundaryPiece::Arc {
                a,
                b,
                center,
                radius,
                orientation,
            } => BoundaryPiece::Arc {
                a: f(a),
                b: f(b),
                center: f(center),
                radius: radius * scale.abs(),
                orientation,
            },
        }
    }

    /// Signed angle swept by the direction from `p` to a point running along
    /// the piece. Summing over a closed loop yields `2pi * winding number`.
    pub fn winding_angle(&self, p: Point<T>) -> T {
        let (a, b) = (self.start(), self.end());
        let (u, v) = (a - p, b - p);
        let chord = u.cross(v).atan2(u.dot(v));
        match *self {
            BoundaryPiece::Segment { .. } => chord,
            BoundaryPiece::Arc { center, radius, .. } => {
                if distance(p, center) >= radius {
                    return chord;
                }
                // Seen from inside the circle the direction to the arc point
                // turns monotonically, so the sweep is the wrapped difference.
                let ccw = wrap_angle(v.angle() - u.angle());
                self.turn() * ccw_for(self.turn(), ccw)
            }
        }
    }
}

fn ccw_for<T: Scalar>(turn: T, ccw: T) -> T {
    if turn > T::zero() {
        ccw
    } else if ccw > T::zero() {
        T::TAU() - ccw
    } else {
        T::zero()
    }
}

/// Number of equal chords needed so that each chord's sagitta is at most `max_sagitta`.
pub fn arc_chord_count<T: Scalar>(radius: T, sweep: T, max_sagitta: T) -> usize {
    let ratio = (T::one() - max_sagitta / radius)
        .max(-T::one())
        .min(T::one());
    let max_angle = T::lit(2.0) * ratio.acos();
    if !(max_angle > T::zero()) {
        return 1_000_000;
    }
    let n = (sweep / max_angle).ceil().to_usize().unwrap_or(1).max(1);
    n.min(1_000_000)
}

/// Sagitta of a chord subtending `angle` on a circle of radius `radius`.
pub fn sagitta<T: Scalar>(radius: T, angle: T) -> T {
    radius * (T::one() - (angle * T::lit(0.5)).cos())
}
