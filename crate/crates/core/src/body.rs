//! Convex bodies with segment/arc boundaries and their metrics.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance, BoundaryPiece, Orientation, PieceLoop, Point, Tolerance};
use crate::scalar::Scalar;

/// Symmetry order recorded for discs, standing in for "every k".
pub const DISC_SYMMETRY_CAP: usize = 360;

/// A compact convex body bounded by a counterclockwise loop of pieces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyJson<T>", into = "BodyJson<T>", bound = "T: Scalar")]
pub struct ConvexBody<T: Scalar> {
    boundary: PieceLoop<T>,
    center: Point<T>,
    symmetry_order: usize,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
struct BodyJson<T: Scalar> {
    pieces: Vec<BoundaryPiece<T>>,
    center: Point<T>,
    symmetry_order: usize,
}

impl<T: Scalar> TryFrom<BodyJson<T>> for ConvexBody<T> {
    type Error = Error;
    fn try_from(j: BodyJson<T>) -> Result<Self> {
        ConvexBody::new(j.pieces, j.center, j.symmetry_order, &Tolerance::default())
    }
}

impl<T: Scalar> From<ConvexBody<T>> for BodyJson<T> {
    fn from(b: ConvexBody<T>) -> Self {
        BodyJson {
            pieces: b.boundary.into_pieces(),
            center: b.center,
            symmetry_order: b.symmetry_order,
        }
    }
}

/// Inradius, circumradius, area and perimeter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BodyMetrics<T> {
    pub inradius: T,
    pub circumradius: T,
    pub area: T,
    pub perimeter: T,
}

impl<T: Scalar> ConvexBody<T> {
    /// Validates closure, orientation, convexity, an interior center and the
    /// claimed symmetry order.
    pub fn new(
        pieces: Vec<BoundaryPiece<T>>,
        center: Point<T>,
        symmetry_order: usize,
        tol: &Tolerance<T>,
    ) -> Result<Self> {
        if symmetry_order == 0 {
            return Err(Error::InvalidBody(
                "symmetry_order must be at least 1".into(),
            ));
        }
        if !center.is_finite() {
            return Err(Error::InvalidBody("center must be finite".into()));
        }
        if pieces.iter().any(|p| {
            matches!(
                p,
                BoundaryPiece::Arc {
                    orientation: Orientation::Cw,
                    ..
                }
            )
        }) {
            return Err(Error::InvalidBody(
                "body arcs must be counterclockwise".into(),
            ));
        }
        let boundary = PieceLoop::new(pieces);
        boundary
            .check_closed(tol)
            .map_err(|e| Error::InvalidBody(e.to_string()))?;
        if boundary.signed_area() <= tol.eps_area {
            return Err(Error::InvalidBody(
                "boundary must enclose positive area counterclockwise".into(),
            ));
        }
        check_convex(&boundary)?;
        if boundary.distance_to_boundary(center) <= tol.eps_geom
            || !boundary.strictly_contains(center)
        {
            return Err(Error::InvalidBody("center must lie in the interior".into()));
        }
        let body = ConvexBody {
            boundary,
            center,
            symmetry_order,
        };
        if symmetry_order >= 2 && !body.verify_symmetry(symmetry_order, tol) {
            return Err(Error::NotSymmetric { k: symmetry_order });
        }
        Ok(body)
    }

    fn new_trusted(pieces: Vec<BoundaryPiece<T>>, center: Point<T>, symmetry_order: usize) -> Self {
        ConvexBody {
            boundary: PieceLoop::new(pieces),
            center,
            symmetry_order,
        }
    }

    pub fn boundary(&self) -> &PieceLoop<T> {
        &self.boundary
    }

    pub fn pieces(&self) -> &[BoundaryPiece<T>] {
        self.boundary.pieces()
    }

    pub fn center(&self) -> Point<T> {
        self.center
    }

    pub fn symmetry_order(&self) -> usize {
        self.symmetry_order
    }

    /// Returns a copy with a different recorded symmetry order (verified).
    pub fn with_symmetry_order(&self, k: usize, tol: &Tolerance<T>) -> Result<Self> {
        if k == 0 || (k >= 2 && !self.verify_symmetry(k, tol)) {
            return Err(Error::NotSymmetric { k });
        }
        Ok(ConvexBody {
            symmetry_order: k,
            ..self.clone()
        })
    }

    pub fn area(&self) -> T {
        self.boundary.signed_area()
    }

    pub fn perimeter(&self) -> T {
        self.boundary.perimeter()
    }

    pub fn distance_to_boundary(&self, p: Point<T>) -> T {
        self.boundary.distance_to_boundary(p)
    }

    /// Closed containment with tolerance `eps`.
    pub fn contains(&self, p: Point<T>, eps: T) -> bool {
        self.boundary.contains(p, eps)
    }

    /// Strictly interior: inside and farther than `eps` from the boundary.
    pub fn contains_interior(&self, p: Point<T>, eps: T) -> bool {
        self.boundary.distance_to_boundary(p) > eps && self.boundary.strictly_contains(p)
    }

    pub fn bbox(&self) -> (Point<T>, Point<T>) {
        self.boundary.bbox()
    }

    /// Image under `p -> translate + scale * R(rotation) p`.
    pub fn similarity(&self, rotation: T, scale: T, translate: Point<T>) -> Self {
        ConvexBody {
            boundary: self.boundary.similarity(rotation, scale, translate),
            center: translate + self.center.rotate(rotation) * scale,
            symmetry_order: self.symmetry_order,
        }
    }

    /// Samples the boundary: every piece start plus interior points spaced
    /// roughly `1/density` of the perimeter apart.
    pub fn boundary_samples(&self, density: usize) -> Vec<Point<T>> {
        let per = self.perimeter();
        let mut out = Vec::new();
        for p in self.pieces() {
            let m = ((p.length() / per) * T::from_usize_lossy(density))
                .ceil()
                .to_usize()
                .unwrap_or(1)
                .max(2);
            for i in 0..m {
                out.push(p.point_at(T::from_usize_lossy(i) / T::from_usize_lossy(m)));
            }
        }
        out
    }

    /// True iff rotating a dense boundary sample by `2pi/k` about the center
    /// lands on the boundary within `eps_geom`.
    pub fn verify_symmetry(&self, k: usize, tol: &Tolerance<T>) -> bool {
        if k <= 1 {
            return true;
        }
        let ang = T::TAU() / T::from_usize_lossy(k);
        let slack = tol.eps_geom * T::lit(4.0);
        self.boundary_samples(256)
            .into_iter()
            .all(|p| self.distance_to_boundary(p.rotate_about(self.center, ang)) <= slack)
    }

    /// Boundary point nearest to `p`; ties resolve to the first piece in order.
    pub fn nearest_boundary_point(&self, p: Point<T>) -> Point<T> {
        let mut best = (T::infinity(), p);
        for piece in self.pieces() {
            let q = piece.nearest_point(p);
            let d = distance(p, q);
            if d < best.0 {
                best = (d, q);
            }
        }
        best.1
    }

    /// Where the ray from `origin` (an interior point) in direction `angle` leaves the body.
    pub fn ray_exit(&self, origin: Point<T>, angle: T) -> Option<Point<T>> {
        let dir = Point::polar(T::one(), angle);
        let mut best: Option<T> = None;
        let mut keep = |t: T| {
            if t > T::zero() && best.is_none_or(|b| t > b) {
                best = Some(t);
            }
        };
        for piece in self.pieces() {
            match *piece {
                BoundaryPiece::Segment { a, b } => {
                    let e = b - a;
                    let den = dir.cross(e);
                    if den.abs() <= T::epsilon() {
                        continue;
                    }
                    let w = a - origin;
                    let t = w.cross(e) / den;
                    let s = w.cross(dir) / den;
                    let slack = T::lit(1e-12);
                    if s >= -slack && s <= T::one() + slack {
                        keep(t);
                    }
                }
                BoundaryPiece::Arc { center, radius, .. } => {
                    let w = origin - center;
                    let bq = w.dot(dir);
                    let cq = w.norm2() - radius * radius;
                    let disc = bq * bq - cq;
                    if disc < T::zero() {
                        continue;
                    }
                    let t = -bq + disc.sqrt();
                    let q = origin + dir * t;
                    if piece.arc_contains_angle((q - center).angle(), T::lit(1e-12)) {
                        keep(t);
                    }
                }
            }
        }
        best.map(|t| origin + dir * t)
    }

    /// Locates a boundary point as a parameter `s = piece + t` in `[0, n)`.
    pub fn locate(&self, p: Point<T>, tol: &Tolerance<T>) -> Option<T> {
        let n = self.pieces().len();
        let mut best: Option<(T, T)> = None;
        for (i, piece) in self.pieces().iter().enumerate() {
            let d = piece.distance_to(p);
            if d <= tol.eps_geom && best.is_none_or(|(bd, _)| d < bd) {
                let s = T::from_usize_lossy(i) + piece.param_of(p);
                best = Some((d, s));
            }
        }
        best.map(|(_, s)| {
            let nn = T::from_usize_lossy(n);
            if s >= nn {
                s - nn
            } else {
                s
            }
        })
    }

    /// The boundary traversed counterclockwise from `from` to `to` (both on
    /// the boundary). Endpoints are reproduced exactly.
    pub fn boundary_path(
        &self,
        from: Point<T>,
        to: Point<T>,
        tol: &Tolerance<T>,
    ) -> Result<Vec<BoundaryPiece<T>>> {
        let sf = self
            .locate(from, tol)
            .ok_or_else(|| Error::InvalidPartition("path start is not on the boundary".into()))?;
        let st = self
            .locate(to, tol)
            .ok_or_else(|| Error::InvalidPartition("path end is not on the boundary".into()))?;
        if distance(from, to) <= tol.eps_geom {
            return Err(Error::InvalidPartition(
                "boundary path endpoints coincide".into(),
            ));
        }
        let pieces = self.pieces();
        let n = pieces.len();
        let nn = T::from_usize_lossy(n);
        let end = if st > sf { st } else { st + nn };
        let mut out: Vec<BoundaryPiece<T>> = Vec::new();
        let mut s = sf;
        while s < end {
            let i_raw = s.floor().to_usize().unwrap_or(0);
            let piece = pieces[i_raw % n];
            let base = T::from_usize_lossy(i_raw);
            let t0 = s - base;
            let t1 = (end - base).min(T::one());
            let sub = piece.sub_piece(t0, t1);
            if sub.length() > tol.eps_geom {
                out.push(sub);
            }
            s = base + T::one();
        }
        let Some(first) = out.first_mut() else {
            return Err(Error::InvalidPartition("empty boundary path".into()));
        };
        *first = first.with_endpoints(from, first.end());
        let last = out.last_mut().expect("nonempty");
        *last = last.with_endpoints(last.start(), to);
        Ok(out)
    }

    /// Inradius, circumradius, area and perimeter. For symmetric bodies the
    /// radii are the exact min/max distance from the center to the boundary;
    /// otherwise a max-min program over boundary half-planes gives the
    /// inradius and the minimal enclosing circle the circumradius.
    pub fn metrics(&self) -> BodyMetrics<T> {
        let area = self.area();
        let perimeter = self.perimeter();
        if self.symmetry_order >= 2 {
            let c = self.center;
            let inradius = self
                .pieces()
                .iter()
                .map(|p| p.distance_to(c))
                .fold(T::infinity(), T::min);
            let circumradius = self
                .pieces()
                .iter()
                .map(|p| p.max_distance(c))
                .fold(T::zero(), T::max);
            return BodyMetrics {
                inradius,
                circumradius,
                area,
                perimeter,
            };
        }
        let sample = self
            .boundary
            .discretize(T::lit(T::DEFAULT_SAGITTA) * T::lit(0.1))
            .unwrap_or_else(|_| self.boundary.vertices());
        BodyMetrics {
            inradius: largest_inscribed_radius(&sample),
            circumradius: min_enclosing_circle(&sample).1,
            area,
            perimeter,
        }
    }

    /// Euclidean diameter of the body (exact on vertices and arcs).
    pub fn diameter(&self) -> T {
        self.boundary
            .diameter(T::lit(T::DEFAULT_SAGITTA))
            .map(|d| d.value)
            .unwrap_or_else(|_| T::zero())
    }

    /// Uniform dilation about the origin.
    pub fn scaled(&self, s: T) -> Self {
        self.similarity(T::zero(), s, Point::origin())
    }
}

/// Tangent turning must be nonnegative at every joint and total `2pi`.
fn check_convex<T: Scalar>(boundary: &PieceLoop<T>) -> Result<()> {
    let pieces = boundary.pieces();
    let n = pieces.len();
    let mut total = T::zero();
    let slack = T::lit(1e-7);
    for i in 0..n {
        let (p, q) = (pieces[i], pieces[(i + 1) % n]);
        let (u, v) = (p.tangent_at(T::one()), q.tangent_at(T::zero()));
        let turn = u.cross(v).atan2(u.dot(v));
        if turn < -slack {
            return Err(Error::InvalidBody(format!(
                "boundary turns right after piece {i}"
            )));
        }
        total += turn + p.sweep();
    }
    if (total - T::TAU()).abs() > T::lit(1e-6) {
        return Err(Error::InvalidBody(
            "boundary is not a simple convex curve".into(),
        ));
    }
    Ok(())
}

/// Largest inscribed circle radius of a convex polygon: maximizes
/// `min_i (c_i - n_i . x)` by nested golden-section search (the function is
/// concave, so the nested search is exact up to rounding).
fn largest_inscribed_radius<T: Scalar>(poly: &[Point<T>]) -> T {
    let n = poly.len();
    let planes: Vec<(Point<T>, T)> = (0..n)
        .filter_map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let e = b - a;
            let len = e.norm();
            (len > T::zero()).then(|| {
                let nrm = Point::new(e.y, -e.x) * (T::one() / len);
                (nrm, nrm.dot(a))
            })
        })
        .collect();
    let f = |p: Point<T>| {
        planes
            .iter()
            .map(|&(nrm, c)| c - nrm.dot(p))
            .fold(T::infinity(), T::min)
    };
    let (lo, hi) = poly.iter().fold(
        (
            Point::new(T::infinity(), T::infinity()),
            Point::new(T::neg_infinity(), T::neg_infinity()),
        ),
        |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        },
    );
    let inner = |x: T| golden_max(|y| f(Point::new(x, y)), lo.y, hi.y, 90).1;
    golden_max(inner, lo.x, hi.x, 90).1
}

/// Golden-section maximization of a unimodal function; returns `(argmax, max)`.
pub fn golden_max<T: Scalar>(f: impl Fn(T) -> T, mut a: T, mut b: T, iters: usize) -> (T, T) {
    let g = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimal enclosing circle (Welzl's incremental algorithm, seeded shuffle).
pub fn min_enclosing_circle<T: Scalar>(pts: &[Point<T>]) -> (Point<T>, T) {
    let mut p: Vec<Point<T>> = pts.to_vec();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    if p.is_empty() {
        return (Point::origin(), T::zero());
    }
    let slack = T::one() + T::lit(1e-12);
    let inside = |c: (Point<T>, T), q: Point<T>| distance(c.0, q) <= c.1 * slack;
    let mut c = (p[0], T::zero());
    for i in 1..p.len() {
        if inside(c, p[i]) {
            continue;
        }
        c = (p[i], T::zero());
        for j in 0..i {
            if inside(c, p[j]) {
                continue;
            }
            let mid = p[i].lerp(p[j], T::lit(0.5));
            c = (mid, distance(mid, p[i]));
            for k in 0..j {
                if inside(c, p[k]) {
                    continue;
                }
                c = circumcircle(p[i], p[j], p[k]).unwrap_or(c);
            }
        }
    }
    c
}

fn circumcircle<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> Option<(Point<T>, T)> {
    let (b, c) = (b - a, c - a);
    let d = T::lit(2.0) * b.cross(c);
    if d.abs() <= T::epsilon() {
        return None;
    }
    let ux = (c.y * b.norm2() - b.y * c.norm2()) / d;
    let uy = (b.x * c.norm2() - c.x * b.norm2()) / d;
    let u = Point::new(ux, uy);
    Some((a + u, u.norm()))
}

fn positive<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, "must be positive and finite"))
    }
}

/// Regular k-gon with the given circumradius; vertex 0 at polar angle `phase`.
pub fn make_regular_kgon<T: Scalar>(
    k: usize,
    circumradius: T,
    center: Point<T>,
    phase: T,
) -> Result<ConvexBody<T>> {
    if k < 3 {
        return Err(Error::param("k", "a regular polygon needs k >= 3"));
    }
    positive("circumradius", circumradius)?;
    let step = T::TAU() / T::from_usize_lossy(k);
    let v: Vec<Point<T>> = (0..k)
        .map(|i| center + Point::polar(circumradius, phase + step * T::from_usize_lossy(i)))
        .collect();
    let pieces = (0..k)
        .map(|i| BoundaryPiece::segment(v[i], v[(i + 1) % k]))
        .collect();
    Ok(ConvexBody::new_trusted(pieces, center, k))
}

/// Disc made of four quarter arcs.
pub fn make_disc<T: Scalar>(radius: T, center: Point<T>) -> Result<ConvexBody<T>> {
    positive("radius", radius)?;
    let q = T::FRAC_PI_2();
    let pieces = (0..4)
        .map(|i| {
            let a0 = q * T::from_usize_lossy(i);
            BoundaryPiece::arc_between_angles(center, radius, a0, a0 + q)
        })
        .collect();
    Ok(ConvexBody::new_trusted(pieces, center, DISC_SYMMETRY_CAP))
}

/// Reuleaux k-gon of constant width `width` (k odd); a vertex points up.
pub fn make_reuleaux<T: Scalar>(k: usize, width: T, center: Point<T>) -> Result<ConvexBody<T>> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::param("k", "Reuleaux polygons need an odd k >= 3"));
    }
    positive("width", width)?;
    let kk = T::from_usize_lossy(k);
    let rho = width / (T::lit(2.0) * (T::PI() / (T::lit(2.0) * kk)).cos());
    let step = T::TAU() / kk;
    let v: Vec<Point<T>> = (0..k)
        .map(|i| center + Point::polar(rho, T::FRAC_PI_2() + step * T::from_usize_lossy(i)))
        .collect();
    let m = (k - 1) / 2;
    let pieces = (0..k)
        .map(|j| BoundaryPiece::arc(v[j], v[(j + 1) % k], v[(j + k - m) % k], width))
        .collect();
    Ok(ConvexBody::new_trusted(pieces, center, k))
}

/// Intersection of the disc of radius `circle_radius` with the regular k-gon
/// of inradius `kgon_inradius`, both centered at the origin. Edge normals
/// point at polar angles `2pi i / k`.
pub fn make_circle_kgon_intersection<T: Scalar>(
    k: usize,
    kgon_inradius: T,
    circle_radius: T,
) -> Result<ConvexBody<T>> {
    if k < 3 {
        return Err(Error::param("k", "needs k >= 3"));
    }
    positive("kgon_inradius", kgon_inradius)?;
    positive("circle_radius", circle_radius)?;
    let o = Point::origin();
    let kk = T::from_usize_lossy(k);
    let half = T::PI() / kk;
    let step = T::TAU() / kk;
    if kgon_inradius >= circle_radius {
        return make_disc(circle_radius, o);
    }
    let circum = kgon_inradius / half.cos();
    if circum <= circle_radius {
        return make_regular_kgon(k, circum, o, half);
    }
    let beta = (kgon_inradius / circle_radius).acos();
    let mut pieces = Vec::with_capacity(2 * k);
    for i in 0..k {
        let th = step * T::from_usize_lossy(i);
        let a = Point::polar(circle_radius, th - beta);
        let b = Point::polar(circle_radius, th + beta);
        pieces.push(BoundaryPiece::segment(a, b));
        let next = Point::polar(circle_radius, th + step - beta);
        pieces.push(BoundaryPiece::arc(b, next, o, circle_radius));
    }
    Ok(ConvexBody::new_trusted(pieces, o, k))
}
