//! Shared-vertex representation of a polygonal subdivision, supporting
//! local vertex moves that keep the tiling valid.

use super::KSubdivision;
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{distance, segments_cross, BoundaryPiece, PieceLoop, Point, Tolerance};
use crate::scalar::{cmp, Scalar};

/// How a face edge runs from one mesh vertex to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Straight segment through the interior.
    Straight,
    /// Counterclockwise along the body boundary.
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshVertex<T> {
    pub pos: Point<T>,
    pub on_boundary: bool,
}

/// Faces are cyclic vertex lists with the kind of the edge leaving each vertex.
#[derive(Clone, Debug)]
pub struct Mesh<T: Scalar> {
    body: ConvexBody<T>,
    verts: Vec<MeshVertex<T>>,
    faces: Vec<Vec<(usize, EdgeKind)>>,
    incident: Vec<Vec<usize>>,
    /// Straight edges as sorted vertex pairs; the topology never changes.
    edges: Vec<(usize, usize)>,
    tol: Tolerance<T>,
}

/// Sagitta used when checking realized faces for simplicity.
const MOVE_CHECK_SAGITTA: f64 = 1e-3;

impl<T: Scalar> Mesh<T> {
    /// Converts a subdivision whose interior edges are straight segments.
    pub fn from_subdivision(s: &KSubdivision<T>, tol: &Tolerance<T>) -> Result<Self> {
        let body = s.body().clone();
        let eps = tol.eps_geom * T::lit(100.0);
        let on_body = |p: Point<T>| body.distance_to_boundary(p) <= eps;
        let is_boundary_piece = |p: &BoundaryPiece<T>| {
            on_body(p.start()) && on_body(p.end()) && on_body(p.point_at(T::lit(0.5)))
        };
        // Real vertices: endpoints of interior (straight) pieces.
        let mut verts: Vec<MeshVertex<T>> = Vec::new();
        let find_or_add = |p: Point<T>, verts: &mut Vec<MeshVertex<T>>| -> usize {
            if let Some(i) = verts.iter().position(|v| distance(v.pos, p) <= eps) {
                i
            } else {
                verts.push(MeshVertex {
                    pos: p,
                    on_boundary: on_body(p),
                });
                verts.len() - 1
            }
        };
        for r in s.regions() {
            for p in r.pieces() {
                if !is_boundary_piece(p) {
                    if p.is_arc() {
                        return Err(Error::InvalidSubdivision(
                            "interior arcs are not supported by the mesh".into(),
                        ));
                    }
                    find_or_add(p.start(), &mut verts);
                    find_or_add(p.end(), &mut verts);
                }
            }
        }
        let lookup = |p: Point<T>, verts: &[MeshVertex<T>]| {
            verts.iter().position(|v| distance(v.pos, p) <= eps)
        };
        let mut faces = Vec::with_capacity(s.k());
        for (ri, r) in s.regions().iter().enumerate() {
            let pieces = r.pieces();
            // Rotate so the loop starts at a real vertex.
            let Some(start) = pieces
                .iter()
                .position(|p| lookup(p.start(), &verts).is_some())
            else {
                return Err(Error::InvalidSubdivision(format!(
                    "region {ri} has no interior edge"
                )));
            };
            let mut face: Vec<(usize, EdgeKind)> = Vec::new();
            let n = pieces.len();
            let mut i = 0;
            while i < n {
                let p = pieces[(start + i) % n];
                let v = lookup(p.start(), &verts).expect("loop starts at a real vertex");
                if is_boundary_piece(&p) {
                    // Skip boundary pieces until the next real vertex.
                    let mut j = i + 1;
                    while j < n && lookup(pieces[(start + j) % n].start(), &verts).is_none() {
                        j += 1;
                    }
                    face.push((v, EdgeKind::Boundary));
                    i = j;
                } else {
                    face.push((v, EdgeKind::Straight));
                    // Vertices of other faces lying inside this segment (T-junctions).
                    let (a, b) = (p.start(), p.end());
                    let mut mids: Vec<(T, usize)> = verts
                        .iter()
                        .enumerate()
                        .filter(|(_, w)| {
                            p.distance_to(w.pos) <= eps
                                && distance(w.pos, a) > eps
                                && distance(w.pos, b) > eps
                        })
                        .map(|(wi, w)| (p.param_of(w.pos), wi))
                        .collect();
                    mids.sort_by(|x, y| cmp(&x.0, &y.0));
                    face.extend(mids.into_iter().map(|(_, wi)| (wi, EdgeKind::Straight)));
                    i += 1;
                }
            }
            faces.push(face);
        }
        let mut incident = vec![Vec::new(); verts.len()];
        for (fi, f) in faces.iter().enumerate() {
            for &(v, _) in f {
                if !incident[v].contains(&fi) {
                    incident[v].push(fi);
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for f in &faces {
            let m = f.len();
            for i in 0..m {
                if f[i].1 == EdgeKind::Straight {
                    let (a, b) = (f[i].0, f[(i + 1) % m].0);
                    let e = (a.min(b), a.max(b));
                    if !edges.contains(&e) {
                        edges.push(e);
                    }
                }
            }
        }
        Ok(Mesh {
            body,
            verts,
            faces,
            incident,
            edges,
            tol: *tol,
        })
    }

    pub fn body(&self) -> &ConvexBody<T> {
        &self.body
    }

    pub fn vertices(&self) -> &[MeshVertex<T>] {
        &self.verts
    }

    pub fn faces(&self) -> &[Vec<(usize, EdgeKind)>] {
        &self.faces
    }

    /// Faces touching vertex `v`.
    pub fn incident_faces(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn realize_face(&self, f: usize) -> Result<PieceLoop<T>> {
        let face = &self.faces[f];
        let m = face.len();
        let mut pieces = Vec::with_capacity(m);
        for i in 0..m {
            let (v, kind) = face[i];
            let w = face[(i + 1) % m].0;
            let (a, b) = (self.verts[v].pos, self.verts[w].pos);
            match kind {
                EdgeKind::Straight => pieces.push(BoundaryPiece::segment(a, b)),
                EdgeKind::Boundary => pieces.extend(self.body.boundary_path(a, b, &self.tol)?),
            }
        }
        Ok(PieceLoop::new(pieces))
    }

    pub fn realize(&self) -> Result<KSubdivision<T>> {
        let regions = (0..self.faces.len())
            .map(|f| self.realize_face(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(KSubdivision::new(self.body.clone(), regions))
    }

    /// Polar angle of a boundary vertex around the body center, in `[0, 2pi)`.
    fn boundary_angle(&self, p: Point<T>) -> T {
        crate::geometry::wrap_angle((p - self.body.center()).angle())
    }

    /// Proposed position for vertex `v` displaced by `delta`: interior
    /// vertices move freely, boundary vertices slide along the boundary by
    /// the angle `delta.x / R`-ish (the tangential component).
    pub fn propose(&self, v: usize, delta: Point<T>) -> Option<Point<T>> {
        let mv = self.verts[v];
        if !mv.on_boundary {
            return Some(mv.pos + delta);
        }
        let c = self.body.center();
        let rel = mv.pos - c;
        let r = rel.norm();
        if r <= T::zero() {
            return None;
        }
        let tangential = rel.perp().normalized().dot(delta);
        self.body.ray_exit(c, rel.angle() + tangential / r)
    }

    /// Puts `v` back to a position it held while the mesh was valid.
    pub(crate) fn restore(&mut self, v: usize, p: Point<T>) {
        self.verts[v].pos = p;
    }

    /// Moves vertex `v` to `p` if the tiling stays valid; returns whether it moved.
    pub fn try_move(&mut self, v: usize, p: Point<T>) -> bool {
        if !p.is_finite() {
            return false;
        }
        let eps = self.tol.eps_geom * T::lit(100.0);
        let old = self.verts[v].pos;
        if self.verts[v].on_boundary {
            // Keep the cyclic order of boundary vertices.
            let others: Vec<T> = self
                .verts
                .iter()
                .enumerate()
                .filter(|(i, w)| *i != v && w.on_boundary)
                .map(|(_, w)| self.boundary_angle(w.pos))
                .collect();
            let (a0, a1) = (self.boundary_angle(old), self.boundary_angle(p));
            let rel = |x: T| crate::geometry::wrap_angle(x - a0);
            let d = crate::geometry::wrap_angle(a1 - a0);
            let forward = d <= T::PI();
            let blocked = others.iter().any(|&o| {
                let ro = rel(o);
                if forward {
                    ro <= d + T::lit(1e-9)
                } else {
                    ro >= d - T::lit(1e-9)
                }
            });
            if blocked || distance(old, p) <= eps {
                return false;
            }
        } else if !self.body.contains_interior(p, eps) {
            return false;
        }
        self.verts[v].pos = p;
        if self.move_is_valid(v) {
            true
        } else {
            self.verts[v].pos = old;
            false
        }
    }

    fn move_is_valid(&self, v: usize) -> bool {
        let eps = self.tol.eps_geom * T::lit(100.0);
        // Straight edges incident to v must not cross any other straight edge.
        let all_edges = &self.edges;
        let incident_edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| a == v || b == v);
        for (a, b) in incident_edges {
            let (p1, p2) = (self.verts[a].pos, self.verts[b].pos);
            if distance(p1, p2) <= eps {
                return false;
            }
            for &(c, d) in all_edges {
                if c == a || c == b || d == a || d == b {
                    continue;
                }
                let (q1, q2) = (self.verts[c].pos, self.verts[d].pos);
                if segments_cross(p1, p2, q1, q2)
                    || crate::geometry::segment_distance(p1, p2, q1, q2) <= eps
                {
                    return false;
                }
            }
        }
        // Every incident face must stay a simple loop of positive area.
        for &f in &self.incident[v] {
            let Ok(face) = self.realize_face(f) else {
                return false;
            };
            if face.signed_area() <= self.tol.eps_area {
                return false;
            }
            let Ok(poly) = face.discretize(T::lit(MOVE_CHECK_SAGITTA)) else {
                return false;
            };
            if !polygon_is_simple(&poly) {
                return false;
            }
        }
        true
    }
}

/// O(n^2) simplicity test for a closed polygon.
pub fn polygon_is_simple<T: Scalar>(poly: &[Point<T>]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            if segments_cross(a, b, c, d) {
                return false;
            }
            // Touching at a vertex also breaks simplicity.
            if a == c || a == d || b == c || b == d {
                return false;
            }
        }
    }
    true
}
