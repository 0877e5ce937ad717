use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{distance, PieceLoop, Point, Tolerance};
use crate::scalar::{cmp, Scalar};
use crate::subdivision::KSubdivision;

/// Hexagonal lattice whose fundamental cell is a regular hexagon of
/// diameter `cell_diameter`, one vertex at polar angle `orientation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct HexLattice<T> {
    pub cell_diameter: T,
    pub origin: Point<T>,
    pub orientation: T,
}

impl<T: Scalar> HexLattice<T> {
    pub fn new(cell_diameter: T, origin: Point<T>, orientation: T) -> Result<Self> {
        if !(cell_diameter > T::zero() && cell_diameter.is_finite()) {
            return Err(Error::param("cell_diameter", "must be positive"));
        }
        Ok(HexLattice {
            cell_diameter,
            origin,
            orientation,
        })
    }

    fn basis(&self) -> (Point<T>, Point<T>) {
        let s = self.cell_diameter * T::lit(0.5);
        let h = T::lit(3.0).sqrt() * T::lit(0.5) * s;
        (
            Point::new(T::lit(1.5) * s, h).rotate(self.orientation),
            Point::new(T::zero(), T::lit(2.0) * h).rotate(self.orientation),
        )
    }

    pub fn cell_center(&self, i: i64, j: i64) -> Point<T> {
        let (a1, a2) = self.basis();
        self.origin + a1 * T::lit(i as f64) + a2 * T::lit(j as f64)
    }

    /// Counterclockwise vertices of cell `(i, j)`.
    pub fn cell(&self, i: i64, j: i64) -> [Point<T>; 6] {
        let c = self.cell_center(i, j);
        let s = self.cell_diameter * T::lit(0.5);
        let step = T::FRAC_PI_3();
        std::array::from_fn(|m| c + Point::polar(s, self.orientation + step * T::lit(m as f64)))
    }

    /// Indices of all cells whose center lies within `radius + cell_diameter`
    /// of `center`, in lexicographic order.
    pub fn cells_near(&self, center: Point<T>, radius: T) -> Vec<(i64, i64)> {
        let s = self.cell_diameter * T::lit(0.5);
        let reach = radius + self.cell_diameter;
        let off = distance(center, self.origin);
        let n = ((reach + off) / (T::lit(1.5) * s))
            .ceil()
            .to_i64()
            .unwrap_or(0)
            + 2;
        let mut out = Vec::new();
        for i in -n..=n {
            for j in -2 * n..=2 * n {
                if distance(self.cell_center(i, j), center) <= reach {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Positive root of `(k 3 sqrt3/8 - pi) d^2 - P d - A = 0`.
pub fn hex_cell_diameter<T: Scalar>(area: T, perimeter: T, k: usize) -> Result<T> {
    let lead = T::from_usize_lossy(k) * T::lit(3.0) * T::lit(3.0).sqrt() / T::lit(8.0) - T::PI();
    if k < 5 || !(lead > T::zero()) {
        return Err(Error::param("k", "the hexagonal construction needs k >= 5"));
    }
    let disc = perimeter * perimeter + T::lit(4.0) * lead * area;
    Ok((perimeter + disc.sqrt()) / (T::lit(2.0) * lead))
}

/// Clips the body to hexagonal cells of diameter `d_k`, then splits the
/// largest cells by centroid chords perpendicular to their diameter until
/// there are exactly `k` regions.
pub fn hex_subdivision<T: Scalar>(
    c: &ConvexBody<T>,
    k: usize,
    tol: &Tolerance<T>,
) -> Result<(KSubdivision<T>, T)> {
    let m = c.metrics();
    let dk = hex_cell_diameter(m.area, m.perimeter, k)?;
    let lattice = HexLattice::new(dk, c.center(), T::zero())?;
    let (lo, hi) = c.bbox();
    let mid = lo.lerp(hi, T::lit(0.5));
    let radius = distance(lo, hi) * T::lit(0.5);
    let eps = tol.eps_geom;
    let mut regions: Vec<PieceLoop<T>> = Vec::new();
    for (i, j) in lattice.cells_near(mid, radius) {
        let cell = lattice.cell(i, j);
        if cell.iter().all(|&p| c.contains_interior(p, eps)) {
            regions.push(PieceLoop::polygon(&cell));
            continue;
        }
        let mut piece = Some(c.boundary().clone());
        for e in 0..6 {
            let (a, b) = (cell[e], cell[(e + 1) % 6]);
            let nrm = Point::new(b.y - a.y, a.x - b.x);
            piece = piece.and_then(|p| p.clip_halfplane(nrm, nrm.dot(a), tol));
        }
        if let Some(p) = piece {
            regions.push(p);
        }
    }
    if regions.len() > k {
        return Err(Error::Computation(format!(
            "{} lattice cells meet the body, more than k = {k}",
            regions.len()
        )));
    }
    let sag = T::lit(T::DEFAULT_SAGITTA);
    while regions.len() < k {
        let (idx, _) = regions
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.area()))
            .max_by(|x, y| cmp(&x.1, &y.1).then(y.0.cmp(&x.0)))
            .expect("nonempty");
        let r = regions[idx].clone();
        let diam = r.diameter(sag)?;
        let u = (diam.b - diam.a).normalized();
        let g = r.centroid();
        let left = r.clip_halfplane(u, u.dot(g), tol);
        let right = r.clip_halfplane(-u, -u.dot(g), tol);
        match (left, right) {
            (Some(l), Some(rr)) => {
                regions[idx] = l;
                regions.push(rr);
            }
            _ => {
                return Err(Error::Computation(
                    "centroid chord failed to split a cell".into(),
                ))
            }
        }
    }
    Ok((KSubdivision::new(c.clone(), regions), dk))
}
