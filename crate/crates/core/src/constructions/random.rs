//! Seeded random partitions and subdivisions for falsification suites and search seeds.

use rand::Rng;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geometry::{distance, PieceLoop, Point, Polyline, Tolerance};
use crate::scalar::Scalar;
use crate::subdivision::mesh::Mesh;
use crate::subdivision::{KPartition, KSubdivision};

const MAX_TRIES: usize = 10_000;

fn uniform<T: Scalar, R: Rng>(rng: &mut R, lo: T, hi: T) -> T {
    lo + (hi - lo) * T::lit(rng.random::<f64>())
}

/// Uniform interior point at distance more than `margin` from the boundary.
pub fn random_interior_point<T: Scalar, R: Rng>(
    body: &ConvexBody<T>,
    margin: T,
    rng: &mut R,
) -> Result<Point<T>> {
    let (lo, hi) = body.bbox();
    for _ in 0..MAX_TRIES {
        let p = Point::new(uniform(rng, lo.x, hi.x), uniform(rng, lo.y, hi.y));
        if body.contains_interior(p, margin) {
            return Ok(p);
        }
    }
    Err(Error::Computation(
        "rejection sampling found no interior point".into(),
    ))
}

/// A random valid k-partition: random interior common point, random distinct
/// boundary anchors, each curve straight or bent once.
pub fn random_partition<T: Scalar, R: Rng>(
    body: &ConvexBody<T>,
    k: usize,
    rng: &mut R,
    tol: &Tolerance<T>,
) -> Result<KPartition<T>> {
    if k < 2 {
        return Err(Error::param("k", "partitions need k >= 2"));
    }
    let scale = body.metrics().circumradius;
    let margin = scale * T::lit(1e-3);
    let min_gap = T::lit(1e-3);
    for _ in 0..MAX_TRIES {
        let c = random_interior_point(body, margin, rng)?;
        let mut angles: Vec<T> = (0..k).map(|_| uniform(rng, T::zero(), T::TAU())).collect();
        angles.sort_by(crate::scalar::cmp);
        let tight = (0..k).any(|i| {
            let next = if i + 1 < k {
                angles[i + 1]
            } else {
                angles[0] + T::TAU()
            };
            next - angles[i] < min_gap
        });
        if tight {
            continue;
        }
        let mut curves = Vec::with_capacity(k);
        for &a in &angles {
            let Some(e) = body.ray_exit(body.center(), a) else {
                break;
            };
            let mut v = vec![c, e];
            if rng.random_bool(0.5) {
                let len = distance(c, e);
                let t = uniform(rng, T::lit(0.3), T::lit(0.7));
                let off = uniform(rng, -T::lit(0.25), T::lit(0.25)) * len;
                let m = c.lerp(e, t) + (e - c).perp().normalized() * off;
                v.insert(1, m);
            }
            curves.push(v);
        }
        if curves.len() != k {
            continue;
        }
        let Ok(curves) = curves
            .into_iter()
            .map(|v| Polyline::new(v, tol))
            .collect::<Result<Vec<_>>>()
        else {
            continue;
        };
        if let Ok(p) = KPartition::new(body.clone(), c, curves, tol) {
            if p.regions(tol).is_ok() {
                return Ok(p);
            }
        }
    }
    Err(Error::Computation("no valid random partition found".into()))
}

/// Voronoi cells of `sites` clipped to the body, in site order.
pub fn voronoi_cells<T: Scalar>(
    body: &ConvexBody<T>,
    sites: &[Point<T>],
    tol: &Tolerance<T>,
) -> Result<Vec<PieceLoop<T>>> {
    let mut cells = Vec::with_capacity(sites.len());
    for (i, &s) in sites.iter().enumerate() {
        let mut cell = Some(body.boundary().clone());
        for (j, &t) in sites.iter().enumerate() {
            if i == j {
                continue;
            }
            let n = t - s;
            let c = (t.norm2() - s.norm2()) * T::lit(0.5);
            cell = cell.and_then(|p| p.clip_halfplane(n, c, tol));
        }
        cells.push(cell.ok_or_else(|| Error::Computation(format!("Voronoi cell {i} is empty")))?);
    }
    Ok(cells)
}

/// Moves each site to the area centroid of its cell, `iterations` times.
pub fn lloyd_relax<T: Scalar>(
    body: &ConvexBody<T>,
    sites: &[Point<T>],
    iterations: usize,
    tol: &Tolerance<T>,
) -> Result<Vec<Point<T>>> {
    let mut s = sites.to_vec();
    for _ in 0..iterations {
        s = voronoi_cells(body, &s, tol)?
            .iter()
            .map(|c| c.centroid())
            .collect();
    }
    Ok(s)
}

/// `k` random interior sites pairwise farther apart than `min_sep`.
pub fn random_sites<T: Scalar, R: Rng>(
    body: &ConvexBody<T>,
    k: usize,
    rng: &mut R,
) -> Result<Vec<Point<T>>> {
    let m = body.metrics();
    let margin = m.circumradius * T::lit(1e-3);
    let min_sep = (m.area / T::from_usize_lossy(k)).sqrt() * T::lit(0.2);
    let mut sites: Vec<Point<T>> = Vec::with_capacity(k);
    for _ in 0..MAX_TRIES {
        if sites.len() == k {
            break;
        }
        let p = random_interior_point(body, margin, rng)?;
        if sites.iter().all(|&q| distance(p, q) > min_sep) {
            sites.push(p);
        }
    }
    if sites.len() < k {
        return Err(Error::Computation("could not place separated sites".into()));
    }
    Ok(sites)
}

/// Voronoi subdivision of `k` random sites, optionally roughened by random
/// valid mesh moves.
pub fn random_subdivision<T: Scalar, R: Rng>(
    body: &ConvexBody<T>,
    k: usize,
    rng: &mut R,
    tol: &Tolerance<T>,
) -> Result<KSubdivision<T>> {
    if k < 1 {
        return Err(Error::param("k", "needs k >= 1"));
    }
    let sites = random_sites(body, k, rng)?;
    let cells = voronoi_cells(body, &sites, tol)?;
    let s = KSubdivision::new(body.clone(), cells);
    if k < 2 || rng.random_bool(0.5) {
        return Ok(s);
    }
    let mut mesh = Mesh::from_subdivision(&s, tol)?;
    let scale = (body.area() / T::from_usize_lossy(k)).sqrt() * T::lit(0.3);
    let moves = rng.random_range(1..40);
    for _ in 0..moves {
        let v = rng.random_range(0..mesh.vertices().len());
        let delta = Point::polar(
            uniform(rng, T::zero(), scale),
            uniform(rng, T::zero(), T::TAU()),
        );
        if let Some(p) = mesh.propose(v, delta) {
            mesh.try_move(v, p);
        }
    }
    mesh.realize()
}
