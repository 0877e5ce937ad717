//! Simulated annealing on shared mesh vertices of a polygonal subdivision.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{run_restarts, Objective, RestartOutcome, SearchConfig, SearchResult};
use crate::body::ConvexBody;
use crate::bounds::{best_lower_bound, Regime};
use crate::constructions::random::{lloyd_relax, random_sites, voronoi_cells};
use crate::constructions::{hex_subdivision, standard_partition};
use crate::error::{Error, Result};
use crate::geometry::{Point, Tolerance};
use crate::scalar::Scalar;
use crate::subdivision::mesh::Mesh;
use crate::subdivision::KSubdivision;

/// Starting configuration of one restart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    /// Regions of the standard partition (k-symmetric bodies only).
    Standard,
    /// Voronoi cells of the center plus `k - 1` sites on a concentric ring.
    Ring,
    /// Centroidal Voronoi cells of random sites.
    Lloyd,
    /// Voronoi cells of random sites.
    Voronoi,
    /// Hexagonal lattice construction (k >= 5).
    Hex,
}

/// Seed kinds available for `(body, k)`, in the order restarts cycle through them.
pub fn seed_kinds<T: Scalar>(body: &ConvexBody<T>, k: usize, tol: &Tolerance<T>) -> Vec<SeedKind> {
    let mut kinds = Vec::new();
    if k >= 3 && body.verify_symmetry(k, tol) {
        kinds.push(SeedKind::Standard);
    }
    kinds.extend([SeedKind::Ring, SeedKind::Lloyd, SeedKind::Voronoi]);
    if k >= 5 {
        kinds.push(SeedKind::Hex);
    }
    kinds
}

fn seed<T: Scalar, R: Rng>(
    body: &ConvexBody<T>,
    k: usize,
    kind: SeedKind,
    rng: &mut R,
    tol: &Tolerance<T>,
) -> Result<KSubdivision<T>> {
    let cells = |sites: &[Point<T>]| -> Result<KSubdivision<T>> {
        Ok(KSubdivision::new(
            body.clone(),
            voronoi_cells(body, sites, tol)?,
        ))
    };
    match kind {
        SeedKind::Standard => standard_partition(body, k, tol)?.regions(tol),
        SeedKind::Ring => {
            let m = body.metrics();
            let radius = m.inradius * T::lit(0.45 + 0.3 * rng.random::<f64>());
            let phase = T::lit(rng.random::<f64>()) * T::TAU();
            let c = body.center();
            let step = T::TAU() / T::from_usize_lossy(k - 1);
            let mut sites = vec![c];
            sites.extend(
                (0..k - 1).map(|i| c + Point::polar(radius, phase + step * T::from_usize_lossy(i))),
            );
            cells(&sites)
        }
        SeedKind::Lloyd => {
            let sites = random_sites(body, k, rng)?;
            cells(&lloyd_relax(body, &sites, 30, tol)?)
        }
        SeedKind::Voronoi => cells(&random_sites(body, k, rng)?),
        SeedKind::Hex => hex_subdivision(body, k, tol).map(|(s, _)| s),
    }
}

fn face_diameter<T: Scalar>(mesh: &Mesh<T>, f: usize) -> Option<T> {
    let face = mesh.realize_face(f).ok()?;
    face.diameter(T::lit(T::DEFAULT_SAGITTA))
        .ok()
        .map(|d| d.value)
}

/// Callback invoked with `(restart, iteration, subdivision)` after every accepted move.
pub type Observer<'a, T> = &'a (dyn Fn(usize, usize, &KSubdivision<T>) + Sync);

/// Minimizes `d_M` over k-subdivisions by moving shared mesh vertices.
/// Restarts cycle through [`seed_kinds`].
pub fn optimize_subdivision<T: Scalar>(
    body: &ConvexBody<T>,
    k: usize,
    cfg: &SearchConfig<T>,
    tol: &Tolerance<T>,
) -> Result<SearchResult<T>> {
    optimize_subdivision_observed(body, k, cfg, tol, None)
}

/// [`optimize_subdivision`] with an observer of accepted states.
pub fn optimize_subdivision_observed<T: Scalar>(
    body: &ConvexBody<T>,
    k: usize,
    cfg: &SearchConfig<T>,
    tol: &Tolerance<T>,
    observer: Option<Observer<'_, T>>,
) -> Result<SearchResult<T>> {
    cfg.validate()?;
    if k < 3 {
        return Err(Error::param("k", "search needs k >= 3"));
    }
    let kinds = seed_kinds(body, k, tol);
    let eps = tol.eps_geom;
    let (restart, out) = run_restarts(cfg.restarts, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
        let start = seed(body, k, kinds[r % kinds.len()], &mut rng, tol)?;
        let mut mesh = Mesh::from_subdivision(&start, tol)?;
        let n_faces = mesh.faces().len();
        let mut diam: Vec<T> = (0..n_faces)
            .map(|f| {
                face_diameter(&mesh, f)
                    .ok_or(Error::Computation("seed face has no diameter".into()))
            })
            .collect::<Result<_>>()?;
        let mut cur = Objective::new(diam.clone());
        let mut best_obj = cur.clone();
        let mut best_mesh = mesh.clone();
        let mut trace = vec![(0, best_obj.max())];
        let nv = mesh.vertices().len();
        for it in 1..=cfg.iterations {
            // Half the moves target a vertex of a largest region.
            let v = if rng.random_bool(0.5) {
                let fmax = (0..n_faces).fold(0, |m, f| if diam[f] > diam[m] { f } else { m });
                let face = &mesh.faces()[fmax];
                face[rng.random_range(0..face.len())].0
            } else {
                rng.random_range(0..nv)
            };
            let dir = T::lit(rng.random::<f64>()) * T::TAU();
            let delta = Point::polar(cfg.step(it) * T::lit(rng.random::<f64>()), dir);
            let coin: f64 = rng.random();
            let old = mesh.vertices()[v].pos;
            let Some(p) = mesh.propose(v, delta) else {
                continue;
            };
            if !mesh.try_move(v, p) {
                continue;
            }
            let touched: Vec<usize> = mesh.incident_faces(v).to_vec();
            let saved: Vec<T> = touched.iter().map(|&f| diam[f]).collect();
            let mut ok = true;
            for &f in &touched {
                match face_diameter(&mesh, f) {
                    Some(d) => diam[f] = d,
                    None => ok = false,
                }
            }
            let cand = Objective::new(diam.clone());
            if !ok || !cfg.accept(cur.delta_to(&cand, eps), it, coin) {
                mesh.restore(v, old);
                for (&f, d) in touched.iter().zip(saved) {
                    diam[f] = d;
                }
                continue;
            }
            cur = cand;
            if let Some(obs) = observer {
                if let Ok(s) = mesh.realize() {
                    obs(r, it, &s);
                }
            }
            if best_obj.delta_to(&cur, eps) < T::zero() {
                let improved_max = cur.max() < best_obj.max();
                best_obj = cur.clone();
                best_mesh = mesh.clone();
                if improved_max {
                    trace.push((it, best_obj.max()));
                }
            }
        }
        let best = best_mesh.realize()?;
        let value = best.d_m(T::lit(T::DEFAULT_SAGITTA), tol)?.value;
        Ok(RestartOutcome {
            best,
            value,
            trace,
            partition: None,
        })
    })?;
    let bounds_gap = out.value - best_lower_bound(body, k, Regime::Subdivision, tol);
    Ok(SearchResult {
        best: out.best,
        best_value: out.value,
        trace: out.trace,
        bounds_gap,
        restart,
        partition: None,
    })
}
