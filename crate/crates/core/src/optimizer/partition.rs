//! Local search over (common point, anchor angles, optional bend vertices).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run_restarts, Objective, RestartOutcome, SearchConfig, SearchResult};
use crate::body::ConvexBody;
use crate::bounds::{best_lower_bound, Regime};
use crate::constructions::random::random_interior_point;
use crate::constructions::standard_partition;
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, Point, Polyline, Tolerance};
use crate::scalar::{cmp, Scalar};
use crate::subdivision::{KPartition, KSubdivision};

/// Smallest angular gap kept between consecutive anchors.
const MIN_GAP: f64 = 1e-3;

#[derive(Clone, Debug)]
struct State<T> {
    c: Point<T>,
    /// Anchor directions from the body center, strictly increasing within one turn.
    angles: Vec<T>,
    /// Optional bend per curve: position along the chord and normal offset, both relative.
    bends: Vec<Option<(T, T)>>,
}

impl<T: Scalar> State<T> {
    fn build(
        &self,
        body: &ConvexBody<T>,
        tol: &Tolerance<T>,
    ) -> Option<(KPartition<T>, KSubdivision<T>)> {
        let mut curves = Vec::with_capacity(self.angles.len());
        for (a, bend) in self.angles.iter().zip(&self.bends) {
            let e = body.ray_exit(body.center(), *a)?;
            let mut v = vec![self.c, e];
            if let Some((t, off)) = *bend {
                let d = e - self.c;
                v.insert(1, self.c.lerp(e, t) + d.perp() * off);
            }
            curves.push(Polyline::new(v, tol).ok()?);
        }
        let p = KPartition::new(body.clone(), self.c, curves, tol).ok()?;
        let s = p.regions(tol).ok()?;
        Some((p, s))
    }

    fn gaps_ok(&self) -> bool {
        let k = self.angles.len();
        (0..k).all(|i| {
            let next = if i + 1 < k {
                self.angles[i + 1]
            } else {
                self.angles[0] + T::TAU()
            };
            next - self.angles[i] >= T::lit(MIN_GAP)
        })
    }
}

fn gauss<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller, one sample.
    let u: f64 = rng.random::<f64>().max(1e-300);
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

fn objective<T: Scalar>(s: &KSubdivision<T>) -> Option<Objective<T>> {
    let d = s.region_diameters(T::lit(T::DEFAULT_SAGITTA)).ok()?;
    Some(Objective::new(d.into_iter().map(|d| d.value).collect()))
}

fn initial_state<T: Scalar, R: Rng>(
    body: &ConvexBody<T>,
    k: usize,
    restart: usize,
    rng: &mut R,
    tol: &Tolerance<T>,
) -> Result<State<T>> {
    if restart == 0 {
        if let Ok(p) = standard_partition(body, k, tol) {
            let c = body.center();
            let mut angles: Vec<T> = p
                .endpoints()
                .iter()
                .map(|&e| wrap_angle((e - c).angle()))
                .collect();
            angles.sort_by(cmp);
            return Ok(State {
                c: p.common_point(),
                angles,
                bends: vec![None; k],
            });
        }
    }
    let margin = body.metrics().inradius * T::lit(0.05);
    for _ in 0..1000 {
        let c = random_interior_point(body, margin, rng)?;
        let mut angles: Vec<T> = (0..k)
            .map(|_| T::lit(rng.random::<f64>()) * T::TAU())
            .collect();
        angles.sort_by(cmp);
        let st = State {
            c,
            angles,
            bends: vec![None; k],
        };
        if st.gaps_ok() && st.build(body, tol).is_some() {
            return Ok(st);
        }
    }
    Err(Error::Computation("no valid initial partition".into()))
}

fn propose<T: Scalar, R: Rng>(st: &State<T>, step: T, scale: T, rng: &mut R) -> State<T> {
    let mut next = st.clone();
    let k = st.angles.len();
    match rng.random_range(0..3) {
        0 => {
            let dir = T::lit(rng.random::<f64>()) * T::TAU();
            next.c = st.c + Point::polar(step * T::lit(rng.random::<f64>()), dir);
        }
        1 => {
            let i = rng.random_range(0..k);
            next.angles[i] = st.angles[i] + step / scale * T::lit(gauss(rng));
            // Keep the list in one turn starting at the first anchor.
            let first = next.angles[0];
            for a in next.angles.iter_mut().skip(1) {
                while *a < first {
                    *a += T::TAU();
                }
                while *a >= first + T::TAU() {
                    *a -= T::TAU();
                }
            }
        }
        _ => {
            let i = rng.random_range(0..k);
            next.bends[i] = match st.bends[i] {
                None => Some((T::lit(0.5), step / scale * T::lit(gauss(rng)))),
                Some(_) if rng.random_bool(0.15) => None,
                Some((t, off)) => {
                    let t = (t + step / scale * T::lit(gauss(rng)))
                        .max(T::lit(0.1))
                        .min(T::lit(0.9));
                    Some((t, off + step / scale * T::lit(gauss(rng))))
                }
            };
        }
    }
    next
}

/// Minimizes `d_M` over k-partitions with straight or once-bent curves.
/// Restart 0 starts from the standard partition when the body is
/// k-symmetric; other restarts start from random partitions.
pub fn optimize_partition<T: Scalar>(
    body: &ConvexBody<T>,
    k: usize,
    cfg: &SearchConfig<T>,
    tol: &Tolerance<T>,
) -> Result<SearchResult<T>> {
    cfg.validate()?;
    if k < 3 {
        return Err(Error::param("k", "search needs k >= 3"));
    }
    let scale = body.metrics().circumradius;
    let eps = tol.eps_geom;
    let (restart, out) = run_restarts(cfg.restarts, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
        let mut cur = initial_state(body, k, r, &mut rng, tol)?;
        let (mut cur_p, mut cur_s) = cur
            .build(body, tol)
            .ok_or(Error::Computation("seed partition invalid".into()))?;
        let mut cur_obj =
            objective(&cur_s).ok_or(Error::Computation("seed partition has no diameter".into()))?;
        let (mut best_p, mut best_s, mut best_obj) =
            (cur_p.clone(), cur_s.clone(), cur_obj.clone());
        let mut trace = vec![(0, best_obj.max())];
        for it in 1..=cfg.iterations {
            let cand = propose(&cur, cfg.step(it), scale, &mut rng);
            let coin: f64 = rng.random();
            if !cand.gaps_ok() || !body.contains_interior(cand.c, eps) {
                continue;
            }
            let Some((p, s)) = cand.build(body, tol) else {
                continue;
            };
            let Some(obj) = objective(&s) else { continue };
            if !cfg.accept(cur_obj.delta_to(&obj, eps), it, coin) {
                continue;
            }
            cur = cand;
            (cur_p, cur_s, cur_obj) = (p, s, obj);
            if best_obj.delta_to(&cur_obj, eps) < T::zero() {
                let improved_max = cur_obj.max() < best_obj.max();
                (best_p, best_s, best_obj) = (cur_p.clone(), cur_s.clone(), cur_obj.clone());
                if improved_max {
                    trace.push((it, best_obj.max()));
                }
            }
        }
        let value = best_s.d_m(T::lit(T::DEFAULT_SAGITTA), tol)?.value;
        Ok(RestartOutcome {
            best: best_s,
            value,
            trace,
            partition: Some(best_p),
        })
    })?;
    let bounds_gap = out.value - best_lower_bound(body, k, Regime::Partition, tol);
    Ok(SearchResult {
        best: out.best,
        best_value: out.value,
        trace: out.trace,
        bounds_gap,
        restart,
        partition: out.partition,
    })
}
