use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, Polyline, Tolerance};
use crate::scalar::Scalar;
use crate::subdivision::KPartition;

/// Bounded number of random proposals before giving up.
const MAX_ATTEMPTS: usize = 500;

/// Bends every curve of `p` by displacing a vertex inserted at its
/// midpoint by a random vector of length in `[magnitude/2, magnitude]`,
/// keeping only proposals that stay valid and leave `d_M` unchanged within
/// `eps_geom`. Magnitude 0 returns the partition unchanged.
pub fn perturb_partition<T: Scalar>(
    p: &KPartition<T>,
    magnitude: T,
    seed: u64,
    tol: &Tolerance<T>,
) -> Result<KPartition<T>> {
    if !(magnitude >= T::zero() && magnitude.is_finite()) {
        return Err(Error::param("magnitude", "must be nonnegative and finite"));
    }
    if magnitude == T::zero() {
        return Ok(p.clone());
    }
    let sag = T::lit(T::DEFAULT_SAGITTA);
    let base = p.regions(tol)?.d_m(sag, tol)?.value;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        // Later attempts bend fewer curves and shrink the displacement.
        let shrink = T::lit(0.5f64.powi((attempt / 100) as i32));
        let bend_prob = if attempt < 100 { 1.0 } else { 0.5 };
        let mut curves = Vec::with_capacity(p.k());
        let mut bent = 0;
        for c in p.curves() {
            let v = c.vertices();
            if rng.random_bool(bend_prob) || (bent == 0 && curves.len() + 1 == p.k()) {
                bent += 1;
                let i = rng.random_range(0..v.len() - 1);
                let mid = v[i].lerp(v[i + 1], T::lit(0.5));
                let len = magnitude * shrink * T::lit(rng.random_range(0.5..=1.0));
                let ang = T::lit(rng.random_range(0.0..std::f64::consts::TAU));
                let mut nv = v.to_vec();
                nv.insert(i + 1, mid + Point::polar(len, ang));
                curves.push(nv);
            } else {
                curves.push(v.to_vec());
            }
        }
        let Ok(curves) = curves
            .into_iter()
            .map(|v| Polyline::new(v, tol))
            .collect::<Result<Vec<_>>>()
        else {
            continue;
        };
        let Ok(cand) = KPartition::new(p.body().clone(), p.common_point(), curves, tol) else {
            continue;
        };
        let Ok(value) = cand.regions(tol).and_then(|s| s.d_m(sag, tol)) else {
            continue;
        };
        if (value.value - base).abs() <= tol.eps_geom {
            return Ok(cand);
        }
    }
    Err(Error::PerturbationExhausted(MAX_ATTEMPTS))
}
