//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reldiam::geometry::{distance, ConvexPolygon, Point, Tolerance};

pub fn pt(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

pub fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

/// O(n^2) maximum pairwise distance.
pub fn brute_diameter(pts: &[Point<f64>]) -> f64 {
    let mut best = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = distance(pts[i], pts[j]);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Jittered-grid Monte-Carlo area of `{p in box : inside(p)}` with `n` samples.
pub fn stratified_area(
    lo: Point<f64>,
    hi: Point<f64>,
    n: usize,
    seed: u64,
    inside: impl Fn(f64, f64) -> bool,
) -> f64 {
    let m = (n as f64).sqrt().ceil() as usize;
    let (w, h) = ((hi.x - lo.x) / m as f64, (hi.y - lo.y) / m as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for i in 0..m {
        for j in 0..m {
            let x = lo.x + (i as f64 + rng.random::<f64>()) * w;
            let y = lo.y + (j as f64 + rng.random::<f64>()) * h;
            if inside(x, y) {
                hits += 1;
            }
        }
    }
    hits as f64 * w * h
}

/// Half-plane test against a ccw convex vertex list.
pub fn in_convex(v: &[Point<f64>], x: f64, y: f64) -> bool {
    let n = v.len();
    (0..n).all(|i| {
        let (a, b) = (v[i], v[(i + 1) % n]);
        (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) >= 0.0
    })
}

/// Strictly convex polygon with `n` vertices on a random rotated ellipse.
pub fn random_convex_polygon(rng: &mut impl Rng, n: usize) -> ConvexPolygon<f64> {
    loop {
        if let Some(p) = try_convex_polygon(rng, n) {
            return p;
        }
    }
}

fn try_convex_polygon(rng: &mut impl Rng, n: usize) -> Option<ConvexPolygon<f64>> {
    let (a, b) = (rng.random_range(0.2..3.0), rng.random_range(0.2..3.0));
    let rot: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let (cx, cy) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    let mut angles: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
    angles.dedup_by(|x, y| (*x - *y).abs() < 1e-3);
    let v: Vec<Point<f64>> = angles
        .iter()
        .map(|&t| pt(a * t.cos(), b * t.sin()).rotate(rot) + pt(cx, cy))
        .collect();
    ConvexPolygon::new(v, &tol()).ok()
}

/// Positive root of `a x^2 + b x + c = 0` (numerically stable form).
pub fn positive_root(a: f64, b: f64, c: f64) -> f64 {
    let disc = (b * b - 4.0 * a * c).sqrt();
    let q = -0.5 * (b + b.signum() * disc);
    let (r1, r2) = (q / a, c / q);
    r1.max(r2)
}
