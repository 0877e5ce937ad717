//! Independent oracles for the acceptance suite. They share only the point
//! type and the pairwise distance with the kernel.

use rand::Rng;
use reldiam::geometry::{distance, ConvexPolygon, Point, Tolerance};

pub fn pt(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

pub fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

/// O(n^2) maximum pairwise distance, with the kernel's metric so results compare bit for bit.
pub fn brute_diameter(pts: &[Point<f64>]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            best = best.max(distance(*a, *b));
        }
    }
    best
}

/// Convex polygon with `n` vertices (fewer if sampled angles collide) on a random ellipse.
pub fn random_convex_polygon(rng: &mut impl Rng, n: usize) -> ConvexPolygon<f64> {
    loop {
        let (a, b) = (rng.random_range(0.2..3.0), rng.random_range(0.2..3.0));
        let rot: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (cx, cy) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|x, y| (*x - *y).abs() < 1e-3);
        let v = angles
            .iter()
            .map(|&t| pt(a * t.cos(), b * t.sin()).rotate(rot) + pt(cx, cy))
            .collect();
        if let Ok(p) = ConvexPolygon::new(v, &tol()) {
            return p;
        }
    }
}

/// Positive root of `a x^2 + b x + c = 0`, numerically stable form.
pub fn positive_root(a: f64, b: f64, c: f64) -> f64 {
    let disc = (b * b - 4.0 * a * c).sqrt();
    let q = -0.5 * (b + b.signum() * disc);
    (q / a).max(c / q)
}
