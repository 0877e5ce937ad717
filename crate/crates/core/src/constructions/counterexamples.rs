//! Subdivisions beating the standard partition for k = 7 (heptagon) and k = 8 (disc).

use serde::{Deserialize, Serialize};

use crate::body::{golden_max, make_disc, make_regular_kgon};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryPiece, PieceLoop, Point, Tolerance};
use crate::scalar::Scalar;
use crate::subdivision::KSubdivision;

/// Radius of the inner disc of the 8-subdivision of the unit disc.
pub const CIRCLE8_INNER_RADIUS: f64 = 0.43;

/// Named counterexample with its free parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase", bound = "T: Scalar")]
pub enum CounterexampleSpec<T> {
    Heptagon7 { inner_radius: T },
    Circle8 { inner_radius: T },
}

impl<T: Scalar> CounterexampleSpec<T> {
    pub fn build(&self, tol: &Tolerance<T>) -> Result<KSubdivision<T>> {
        match *self {
            CounterexampleSpec::Heptagon7 { inner_radius } => {
                heptagon_counterexample(inner_radius, tol)
            }
            CounterexampleSpec::Circle8 { inner_radius } => circle8_with_radius(inner_radius),
        }
    }
}

fn heptagon_dir<T: Scalar>(j: i32) -> Point<T> {
    let ang = T::FRAC_PI_2() + T::TAU() * T::lit(j as f64) / T::lit(7.0);
    Point::polar(T::one(), ang)
}

/// Direction in which the chord `q_1 -> q_2` is continued to the bottom edge.
fn continuation_dir<T: Scalar>() -> Point<T> {
    (heptagon_dir::<T>(2) - heptagon_dir::<T>(1)).normalized()
}

/// Open interval of admissible inner radii: the continuation of the chord
/// `q_1 q_2` must meet the bottom edge strictly between its left vertex and
/// its midpoint.
pub fn heptagon_rho_range<T: Scalar>() -> (T, T) {
    let d = continuation_dir::<T>();
    let w3 = heptagon_dir::<T>(3);
    let u2 = heptagon_dir::<T>(2);
    (T::zero(), w3.cross(d) / u2.cross(d))
}

/// Where the ray `origin + t dir` (t > 0) meets the line through `a`, `b`;
/// returns the parameter along `a -> b`.
fn ray_hits_segment<T: Scalar>(
    origin: Point<T>,
    dir: Point<T>,
    a: Point<T>,
    b: Point<T>,
) -> Option<(Point<T>, T)> {
    let e = b - a;
    let den = dir.cross(e);
    if den.abs() <= T::epsilon() {
        return None;
    }
    let w = a - origin;
    let t = w.cross(e) / den;
    let s = w.cross(dir) / den;
    (t > T::zero()).then(|| (a + e * s, s))
}

/// The 7-subdivision of the regular heptagon (circumradius 1, a vertex on
/// top) with five inner points at distance `rho` from the center.
///
/// Inner points sit on the rays toward the five upper vertices and are
/// joined to them by spokes and to each other by a path; both ends of the
/// path are continued straight down to the bottom edge. Regions are ordered
/// H_1 (central, contains the center), H_2 (left corner), H_3..H_6 (the
/// congruent quadrilaterals, left to right), H_7 (mirror of H_2).
pub fn heptagon_counterexample<T: Scalar>(rho: T, tol: &Tolerance<T>) -> Result<KSubdivision<T>> {
    let (lo, hi) = heptagon_rho_range::<T>();
    if !(rho > lo && rho < hi) {
        return Err(Error::param(
            "rho",
            format!("must lie in ({lo}, {hi}): beyond it the continued chord passes the bottom-left vertex"),
        ));
    }
    let body = make_regular_kgon(7, T::one(), Point::origin(), T::FRAC_PI_2())?;
    let w = |j: i32| heptagon_dir::<T>(j.rem_euclid(7));
    let q = |j: i32| heptagon_dir::<T>(j) * rho;
    let d = continuation_dir::<T>();
    let (e2, s2) = ray_hits_segment(q(2), d, w(3), w(4))
        .ok_or_else(|| Error::param("rho", "continued chord misses the bottom edge"))?;
    if !(s2 > T::zero() && s2 < T::lit(0.5)) {
        return Err(Error::param(
            "rho",
            "continued chord leaves the left half of the bottom edge",
        ));
    }
    let e_m2 = Point::new(-e2.x, e2.y);
    let poly = |v: &[Point<T>]| PieceLoop::polygon(v);
    let mut regions = vec![
        poly(&[e2, e_m2, q(-2), q(-1), q(0), q(1), q(2)]),
        poly(&[q(2), w(2), w(3), e2]),
    ];
    for j in (-2..=1).rev() {
        regions.push(poly(&[q(j), w(j), w(j + 1), q(j + 1)]));
    }
    regions.push(poly(&[q(-2), e_m2, w(4), w(5)]));
    let s = KSubdivision::new(body, regions);
    s.check_structure(tol)?;
    Ok(s)
}

/// One evaluation of the heptagon family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct HeptagonProbe<T> {
    pub rho: T,
    pub d_m: T,
}

/// Result of the one-parameter minimization over `rho`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct HeptagonSearch<T> {
    pub rho: T,
    pub d_m: T,
    pub probes: Vec<HeptagonProbe<T>>,
}

impl<T: Scalar> HeptagonSearch<T> {
    /// `rho,d_M` per probe, with a header line.
    pub fn trace_csv(&self) -> String {
        let mut s = String::from("rho,d_M\n");
        for p in &self.probes {
            s.push_str(&format!(
                "{:.17e},{:.17e}\n",
                p.rho.as_f64(),
                p.d_m.as_f64()
            ));
        }
        s
    }
}

fn heptagon_value<T: Scalar>(rho: T, tol: &Tolerance<T>) -> T {
    heptagon_counterexample(rho, tol)
        .and_then(|s| s.d_m(T::lit(T::DEFAULT_SAGITTA), tol))
        .map(|w| w.value)
        .unwrap_or_else(|_| T::infinity())
}

/// Golden-section minimization of `d_M` over the admissible `rho` interval.
pub fn search_heptagon<T: Scalar>(tol: &Tolerance<T>) -> HeptagonSearch<T> {
    let (lo, hi) = heptagon_rho_range::<T>();
    let margin = (hi - lo) * T::lit(1e-4);
    let probes = std::cell::RefCell::new(Vec::new());
    let f = |rho: T| {
        let v = heptagon_value(rho, tol);
        probes.borrow_mut().push(HeptagonProbe { rho, d_m: v });
        -v
    };
    let (rho, neg) = golden_max(f, lo + margin, hi - margin, 80);
    HeptagonSearch {
        rho,
        d_m: -neg,
        probes: probes.into_inner(),
    }
}

/// The 8-subdivision of the unit disc: a concentric inner disc of radius
/// 0.43 and seven congruent annular sectors cut by radial segments.
pub fn circle8_counterexample<T: Scalar>() -> Result<KSubdivision<T>> {
    circle8_with_radius(T::lit(CIRCLE8_INNER_RADIUS))
}

fn circle8_with_radius<T: Scalar>(inner: T) -> Result<KSubdivision<T>> {
    if !(inner > T::zero() && inner < T::one()) {
        return Err(Error::param("inner_radius", "must lie in (0, 1)"));
    }
    let o = Point::origin();
    let body = make_disc(T::one(), o)?;
    let ang = |j: usize| T::FRAC_PI_2() + T::TAU() * T::from_usize_lossy(j % 7) / T::lit(7.0);
    let inner_pt = |j: usize| Point::polar(inner, ang(j));
    let outer_pt = |j: usize| Point::polar(T::one(), ang(j));
    let mut regions = vec![PieceLoop::new(
        (0..7)
            .map(|j| BoundaryPiece::arc(inner_pt(j), inner_pt(j + 1), o, inner))
            .collect(),
    )];
    for j in 0..7 {
        regions.push(PieceLoop::new(vec![
            BoundaryPiece::segment(inner_pt(j), outer_pt(j)),
            BoundaryPiece::arc(outer_pt(j), outer_pt(j + 1), o, T::one()),
            BoundaryPiece::segment(outer_pt(j + 1), inner_pt(j + 1)),
            BoundaryPiece::arc_cw(inner_pt(j + 1), inner_pt(j), o, inner),
        ]));
    }
    Ok(KSubdivision::new(body, regions))
}
