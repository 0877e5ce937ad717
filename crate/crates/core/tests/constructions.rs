mod common;

use common::*;
use reldiam::body::*;
use reldiam::constructions::*;
use reldiam::geometry::{distance, point_segment_distance, Point};
use reldiam::subdivision::KPartition;
use std::f64::consts::{FRAC_PI_2, PI};

const SAG: f64 = 1e-6;

fn o() -> Point<f64> {
    pt(0.0, 0.0)
}

fn direct(c: &ConvexBody<f64>, k: usize) -> f64 {
    let t = tol();
    standard_partition(c, k, &t)
        .unwrap()
        .regions(&t)
        .unwrap()
        .d_m(SAG, &t)
        .unwrap()
        .value
}

#[test]
fn square_standard_partition_hits_edge_midpoints() {
    let sq = make_regular_kgon(4, 2f64.sqrt(), o(), PI / 4.0).unwrap();
    let p = standard_partition(&sq, 4, &tol()).unwrap();
    let mut ends: Vec<(i64, i64)> = p
        .endpoints()
        .iter()
        .map(|e| ((e.x * 1e9).round() as i64, (e.y * 1e9).round() as i64))
        .collect();
    ends.sort();
    assert_eq!(
        ends,
        vec![
            (-1_000_000_000, 0),
            (0, -1_000_000_000),
            (0, 1_000_000_000),
            (1_000_000_000, 0)
        ]
    );
}

#[test]
fn standard_partition_requires_symmetry() {
    let t = tol();
    let oct = make_regular_kgon(8, 1.0, o(), 0.0).unwrap();
    assert!(standard_partition(&oct, 3, &t).is_err());
    assert!(d_m_standard_formula(&oct, 3, &t).is_err());
    assert!(standard_partition(&oct, 2, &t).is_err());
    assert!(standard_partition(&oct, 4, &t).is_ok());
}

#[test]
fn disc_k6_is_a_tie() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let m = disc.metrics();
    let chord = 2.0 * m.inradius * (PI / 6.0).sin();
    assert!((chord - m.circumradius).abs() < 1e-15);
    assert!((d_m_standard_formula(&disc, 6, &t).unwrap() - 1.0).abs() < 1e-15);
    assert!((direct(&disc, 6) - 1.0).abs() < 1e-9);
}

#[test]
fn hexagon_three_partition_choices_agree() {
    let t = tol();
    let hex = make_regular_kgon(6, 1.0, o(), 0.0).unwrap();
    let p = standard_partition(&hex, 3, &t).unwrap();
    let s = p.regions(&t).unwrap();
    let areas: Vec<f64> = s.regions().iter().map(|r| r.area()).collect();
    assert!(areas.iter().all(|a| (a - hex.area() / 3.0).abs() < 1e-12));
    // The other valid choice: rotate the spokes by pi/3.
    let rotated: Vec<_> = p
        .curves()
        .iter()
        .map(|c| c.map(|v| v.rotate(PI / 3.0)))
        .collect();
    let q = KPartition::new(hex.clone(), o(), rotated, &t).unwrap();
    let vq = q.regions(&t).unwrap().d_m(SAG, &t).unwrap().value;
    assert!((vq - s.d_m(SAG, &t).unwrap().value).abs() < 1e-12);
    assert!((vq - d_m_standard_formula(&hex, 3, &t).unwrap()).abs() < 1e-12);
}

#[test]
fn formula_examples() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    assert!((d_m_standard_formula(&disc, 3, &t).unwrap() - 3f64.sqrt()).abs() < 1e-12);
    let e7 = make_regular_kgon(7, 1.0, o(), 0.0).unwrap();
    assert!((d_m_standard_formula(&e7, 7, &t).unwrap() - 1.0).abs() < 1e-12);
    // Reuleaux triangle: r + R = 1, R = 1/sqrt3.
    let r3 = make_reuleaux(3, 1.0, o()).unwrap();
    let big_r = 1.0 / 3f64.sqrt();
    let expect = big_r.max(2.0 * (1.0 - big_r) * (PI / 3.0).sin());
    assert!((expect - 0.73205).abs() < 1e-5);
    assert!((d_m_standard_formula(&r3, 3, &t).unwrap() - expect).abs() < 1e-12);
    assert!((direct(&r3, 3) - expect).abs() < 1e-6);
}

#[test]
fn optimal_body_examples() {
    let b4 = optimal_body::<f64>(4).unwrap();
    assert!(b4.pieces().iter().all(|p| !p.is_arc()));
    assert!((b4.metrics().circumradius - 1.0).abs() < 1e-12);
    assert!((b4.metrics().inradius - 1.0 / 2f64.sqrt()).abs() < 1e-12);

    let b6 = optimal_body::<f64>(6).unwrap();
    assert!(b6.pieces().iter().all(|p| p.is_arc()));
    assert!((b6.area() - PI).abs() < 1e-12);

    let b5 = optimal_body::<f64>(5).unwrap();
    let arcs = b5.pieces().iter().filter(|p| p.is_arc()).count();
    assert_eq!((b5.pieces().len() - arcs, arcs), (5, 5));
    let a = 1.0 / (2.0 * (PI / 5.0).sin());
    assert!((a - 0.850651).abs() < 1e-6 && a < 1.0);
    let circ = a / (PI / 5.0).cos();
    assert!((circ - 1.051462).abs() < 1e-6 && circ > 1.0);
    assert!(optimal_body::<f64>(2).is_err());
}

#[test]
fn optimal_body_ties_both_branches() {
    let t = tol();
    for k in 3..=12 {
        let b = optimal_body::<f64>(k).unwrap();
        let m = b.metrics();
        assert!(
            (d_m_standard_formula(&b, k, &t).unwrap() - 1.0).abs() < 1e-12,
            "k = {k}"
        );
        assert!(m.circumradius <= 1.0 + 1e-12);
        assert!(2.0 * m.inradius * (PI / k as f64).sin() <= 1.0 + 1e-12);
    }
}

#[test]
fn quotient_examples() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    assert!((quotient(&disc, 6, &t).unwrap() - 1.0 / PI).abs() < 1e-12);
    assert!((quotient(&disc.scaled(3.0), 6, &t).unwrap() - 1.0 / PI).abs() < 1e-12);
    assert!((quotient(&optimal_body(4).unwrap(), 4, &t).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn optimal_body_beats_family_members() {
    let t = tol();
    for k in 3..=10 {
        let q = quotient(&optimal_body(k).unwrap(), k, &t).unwrap();
        let e = make_regular_kgon(k, 1.0, o(), 0.0).unwrap();
        if k != 4 {
            assert!(quotient(&e, k, &t).unwrap() > q + 1e-6, "k-gon, k = {k}");
        }
        if k < 6 {
            assert!(quotient(&make_disc(1.0, o()).unwrap(), k, &t).unwrap() > q + 1e-6);
        }
        if k % 2 == 1 {
            assert!(quotient(&make_reuleaux(k, 1.0, o()).unwrap(), k, &t).unwrap() > q + 1e-6);
        }
    }
}

#[test]
fn heptagon_family() {
    let t = tol();
    let (lo, hi) = heptagon_rho_range::<f64>();
    assert!(lo == 0.0 && hi > 0.0 && hi < 1.0);
    let r = 2.0 * (PI / 7.0).cos() * (PI / 7.0).sin();
    for i in 1..20 {
        let rho = lo + (hi - lo) * i as f64 / 20.0;
        let s = heptagon_counterexample(rho, &t).unwrap();
        assert_eq!(s.k(), 7);
        assert!(s.validate(&t).is_empty(), "rho = {rho}");
        assert!(s.regions()[0].contains(o(), 0.0));
        let a: Vec<f64> = s.regions().iter().map(|x| x.area()).collect();
        let d: Vec<f64> = s
            .region_diameters(SAG)
            .unwrap()
            .iter()
            .map(|x| x.value)
            .collect();
        assert!((a[1] - a[6]).abs() < 1e-12 && (d[1] - d[6]).abs() < 1e-12);
        for j in 3..6 {
            assert!((a[j] - a[2]).abs() < 1e-12 && (d[j] - d[2]).abs() < 1e-12);
        }
        assert!(s.d_m(SAG, &t).unwrap().value >= r - t.eps_geom);
    }
    assert!(heptagon_counterexample(0.0, &t).is_err());
    assert!(heptagon_counterexample(hi + 1e-3, &t).is_err());
    assert!(heptagon_counterexample(-0.1, &t).is_err());
}

#[test]
fn heptagon_search() {
    let t = tol();
    let h = search_heptagon(&t);
    assert!(h.d_m < 1.0);
    assert!(h.d_m <= 0.9892 + 5e-3);
    assert!((h.d_m - 0.9892).abs() <= 5e-3);
    // Grid-scan oracle over 200 interior points.
    let (lo, hi) = heptagon_rho_range::<f64>();
    let step = (hi - lo) / 201.0;
    let (mut best_rho, mut best) = (0.0, f64::INFINITY);
    for i in 1..=200 {
        let rho = lo + step * i as f64;
        let v = heptagon_counterexample(rho, &t)
            .unwrap()
            .d_m(SAG, &t)
            .unwrap()
            .value;
        if v < best {
            (best_rho, best) = (rho, v);
        }
    }
    assert!((best_rho - h.rho).abs() <= 2.0 * step);
    assert!(best >= h.d_m - 1e-9);
    assert!(h.trace_csv().lines().count() == h.probes.len() + 1);
}

#[test]
fn circle8_values() {
    let t = tol();
    let s = circle8_counterexample::<f64>().unwrap();
    assert!(s.validate(&t).is_empty());
    let d = s.region_diameters(SAG).unwrap();
    assert!((d[0].value - 0.86).abs() < 1e-12);
    // Brute force over a fine boundary sample of C_2.
    let sample = s.regions()[1].discretize(1e-8).unwrap();
    let brute = brute_diameter(&sample);
    assert!((d[1].value - brute).abs() < 1e-6);
    assert!((d[1].value - 2.0 * (PI / 7.0).sin()).abs() < 1e-12);
    assert!((d[1].value - 0.867767).abs() < 1e-6);
    assert!(s.d_m(SAG, &t).unwrap().value < 1.0);
}

fn max_displacement(a: &KPartition<f64>, b: &KPartition<f64>) -> f64 {
    let mut best: f64 = 0.0;
    for (ca, cb) in a.curves().iter().zip(b.curves()) {
        for &v in cb.vertices() {
            let d = ca
                .segments()
                .map(|(p, q)| point_segment_distance(v, p, q))
                .fold(f64::INFINITY, f64::min);
            best = best.max(d);
        }
    }
    best
}

#[test]
fn perturbations_keep_d_m() {
    let t = tol();
    for (b, k) in [
        (make_regular_kgon(6, 1.0, o(), 0.0).unwrap(), 6),
        (make_disc(1.0, o()).unwrap(), 4),
    ] {
        let p = standard_partition(&b, k, &t).unwrap();
        let base = p.regions(&t).unwrap().d_m(SAG, &t).unwrap().value;
        let q = perturb_partition(&p, 0.05, 1, &t).unwrap();
        assert_ne!(q, p);
        assert!(max_displacement(&p, &q) >= 0.01);
        let s = q.regions(&t).unwrap();
        assert!(s.validate(&t).is_empty());
        assert!((s.d_m(SAG, &t).unwrap().value - base).abs() <= 1e-6);
        assert_eq!(perturb_partition(&p, 0.0, 1, &t).unwrap(), p);
        assert_eq!(
            perturb_partition(&p, 0.05, 9, &t).unwrap(),
            perturb_partition(&p, 0.05, 9, &t).unwrap()
        );
    }
}

#[test]
fn hex_cell_diameter_examples() {
    let (a, p) = (PI, 2.0 * PI);
    let hex_area = 3.0 * 3f64.sqrt() / 8.0;
    let lead = 100.0 * hex_area - PI;
    // The printed coefficient 61.8102 is truncated; the exact value is 61.81031.
    assert!((lead - 61.8102).abs() < 2e-4);
    let oracle = positive_root(lead, -p, -a);
    let dk = hex_cell_diameter(a, p, 100).unwrap();
    assert!((dk - oracle).abs() < 1e-14);
    // Printed to five places, truncated from 0.2819317.
    assert!((dk - 0.28192).abs() < 2e-5);
    assert!(hex_cell_diameter(a, p, 4).is_err());
}

#[test]
fn hex_subdivision_examples() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let (s, dk) = hex_subdivision(&disc, 100, &t).unwrap();
    assert_eq!(s.k(), 100);
    assert!(s.validate(&t).is_empty());
    assert!(s.d_m(SAG, &t).unwrap().value <= dk + 1e-5);
    let (s, _) = hex_subdivision(&disc, 1000, &t).unwrap();
    let env = (PI / 1000.0).sqrt() * (8.0 / (3.0 * 3f64.sqrt())).sqrt() + 10.0 / 1000.0;
    assert!(s.d_m(SAG, &t).unwrap().value <= env);
    assert!(hex_subdivision(&disc, 4, &t).is_err());
}

#[test]
fn hex_subdivisions_validate_across_bodies() {
    let t = tol();
    let bodies = [
        make_regular_kgon(7, 1.0, o(), FRAC_PI_2).unwrap(),
        optimal_body(3).unwrap(),
        make_reuleaux(5, 2.0, pt(1.0, 1.0)).unwrap(),
    ];
    for b in &bodies {
        for k in [5, 9, 20, 60] {
            let (s, dk) = hex_subdivision(b, k, &t).unwrap();
            assert_eq!(s.k(), k);
            assert!(s.validate(&t).is_empty(), "k = {k}");
            assert!(s.d_m(SAG, &t).unwrap().value <= dk + 2.0 * SAG);
        }
    }
}

#[test]
fn hex_lattice_cells_have_the_cell_diameter() {
    let l = HexLattice::new(0.3, pt(0.1, 0.2), 0.4).unwrap();
    for (i, j) in [(0, 0), (3, -2), (-5, 7)] {
        let c = l.cell(i, j);
        assert!((brute_diameter(&c) - 0.3).abs() < 1e-12);
    }
    let (a, b) = (l.cell_center(0, 0), l.cell_center(1, 0));
    assert!((distance(a, b) - 0.3 * 3f64.sqrt() / 2.0).abs() < 1e-12);
    assert!(HexLattice::new(0.0, o(), 0.0).is_err());
}

#[test]
fn standard_regions_are_congruent() {
    let t = tol();
    let mut bodies: Vec<(ConvexBody<f64>, usize)> = Vec::new();
    for k in 3..=12 {
        bodies.push((make_disc(1.0, o()).unwrap(), k));
        bodies.push((make_regular_kgon(k, 1.0, o(), 0.2).unwrap(), k));
        bodies.push((optimal_body(k).unwrap(), k));
    }
    for k in [3, 5, 7, 9, 11] {
        bodies.push((make_reuleaux(k, 1.0, o()).unwrap(), k));
    }
    for (b, k) in bodies {
        let p = standard_partition(&b, k, &t).unwrap();
        for e in p.endpoints() {
            assert!((distance(e, b.center()) - b.metrics().inradius).abs() <= t.eps_geom);
        }
        let s = p.regions(&t).unwrap();
        let d = s.region_diameters(SAG).unwrap();
        for (r, dr) in s.regions().iter().zip(&d) {
            assert!((r.area() - s.regions()[0].area()).abs() <= t.eps_area);
            assert!((dr.value - d[0].value).abs() <= t.eps_geom);
        }
        assert!((d_m_standard_formula(&b, k, &t).unwrap() - direct(&b, k)).abs() <= 1e-6);
    }
}
