mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reldiam::body::*;
use reldiam::constructions::random::{random_partition, random_subdivision};
use reldiam::constructions::{
    circle8_counterexample, heptagon_counterexample, hex_subdivision, optimal_body,
    search_heptagon, standard_partition,
};
use reldiam::error::Error;
use reldiam::geometry::{distance, BoundaryPiece, PieceLoop, Point, Polyline};
use reldiam::subdivision::*;
use std::f64::consts::{FRAC_PI_2, PI};

const SAG: f64 = 1e-6;

fn o() -> Point<f64> {
    pt(0.0, 0.0)
}

fn line(v: &[(f64, f64)]) -> Polyline<f64> {
    Polyline::new(v.iter().map(|&(x, y)| pt(x, y)).collect(), &tol()).unwrap()
}

#[test]
fn disc_quarters() {
    let t = tol();
    let s = standard_partition(&make_disc(1.0, o()).unwrap(), 4, &t)
        .unwrap()
        .regions(&t)
        .unwrap();
    assert_eq!(s.k(), 4);
    for r in s.regions() {
        assert!((r.area() - PI / 4.0).abs() < 1e-12);
    }
    assert!(s.validate(&t).is_empty());
    assert!((s.d_m(SAG, &t).unwrap().value - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn triangle_kites() {
    let t = tol();
    let tri = make_regular_kgon(3, 1.0, o(), FRAC_PI_2).unwrap();
    let mids: Vec<Point<f64>> = tri.pieces().iter().map(|p| p.point_at(0.5)).collect();
    let curves = mids
        .iter()
        .map(|&m| Polyline::new(vec![o(), m], &t).unwrap())
        .collect();
    let p = KPartition::new(tri.clone(), o(), curves, &t).unwrap();
    let s = regions_of_partition(&p, &t).unwrap();
    assert!(s.validate(&t).is_empty());
    let areas: Vec<f64> = s.regions().iter().map(|r| r.area()).collect();
    let diams: Vec<f64> = s
        .region_diameters(SAG)
        .unwrap()
        .iter()
        .map(|d| d.value)
        .collect();
    for i in 1..3 {
        assert!((areas[i] - areas[0]).abs() < 1e-12);
        assert!((diams[i] - diams[0]).abs() < 1e-12);
    }
    assert!((areas[0] - tri.area() / 3.0).abs() < 1e-12);
}

#[test]
fn zigzag_spoke_is_still_a_subdivision() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let curves = vec![
        line(&[(0.0, 0.0), (0.3, 0.05), (0.6, -0.05), (1.0, 0.0)]),
        line(&[(0.0, 0.0), (0.0, 1.0)]),
        line(&[(0.0, 0.0), (-1.0, 0.0)]),
        line(&[(0.0, 0.0), (0.0, -1.0)]),
    ];
    let s = KPartition::new(disc, o(), curves, &t)
        .unwrap()
        .regions(&t)
        .unwrap();
    assert!(s.validate(&t).is_empty(), "{:?}", s.validate(&t));
    assert!((s.d_m(SAG, &t).unwrap().value - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn crossing_and_colliding_curves_are_rejected() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let crossing = vec![
        line(&[(0.0, 0.0), (0.5, 0.5), (1.0, 0.0)]),
        line(&[(0.0, 0.0), (0.8, 0.0), (0.0, 1.0)]),
        line(&[(0.0, 0.0), (-1.0, 0.0)]),
    ];
    assert!(matches!(
        KPartition::new(disc.clone(), o(), crossing, &t),
        Err(Error::CrossingCurves(..))
    ));
    let colliding = vec![
        line(&[(0.0, 0.0), (1.0, 0.0)]),
        line(&[(0.0, 0.0), (0.5, 0.3), (1.0, 0.0)]),
        line(&[(0.0, 0.0), (-1.0, 0.0)]),
    ];
    assert!(KPartition::new(disc.clone(), o(), colliding, &t).is_err());
    // A curve ending inside the body.
    let short = vec![
        line(&[(0.0, 0.0), (0.5, 0.0)]),
        line(&[(0.0, 0.0), (-1.0, 0.0)]),
        line(&[(0.0, 0.0), (0.0, 1.0)]),
    ];
    assert!(KPartition::new(disc, o(), short, &t).is_err());
}

#[test]
fn standard_partition_values() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let v8 = standard_partition(&disc, 8, &t)
        .unwrap()
        .regions(&t)
        .unwrap()
        .d_m(SAG, &t)
        .unwrap()
        .value;
    assert!((v8 - 1.0).abs() < 1e-12);
    for k in 3..=12 {
        let e = make_regular_kgon(k, 1.0, o(), 0.0).unwrap();
        let v = standard_partition(&e, k, &t)
            .unwrap()
            .regions(&t)
            .unwrap()
            .d_m(SAG, &t)
            .unwrap()
            .value;
        assert!((v - 1.0).abs() < 1e-12, "k = {k}: {v}");
    }
}

#[test]
fn halving_the_discretization_changes_little() {
    let t = tol();
    for (b, k) in [
        (make_disc(1.0, o()).unwrap(), 5),
        (optimal_body(3).unwrap(), 3),
        (make_reuleaux(5, 1.0, o()).unwrap(), 5),
    ] {
        let s = standard_partition(&b, k, &t).unwrap().regions(&t).unwrap();
        for sag in [1e-3, 1e-4, SAG] {
            let (v1, v2) = (
                s.d_m(sag, &t).unwrap().value,
                s.d_m(sag / 2.0, &t).unwrap().value,
            );
            assert!(v1 <= v2 + 2.0 * sag && v2 <= v1 + 2.0 * sag);
        }
    }
}

#[test]
fn overlapping_and_uncovering_subdivisions_are_reported() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let upper = PieceLoop::new(vec![
        BoundaryPiece::arc(pt(1.0, 0.0), pt(-1.0, 0.0), o(), 1.0),
        BoundaryPiece::segment(pt(-1.0, 0.0), pt(1.0, 0.0)),
    ]);
    let twice = KSubdivision::new(disc.clone(), vec![upper.clone(), upper]);
    let v = twice.validate(&t);
    assert!(
        v.iter().any(|x| matches!(
            x,
            Violation::Overlap {
                first: 0,
                second: 1,
                ..
            }
        )),
        "{v:?}"
    );

    let sq = make_regular_kgon(4, 2f64.sqrt(), o(), PI / 4.0).unwrap();
    let std4 = standard_partition(&sq, 4, &t).unwrap().regions(&t).unwrap();
    let mut regions = std4.regions().to_vec();
    // Cut the corner off the region containing (0.9, 0.9).
    let idx = regions
        .iter()
        .position(|r| r.contains(pt(0.9, 0.9), 1e-12))
        .unwrap();
    regions[idx] = regions[idx].clip_halfplane(pt(1.0, 1.0), 1.6, &t).unwrap();
    let v = KSubdivision::new(sq, regions).validate(&t);
    assert!(
        v.iter().any(|x| matches!(x, Violation::Uncovered { .. })),
        "{v:?}"
    );
    assert!(v
        .iter()
        .any(|x| matches!(x, Violation::AreaMismatch { .. })));
}

#[test]
fn subdivision_json_round_trip() {
    let t = tol();
    let s = circle8_counterexample::<f64>().unwrap();
    let text = serde_json::to_string(&s).unwrap();
    let back: KSubdivision<f64> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
    let p = standard_partition(&optimal_body(5).unwrap(), 5, &t).unwrap();
    let back: KPartition<f64> = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
    assert_eq!(back, p);
}

#[test]
fn edge_count_respects_euler_bound() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let mut cases: Vec<KSubdivision<f64>> = [50, 100, 200]
        .iter()
        .map(|&k| hex_subdivision(&disc, k, &t).unwrap().0)
        .collect();
    cases.push(circle8_counterexample().unwrap());
    cases.push(heptagon_counterexample(search_heptagon(&t).rho, &t).unwrap());
    for k in 3..=8 {
        cases.push(
            standard_partition(&disc, k, &t)
                .unwrap()
                .regions(&t)
                .unwrap(),
        );
    }
    for s in cases {
        let g = graph_counts(&s, &t);
        let k = s.k();
        assert_eq!(g.faces, k);
        assert!(g.min_degree >= 3, "{g:?}");
        assert_eq!(g.euler_characteristic(), 2, "{g:?}");
        assert!(g.edges <= 3 * k - 3, "k = {k}: {g:?}");
    }
}

fn test_bodies() -> Vec<ConvexBody<f64>> {
    vec![
        make_disc(1.0, o()).unwrap(),
        make_regular_kgon(6, 1.0, o(), 0.0).unwrap(),
        make_reuleaux(3, 1.0, o()).unwrap(),
        optimal_body(5).unwrap(),
        make_regular_kgon(4, 1.0, o(), 0.3).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_m_is_rigid_and_scale_covariant(seed in any::<u64>(), bi in 0usize..5, k in 3usize..7, rot in 0.0f64..6.3, tx in -3.0f64..3.0) {
        let t = tol();
        let b = &test_bodies()[bi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_partition(b, k, &mut rng, &t).unwrap();
        let s = p.regions(&t).unwrap();
        let v = s.d_m(SAG, &t).unwrap().value;
        let moved = p.similarity(rot, 1.0, pt(tx, -tx)).regions(&t).unwrap().d_m(SAG, &t).unwrap().value;
        prop_assert!((moved - v).abs() <= 1e-9);
        for lambda in [0.5, 2.0, 3.0] {
            let scaled = s.similarity(0.0, lambda, o()).d_m(SAG, &t).unwrap().value;
            prop_assert!((scaled - lambda * v).abs() <= 1e-9 * lambda.max(1.0));
        }
    }

    #[test]
    fn witness_reproduces_value(seed in any::<u64>(), bi in 0usize..5, k in 3usize..9) {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_partition(&test_bodies()[bi], k, &mut rng, &t).unwrap().regions(&t).unwrap();
        let w = s.d_m(SAG, &t).unwrap();
        prop_assert_eq!(distance(w.a, w.b), w.value);
        let r = &s.regions()[w.region_index];
        prop_assert!(r.contains(w.a, 1e-9) && r.contains(w.b, 1e-9));
    }

    #[test]
    fn partitions_respect_circumradius_bound(seed in any::<u64>(), bi in 0usize..5, k in 3usize..10) {
        let t = tol();
        let b = &test_bodies()[bi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_partition(b, k, &mut rng, &t).unwrap().regions(&t).unwrap();
        prop_assert!(s.validate(&t).is_empty());
        prop_assert!(s.d_m(SAG, &t).unwrap().value >= b.metrics().circumradius - t.eps_geom);
    }

    #[test]
    fn subdivisions_respect_chord_bound(seed in any::<u64>(), bi in 0usize..5, k in 3usize..=12) {
        let t = tol();
        let b = &test_bodies()[bi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_subdivision(b, k, &mut rng, &t).unwrap();
        prop_assert!(s.validate(&t).is_empty());
        let m = b.metrics();
        let v = s.d_m(SAG, &t).unwrap().value;
        prop_assert!(v >= 2.0 * m.inradius * (PI / k as f64).sin() - t.eps_geom);
        if k <= 6 {
            prop_assert!(v >= m.circumradius - t.eps_geom);
        }
    }
}
