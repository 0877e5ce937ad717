mod common;

use common::*;
use proptest::prelude::*;
use reldiam::body::*;
use reldiam::constructions::optimal_body;
use reldiam::geometry::{shoelace, BoundaryPiece, Point};
use std::f64::consts::{PI, TAU};

fn o() -> Point<f64> {
    pt(0.0, 0.0)
}

#[test]
fn regular_kgon_examples() {
    let hex = make_regular_kgon(6, 1.0, o(), 0.0).unwrap();
    assert!((hex.metrics().inradius - 3f64.sqrt() / 2.0).abs() < 1e-12);
    assert_eq!(hex.symmetry_order(), 6);

    let sq = make_regular_kgon(4, 1.0, o(), 0.0).unwrap();
    let verts: Vec<Point<f64>> = sq.pieces().iter().map(|p| p.start()).collect();
    assert!((sq.area() - shoelace(&verts)).abs() < 1e-15);
    assert!((sq.area() - 2.0).abs() < 1e-12);

    let tri = make_regular_kgon(3, 1.0, o(), 0.0).unwrap();
    assert!((tri.perimeter() - 3.0 * 2.0 * (PI / 3.0).sin()).abs() < 1e-12);
    assert!((tri.perimeter() - 5.196152).abs() < 1e-6);

    assert!(make_regular_kgon(2, 1.0, o(), 0.0).is_err());
    assert!(make_regular_kgon(5, 0.0, o(), 0.0).is_err());
}

#[test]
fn disc_examples() {
    let d = make_disc(1.0, o()).unwrap();
    let m = d.metrics();
    assert_eq!((m.inradius, m.circumradius), (1.0, 1.0));
    assert!((m.area - PI).abs() <= 1e-12);
    assert!((m.perimeter - TAU).abs() <= 1e-12);
    assert!((make_disc(2.0, o()).unwrap().perimeter() - 4.0 * PI).abs() < 1e-12);
    assert_eq!(d.symmetry_order(), DISC_SYMMETRY_CAP);
    assert!(make_disc(0.0, o()).is_err());
    assert!(make_disc(-1.0, o()).is_err());
}

#[test]
fn reuleaux_examples() {
    let r3 = make_reuleaux(3, 1.0, o()).unwrap();
    assert!((r3.diameter() - 1.0).abs() < 1e-9);
    let m = r3.metrics();
    assert!((m.inradius + m.circumradius - 1.0).abs() < 1e-12);
    assert!((m.circumradius - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    let r5 = make_reuleaux(5, 1.0, o()).unwrap();
    assert!(r5.verify_symmetry(5, &tol()));
    assert!((r5.diameter() - 1.0).abs() < 1e-9);
    assert!(make_reuleaux(4, 1.0, o()).is_err());
    assert!(make_reuleaux(1, 1.0, o()).is_err());
}

#[test]
fn circle_kgon_intersection_examples() {
    let sq = make_circle_kgon_intersection(4, 1.0 / 2f64.sqrt(), 1.0).unwrap();
    assert!(sq.pieces().iter().all(|p| !p.is_arc()));
    assert_eq!(sq.pieces().len(), 4);
    assert!((sq.metrics().circumradius - 1.0).abs() < 1e-12);

    let disc = make_circle_kgon_intersection(6, 1.0, 1.0).unwrap();
    assert!(disc.pieces().iter().all(BoundaryPiece::is_arc));
    assert!((disc.area() - PI).abs() < 1e-12);

    let k3 = make_circle_kgon_intersection(3, 1.0 / 3f64.sqrt(), 1.0).unwrap();
    let arcs = k3.pieces().iter().filter(|p| p.is_arc()).count();
    assert_eq!((k3.pieces().len() - arcs, arcs), (3, 3));
    assert_eq!(k3.symmetry_order(), 3);
    assert!(make_circle_kgon_intersection(3, -1.0, 1.0).is_err());
    assert!(make_circle_kgon_intersection(3, 1.0, 0.0).is_err());
}

#[test]
fn metrics_examples() {
    let p5 = make_regular_kgon(5, 1.0, o(), 0.0).unwrap();
    assert!((p5.metrics().inradius - (PI / 5.0).cos()).abs() < 1e-12);
    assert!((p5.metrics().inradius - 0.809017).abs() < 1e-6);
}

#[test]
fn optimal_body_area_matches_monte_carlo() {
    let b = optimal_body::<f64>(3).unwrap();
    let a = 1.0 / 3f64.sqrt();
    // Unit disc intersected with three half-planes at distance a; the
    // orientation of the triangle does not change the area.
    let normals: Vec<(f64, f64)> = (0..3)
        .map(|i| ((TAU * i as f64 / 3.0).cos(), (TAU * i as f64 / 3.0).sin()))
        .collect();
    let mc = stratified_area(pt(-1.0, -1.0), pt(1.0, 1.0), 10_000_000, 17, |x, y| {
        x * x + y * y <= 1.0 && normals.iter().all(|(nx, ny)| nx * x + ny * y <= a)
    });
    assert!(
        (b.area() - mc).abs() < 1e-4,
        "exact {} vs MC {mc}",
        b.area()
    );
}

#[test]
fn symmetry_examples() {
    let t = tol();
    let oct = make_regular_kgon(8, 1.0, o(), 0.1).unwrap();
    assert!(oct.verify_symmetry(4, &t));
    assert!(!oct.verify_symmetry(3, &t));
    assert!(make_disc(1.0, o()).unwrap().verify_symmetry(17, &t));
}

#[test]
fn asymmetric_body_uses_general_radii() {
    // Right triangle 3-4-5: inradius 1, smallest enclosing circle has the hypotenuse as diameter.
    let (a, b, c) = (pt(0.0, 0.0), pt(4.0, 0.0), pt(0.0, 3.0));
    let tri = ConvexBody::new(
        vec![
            BoundaryPiece::segment(a, b),
            BoundaryPiece::segment(b, c),
            BoundaryPiece::segment(c, a),
        ],
        pt(1.0, 1.0),
        1,
        &tol(),
    )
    .unwrap();
    let m = tri.metrics();
    assert!((m.inradius - 1.0).abs() < 1e-6, "inradius {}", m.inradius);
    assert!(
        (m.circumradius - 2.5).abs() < 1e-6,
        "circumradius {}",
        m.circumradius
    );
    assert!((m.area - 6.0).abs() < 1e-12);
}

#[test]
fn invalid_bodies_are_rejected() {
    let t = tol();
    let (a, b, c, d) = (pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0));
    let seg = BoundaryPiece::segment;
    // Open loop.
    assert!(ConvexBody::new(vec![seg(a, b), seg(b, c)], pt(0.5, 0.4), 1, &t).is_err());
    // Clockwise.
    assert!(ConvexBody::new(
        vec![seg(a, d), seg(d, c), seg(c, b), seg(b, a)],
        pt(0.5, 0.5),
        1,
        &t
    )
    .is_err());
    // Non-convex dart.
    let e = pt(0.5, 0.2);
    assert!(ConvexBody::new(
        vec![seg(a, b), seg(b, c), seg(c, e), seg(e, d), seg(d, a)],
        pt(0.5, 0.1),
        1,
        &t
    )
    .is_err());
    // Center outside.
    assert!(ConvexBody::new(
        vec![seg(a, b), seg(b, c), seg(c, d), seg(d, a)],
        pt(2.0, 2.0),
        1,
        &t
    )
    .is_err());
    // Claimed symmetry that does not hold.
    assert!(ConvexBody::new(
        vec![seg(a, b), seg(b, c), seg(c, d), seg(d, a)],
        pt(0.5, 0.4),
        4,
        &t
    )
    .is_err());
}

#[test]
fn json_round_trip_is_lossless() {
    for body in [
        make_reuleaux(5, 0.7, pt(0.1, -0.3)).unwrap(),
        optimal_body(5).unwrap(),
        make_regular_kgon(7, 1.3, pt(1.0 / 3.0, 2.0 / 7.0), 0.123).unwrap(),
    ] {
        let text = serde_json::to_string(&body).unwrap();
        let back: ConvexBody<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, body);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn json_rejects_invalid_input() {
    let bad = [
        r#"{"pieces":[],"center":[0,0],"symmetry_order":1}"#,
        r#"{"pieces":[{"kind":"segment","a":[0,0],"b":[1,0]}],"center":[0,0],"symmetry_order":1}"#,
        r#"{"pieces":[{"kind":"spline","a":[0,0],"b":[1,0]}],"center":[0,0],"symmetry_order":1}"#,
        r#"{"pieces":[{"kind":"segment","a":[0,0],"b":[1,0]},{"kind":"segment","a":[1,0],"b":[0,1]},{"kind":"segment","a":[0,1],"b":[0,0]}],"center":[0.2,0.2],"symmetry_order":1,"extra":1}"#,
    ];
    for b in bad {
        assert!(serde_json::from_str::<ConvexBody<f64>>(b).is_err(), "{b}");
    }
    let ok = r#"{"pieces":[{"kind":"segment","a":[0,0],"b":[1,0]},{"kind":"segment","a":[1,0],"b":[0,1]},{"kind":"segment","a":[0,1],"b":[0,0]}],"center":[0.2,0.2],"symmetry_order":1}"#;
    assert!(serde_json::from_str::<ConvexBody<f64>>(ok).is_ok());
}

#[test]
fn regular_kgon_inradius_relation() {
    for k in 3..=64 {
        let b = make_regular_kgon(k, 1.0, o(), 0.2).unwrap();
        let m = b.metrics();
        assert!(
            (m.inradius - m.circumradius * (PI / k as f64).cos()).abs() <= 1e-9,
            "k = {k}"
        );
    }
}

fn family() -> Vec<(ConvexBody<f64>, bool)> {
    let mut v = vec![
        (make_disc(1.0, o()).unwrap(), true),
        (make_disc(0.3, pt(1.0, 2.0)).unwrap(), true),
    ];
    for k in 3..=12 {
        v.push((
            make_regular_kgon(k, 1.0, pt(0.2, -0.1), 0.4).unwrap(),
            false,
        ));
        v.push((optimal_body(k).unwrap(), k >= 6));
    }
    for k in [3, 5, 7, 9] {
        v.push((make_reuleaux(k, 1.0, o()).unwrap(), false));
    }
    v
}

#[test]
fn inradius_never_exceeds_circumradius() {
    for (b, is_disc) in family() {
        let m = b.metrics();
        assert!(m.inradius <= m.circumradius);
        assert!(m.area <= PI * m.circumradius * m.circumradius + 1e-12);
        assert_eq!((m.circumradius - m.inradius).abs() <= 1e-12, is_disc);
    }
}

#[test]
fn symmetry_holds_for_divisors() {
    let t = tol();
    for (b, _) in family() {
        let k = b.symmetry_order().min(24);
        assert!(b.verify_symmetry(k, &t));
        for d in (2..k).filter(|d| k % d == 0) {
            assert!(b.verify_symmetry(d, &t), "order {k} divisor {d}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clipping_is_area_additive(k in 3usize..10, ang in 0.0f64..TAU, off in -0.8f64..0.8) {
        let t = tol();
        let b = optimal_body::<f64>(k).unwrap();
        let n = Point::polar(1.0, ang);
        let l = b.boundary();
        let a1 = l.clip_halfplane(n, off, &t).map_or(0.0, |r| r.area());
        let a2 = l.clip_halfplane(-n, -off, &t).map_or(0.0, |r| r.area());
        prop_assert!((a1 + a2 - b.area()).abs() <= 1e-9);
    }

    #[test]
    fn metrics_scale_with_dilation(k in 3usize..12, s in 0.1f64..10.0) {
        let b = optimal_body::<f64>(k).unwrap();
        let (m, ms) = (b.metrics(), b.scaled(s).metrics());
        prop_assert!((ms.inradius - s * m.inradius).abs() <= 1e-9 * s);
        prop_assert!((ms.circumradius - s * m.circumradius).abs() <= 1e-9 * s);
        prop_assert!((ms.area - s * s * m.area).abs() <= 1e-9 * s * s);
    }
}
