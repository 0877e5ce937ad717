use reldiam::body::*;
use reldiam::bounds::*;
use reldiam::constructions::*;
use reldiam::geometry::{Point, Tolerance};
use std::f32::consts::PI;

#[test]
fn standard_partition_in_f32() {
    let t = Tolerance::<f32>::default();
    let disc = make_disc(1.0f32, Point::new(0.0, 0.0)).unwrap();
    let v = standard_partition(&disc, 5, &t)
        .unwrap()
        .regions(&t)
        .unwrap()
        .d_m(1e-4, &t)
        .unwrap()
        .value;
    assert!((v - 2.0 * (PI / 5.0).sin()).abs() < 1e-4);
    let f = d_m_standard_formula(&disc, 5, &t).unwrap();
    assert!((f - v).abs() < 1e-4);
}

#[test]
fn constructions_in_f32() {
    let t = Tolerance::<f32>::default();
    let b = optimal_body::<f32>(5).unwrap();
    assert!((d_m_standard_formula(&b, 5, &t).unwrap() - 1.0).abs() < 1e-5);
    let s = circle8_counterexample::<f32>().unwrap();
    assert!((s.d_m(1e-4, &t).unwrap().value - 0.867767).abs() < 1e-4);
    let disc = make_disc(1.0f32, Point::new(0.0, 0.0)).unwrap();
    let (h, dk) = hex_subdivision(&disc, 20, &t).unwrap();
    assert_eq!(h.k(), 20);
    assert!(h.d_m(1e-4, &t).unwrap().value <= dk + 1e-3);
}

#[test]
fn bounds_in_f32() {
    let disc = make_disc(1.0f32, Point::new(0.0, 0.0)).unwrap();
    assert!((bound_isodiametric(&disc, 4) - 1.0).abs() < 1e-6);
    assert!((lp_packing_constant::<f32>(2).value - 1.376905).abs() < 1e-5);
    let r = bound_report(&disc, "disc", 8, false, &Tolerance::default());
    assert!(r.is_consistent());
}
