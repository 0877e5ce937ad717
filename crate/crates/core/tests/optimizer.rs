mod common;

use common::*;
use reldiam::body::*;
use reldiam::bounds::{best_lower_bound, bound_standard, Regime};
use reldiam::constructions::d_m_standard_formula;
use reldiam::optimizer::*;
use reldiam::subdivision::KSubdivision;
use std::f64::consts::PI;
use std::sync::Mutex;

fn o() -> reldiam::geometry::Point<f64> {
    pt(0.0, 0.0)
}

fn cfg(seed: u64, iterations: usize, restarts: usize) -> SearchConfig<f64> {
    SearchConfig {
        seed,
        iterations,
        restarts,
        ..SearchConfig::default()
    }
}

#[test]
fn config_validation() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let bad = [
        SearchConfig {
            iterations: 0,
            ..SearchConfig::default()
        },
        SearchConfig {
            restarts: 0,
            ..SearchConfig::default()
        },
        SearchConfig {
            move_scale: 0.0,
            ..SearchConfig::default()
        },
        SearchConfig {
            move_scale: f64::NAN,
            ..SearchConfig::default()
        },
        SearchConfig {
            schedule: Schedule::Anneal {
                t0: 1e-3,
                cooling: 1.0,
            },
            ..SearchConfig::default()
        },
        SearchConfig {
            schedule: Schedule::Anneal {
                t0: 0.0,
                cooling: 0.9,
            },
            ..SearchConfig::default()
        },
    ];
    for c in &bad {
        assert!(c.validate().is_err());
        assert!(optimize_partition(&disc, 4, c, &t).is_err());
        assert!(optimize_subdivision(&disc, 4, c, &t).is_err());
    }
    assert!(SearchConfig::<f64>::default().validate().is_ok());
    assert!(optimize_subdivision(&disc, 2, &cfg(0, 10, 1), &t).is_err());
}

#[test]
fn config_json_round_trip() {
    let c = SearchConfig {
        schedule: Schedule::Greedy,
        ..cfg(3, 50, 2)
    };
    let s = serde_json::to_string(&c).unwrap();
    assert!(s.contains("\"kind\":\"greedy\""));
    assert_eq!(serde_json::from_str::<SearchConfig<f64>>(&s).unwrap(), c);
    let a: SearchConfig<f64> = serde_json::from_str(
        r#"{"seed":1,"iterations":5,"move_scale":0.1,"restarts":1,"schedule":{"kind":"anneal","t0":0.01,"cooling":0.9}}"#,
    )
    .unwrap();
    assert_eq!(
        a.schedule,
        Schedule::Anneal {
            t0: 0.01,
            cooling: 0.9
        }
    );
}

#[test]
fn disc_k5_partition_reaches_the_floor() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let r = optimize_partition(&disc, 5, &cfg(1, 10_000, 2), &t).unwrap();
    let floor = 2.0 * (PI / 5.0).sin();
    assert!(
        r.best_value >= floor - 1e-9 && r.best_value <= floor + 1e-3,
        "{}",
        r.best_value
    );
    assert!(r.best.validate(&t).is_empty());
    assert!(r.partition.is_some());
    assert!(r.bounds_gap >= -1e-9);
}

#[test]
fn triangle_k3_partition() {
    let t = tol();
    let tri = make_regular_kgon(3, 1.0, o(), PI / 2.0).unwrap();
    let r = optimize_partition(&tri, 3, &cfg(2, 500, 2), &t).unwrap();
    let f = d_m_standard_formula(&tri, 3, &t).unwrap();
    assert!((r.best_value - f).abs() <= 1e-3);
    assert!(r.best_value >= f - 1e-9);
}

#[test]
fn single_iteration_is_valid() {
    let t = tol();
    let hex = make_regular_kgon(6, 1.0, o(), 0.0).unwrap();
    let c = cfg(4, 1, 1);
    let p = optimize_partition(&hex, 4, &c, &t).unwrap();
    assert!(p.best.validate(&t).is_empty());
    let s = optimize_subdivision(&hex, 5, &c, &t).unwrap();
    assert!(s.best.validate(&t).is_empty());
    assert_eq!(s.best.k(), 5);
}

#[test]
fn heptagon_k7_beats_one() {
    let t = tol();
    let e7 = make_regular_kgon(7, 1.0, o(), PI / 2.0).unwrap();
    let r = optimize_subdivision(&e7, 7, &SearchConfig::default(), &t).unwrap();
    assert!(r.best_value < 1.0, "{}", r.best_value);
    assert!(r.best.validate(&t).is_empty());
    assert_eq!(r.best.k(), 7);
}

#[test]
fn disc_k8_subdivision() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let r = optimize_subdivision(&disc, 8, &SearchConfig::default(), &t).unwrap();
    assert!(r.best_value <= 0.88, "{}", r.best_value);
    assert!(r.bounds_gap >= -1e-9);
}

#[test]
fn disc_k4_subdivision_respects_floor() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let r = optimize_subdivision(&disc, 4, &cfg(5, 500, 4), &t).unwrap();
    assert!(r.best_value >= 2f64.sqrt() - 1e-9, "{}", r.best_value);
    let floor = bound_standard(&disc, 4, &t).unwrap();
    assert!(r.best_value >= floor - 1e-9);
}

#[test]
fn determinism() {
    let t = tol();
    let b = make_reuleaux(5, 1.0, o()).unwrap();
    let c = cfg(11, 300, 3);
    let a = optimize_subdivision(&b, 5, &c, &t).unwrap();
    let bb = optimize_subdivision(&b, 5, &c, &t).unwrap();
    assert_eq!(a.trace, bb.trace);
    assert_eq!(a.best_value, bb.best_value);
    assert_eq!(a.restart, bb.restart);
    assert_eq!(
        serde_json::to_string(&a.best).unwrap(),
        serde_json::to_string(&bb.best).unwrap()
    );
    let p = optimize_partition(&b, 5, &c, &t).unwrap();
    let q = optimize_partition(&b, 5, &c, &t).unwrap();
    assert_eq!(p.trace, q.trace);
}

#[test]
fn trace_is_monotone() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let r = optimize_subdivision(&disc, 6, &cfg(6, 400, 4), &t).unwrap();
    assert!(!r.trace.is_empty());
    for w in r.trace.windows(2) {
        assert!(w[1].1 <= w[0].1 && w[1].0 >= w[0].0);
    }
    assert!((r.trace.last().unwrap().1 - r.best_value).abs() < 1e-9);
    let csv = r.trace_csv();
    assert!(csv.starts_with("iteration,d_m\n"));
    assert_eq!(csv.lines().count(), r.trace.len() + 1);
    let p = optimize_partition(&disc, 6, &cfg(6, 400, 2), &t).unwrap();
    for w in p.trace.windows(2) {
        assert!(w[1].1 <= w[0].1);
    }
}

#[test]
fn every_accepted_state_validates() {
    let t = tol();
    let bodies = [
        make_disc(1.0, o()).unwrap(),
        make_regular_kgon(7, 1.0, o(), 0.3).unwrap(),
    ];
    for (b, k) in bodies.iter().zip([5, 7]) {
        let bad = Mutex::new(Vec::new());
        let seen = Mutex::new(0usize);
        let obs = |r: usize, it: usize, s: &KSubdivision<f64>| {
            *seen.lock().unwrap() += 1;
            if s.k() != k || !s.validate(&t).is_empty() {
                bad.lock().unwrap().push((r, it));
            }
        };
        optimize_subdivision_observed(b, k, &cfg(8, 150, 3), &t, Some(&obs)).unwrap();
        assert!(*seen.lock().unwrap() > 0);
        assert!(bad.lock().unwrap().is_empty(), "{:?}", bad.lock().unwrap());
    }
}

#[test]
fn greedy_search_respects_lower_bounds() {
    let t = tol();
    let bodies = [
        make_disc(1.0, o()).unwrap(),
        make_regular_kgon(6, 1.0, o(), 0.0).unwrap(),
        optimal_reuleaux(),
    ];
    for b in &bodies {
        for k in 3..=6 {
            let c = SearchConfig {
                schedule: Schedule::Greedy,
                ..cfg(k as u64, 200, 2)
            };
            let r = optimize_subdivision(b, k, &c, &t).unwrap();
            let lb = best_lower_bound(b, k, Regime::Subdivision, &t);
            assert!(r.best_value >= lb - 1e-9, "k = {k}");
            assert!(r.bounds_gap >= -1e-9);
            assert!((r.bounds_gap - (r.best_value - lb)).abs() < 1e-12);
        }
    }
}

fn optimal_reuleaux() -> ConvexBody<f64> {
    make_reuleaux(3, 1.0, o()).unwrap()
}

#[test]
fn seed_kinds_by_k() {
    let t = tol();
    let disc = make_disc(1.0, o()).unwrap();
    let k4 = seed_kinds(&disc, 4, &t);
    assert_eq!(k4[0], SeedKind::Standard);
    assert!(!k4.contains(&SeedKind::Hex));
    assert!(seed_kinds(&disc, 8, &t).contains(&SeedKind::Hex));
    let tri = make_regular_kgon(3, 1.0, o(), 0.0).unwrap();
    assert!(!seed_kinds(&tri, 4, &t).contains(&SeedKind::Standard));
}
