use billiard_knots::braid::{pad, QuasitoricSpec, Sign};
use billiard_knots::diagram::{build_diagram, build_link_diagram, StarDiagram};
use billiard_knots::geometry::{Ellipse, Vec2};
use billiard_knots::lift::{
    assign_heights, build_knot3d, sawtooth, verify, BilliardKnot3D, BoxConstraint, Event, HeightPlan, HeightProblem,
    LiftError, PairConstraint, VerifyOptions,
};
use billiard_knots::poncelet::{link_polygons, polygon, solve_caustic};
use proptest::prelude::*;

use Sign::{Neg, Pos};

/// Sawtooth written out independently: distance of `mt + φ` to the nearest
/// integer, doubled, is `1 − z`.
fn z_oracle(t: f64, m: u32, phi: f64) -> f64 {
    let x = m as f64 * t + phi;
    let frac = x - x.floor();
    1.0 - 2.0 * frac.min(1.0 - frac)
}

fn table() -> Ellipse {
    Ellipse::new(2.0, 1.0).unwrap()
}

fn trefoil_diagram(phi: f64) -> StarDiagram {
    let frame = solve_caustic(&table(), 5, 2, 1e-12).unwrap();
    let mut d = build_diagram(&polygon(&frame, 5, 2, phi).unwrap()).unwrap();
    d.assign_signs(&QuasitoricSpec::new(2, 5, vec![Pos, Pos, Pos, Pos, Neg]).unwrap()).unwrap();
    d
}

fn link_diagram(phi: f64) -> StarDiagram {
    let frame = solve_caustic(&table(), 3, 1, 1e-12).unwrap();
    let mut d = build_link_diagram(&link_polygons(&frame, 3, 1, 2, phi).unwrap()).unwrap();
    d.assign_signs(&pad(&QuasitoricSpec::toric(2, 4).unwrap(), 0).unwrap()).unwrap();
    d
}

fn lift(d: &StarDiagram) -> BilliardKnot3D {
    let plans = assign_heights(d, d.signs.as_ref().unwrap(), 0.05, 500).unwrap();
    build_knot3d(d, &plans).unwrap()
}

#[test]
fn sawtooth_examples() {
    for z0 in [0.1, 0.5, 0.93] {
        assert!((sawtooth(0.0, 7, 0.5 + z0 / 2.0) - z0).abs() < 1e-15);
    }
    assert_eq!(sawtooth(0.0, 1, 0.5), 0.0);
}

proptest! {
    #[test]
    fn sawtooth_properties(t in -3.0f64..3.0, m in 1u32..50, phi in 0.0f64..1.0) {
        let z = sawtooth(t, m, phi);
        prop_assert!((0.0..=1.0).contains(&z));
        prop_assert!((z - z_oracle(t, m, phi)).abs() < 1e-12);
        prop_assert!((sawtooth(t + 1.0, m, phi) - z).abs() < 1e-9);
        prop_assert!((sawtooth(t + 1.0 / m as f64, m, phi) - z).abs() < 1e-9);
        // Slope ±2m away from the extrema.
        let h = 1e-7 / m as f64;
        let s = 2.0 * (m as f64 * t + phi);
        if (s - s.round()).abs() > 1e-4 {
            let slope = (sawtooth(t + h, m, phi) - z) / h;
            prop_assert!((slope.abs() - 2.0 * m as f64).abs() < 1e-3 * m as f64);
        }
    }
}

/// Smallest `m` for which a fine phase grid reaches margin `delta`.
fn exhaustive_min_m(over: f64, under: f64, delta: f64, m_max: u32) -> Option<u32> {
    (1..=m_max).find(|&m| {
        (0..20_000).any(|i| {
            let phi = i as f64 / 20_000.0;
            z_oracle(over, m, phi) - z_oracle(under, m, phi) >= delta
        })
    })
}

#[test]
fn one_crossing_toy() {
    for (over, under) in [(0.2, 0.7), (0.7, 0.2)] {
        let problem = HeightProblem { boxes: vec![], pairs: vec![PairConstraint { over, under }] };
        let plan = problem.solve(0.05, 10, 0).unwrap();
        assert!(plan.m <= 10);
        assert_eq!(Some(plan.m), exhaustive_min_m(over, under, 0.05, 10));
        let gap = z_oracle(over, plan.m, plan.phi_z) - z_oracle(under, plan.m, plan.phi_z);
        assert!(gap >= 0.05);
    }
}

#[test]
fn contradictory_boxes_are_infeasible() {
    // z changes by at most 2m·0.001 between the two times.
    let problem = HeightProblem {
        boxes: vec![
            BoxConstraint { t: 0.2, lo: 0.9, hi: f64::INFINITY },
            BoxConstraint { t: 0.201, lo: f64::NEG_INFINITY, hi: 0.1 },
        ],
        pairs: vec![],
    };
    match problem.solve(0.05, 20, 3) {
        Err(LiftError::Infeasible { component, m_max, best_m, best_margin, .. }) => {
            assert_eq!(component, 3);
            assert_eq!(m_max, 20);
            assert!(best_m >= 1);
            assert!(best_margin < 0.05);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn bad_delta_rejected() {
    let d = trefoil_diagram(0.37);
    let signs = d.signs.clone().unwrap();
    assert_eq!(assign_heights(&d, &signs, 0.3, 10), Err(LiftError::BadDelta(0.3)));
    assert_eq!(assign_heights(&d, &signs, 0.0, 10), Err(LiftError::BadDelta(0.0)));
}

#[test]
fn duplicated_arc_length_is_degenerate() {
    let mut d = trefoil_diagram(0.37);
    d.crossings[1].b.t = d.vertex_arcs[0][3];
    let signs = d.signs.clone().unwrap();
    assert!(matches!(assign_heights(&d, &signs, 0.05, 200), Err(LiftError::Degenerate { component: 0, .. })));
}

#[test]
fn trefoil_heights_realize_pattern() {
    for phi in [0.37, 1.3, 2.2, 4.0] {
        let d = trefoil_diagram(phi);
        let signs = d.signs.clone().unwrap();
        let plans = assign_heights(&d, &signs, 0.05, 200).unwrap();
        let HeightPlan { m, phi_z, margin, .. } = plans[0];
        assert!(m <= 200 && margin >= 0.05);
        for (c, &s) in d.crossings.iter().zip(&signs) {
            let (over, under) = c.over_under(s);
            assert!(z_oracle(over.t, m, phi_z) - z_oracle(under.t, m, phi_z) >= 0.05 - 1e-12);
        }
        for &t in &d.vertex_arcs[0] {
            let z = z_oracle(t, m, phi_z);
            assert!((0.05 - 1e-12..=0.95 + 1e-12).contains(&z));
        }
    }
}

#[test]
fn unknot_triangle_one_period() {
    let frame = solve_caustic(&table(), 3, 1, 1e-12).unwrap();
    let mut d = build_diagram(&polygon(&frame, 3, 1, 0.37).unwrap()).unwrap();
    d.signs = Some(Vec::new());
    let z0 = 0.4;
    let plan = HeightPlan { m: 1, phi_z: 0.5 + z0 / 2.0, margin: 0.0, component_index: 0 };
    let k = build_knot3d(&d, &[plan]).unwrap();
    let s = &k.components[0];
    assert_eq!(s.events.iter().filter(|&&e| e == Event::Wall).count(), 3);
    assert_eq!(k.cap_bounces(0), 2);
    assert!((s.points[0][2] - z0).abs() < 1e-15);
    let r = verify(&k, VerifyOptions::default());
    assert!(r.passed, "{r:?}");
}

#[test]
fn projection_recovers_diagram() {
    let d = trefoil_diagram(0.9);
    let k = lift(&d);
    assert_eq!(k.wall_vertices(0), d.components[0].vertices);
    assert_eq!(k.cap_bounces(0), 2 * k.plans[0].m as usize);
    let s = &k.components[0];
    let n = s.points.len();
    for i in 0..n {
        if s.events[i] == Event::Wall {
            continue;
        }
        // Cap bounces sit on the chord between the surrounding wall bounces.
        let prev = (0..n).map(|j| (i + n - j) % n).find(|&j| s.events[j] == Event::Wall).unwrap();
        let next = (1..n).map(|j| (i + j) % n).find(|&j| s.events[j] == Event::Wall).unwrap();
        let (a, b) = (s.points[prev], s.points[next]);
        let p = Vec2::new(s.points[i][0], s.points[i][1]);
        let (a, b) = (Vec2::new(a[0], a[1]), Vec2::new(b[0], b[1]));
        assert!((b - a).cross(p - a).abs() / (b - a).norm() < 1e-12);
        assert!(table().level(p) < 0.0);
    }
    for (t, c) in k.crossings.iter().zip(&d.crossings) {
        assert_eq!(t.point, c.point);
    }
}

#[test]
fn trefoil_knot_verifies() {
    let k = lift(&trefoil_diagram(0.37));
    let r = verify(&k, VerifyOptions::default());
    assert!(r.passed, "{r:?}");
    assert_eq!(k.components.len(), 1);
    assert!(r.wall_residual < 1e-7 && r.cap_residual < 1e-7);
    assert!(r.closure_residual < 1e-9 && r.clearance > 1e-6);
    assert_eq!(r.crossings_found, 5);
}

#[test]
fn link_verifies() {
    let k = lift(&link_diagram(0.37));
    let r = verify(&k, VerifyOptions::default());
    assert!(r.passed, "{r:?}");
    assert_eq!(k.components.len(), 2);
    assert_eq!(r.cap_bounces.len(), 2);
    for (c, plan) in k.plans.iter().enumerate() {
        assert_eq!(r.cap_bounces[c], 2 * plan.m as usize);
    }
}

#[test]
fn corrupted_heights_fail_verify() {
    let k = lift(&trefoil_diagram(0.37));
    let wall = k.components[0].events.iter().position(|&e| e == Event::Wall).unwrap();
    let mut bad = k.clone();
    bad.components[0].points[wall][2] += 0.01;
    let r = verify(&bad, VerifyOptions::default());
    assert!(!r.passed && r.wall_residual > 1e-7);

    let cap = k.components[0].events.iter().position(|&e| e != Event::Wall).unwrap();
    let mut bad = k.clone();
    bad.components[0].points[cap][2] = 0.5;
    let r = verify(&bad, VerifyOptions::default());
    assert!(!r.passed && r.cap_residual > 1e-7);
}

#[test]
fn flipped_target_fails_sign_check() {
    let mut k = lift(&trefoil_diagram(0.37));
    let t = &mut k.crossings[2];
    std::mem::swap(&mut t.over, &mut t.under);
    let r = verify(&k, VerifyOptions::default());
    assert!(!r.signs_ok && !r.passed);
}

#[test]
fn knot_json_round_trip() {
    let k = lift(&trefoil_diagram(0.37));
    let text = serde_json::to_string(&k).unwrap();
    let back: BilliardKnot3D = serde_json::from_str(&text).unwrap();
    assert_eq!(back, k);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn feasible_plans_verify(phi in 0.0f64..10.0, bits in proptest::collection::vec(any::<bool>(), 5)) {
        let frame = solve_caustic(&table(), 5, 2, 1e-12).unwrap();
        let mut d = build_diagram(&polygon(&frame, 5, 2, phi).unwrap()).unwrap();
        let signs = bits.iter().map(|&b| if b { Pos } else { Neg }).collect();
        d.assign_signs(&QuasitoricSpec::new(2, 5, signs).unwrap()).unwrap();
        if let Ok(plans) = assign_heights(&d, d.signs.as_ref().unwrap(), 0.05, 200) {
            let k = build_knot3d(&d, &plans).unwrap();
            let r = verify(&k, VerifyOptions::default());
            prop_assert!(r.passed, "{:?}", r);
        }
    }
}
