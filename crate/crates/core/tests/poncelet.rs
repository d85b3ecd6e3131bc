use std::f64::consts::PI;

use billiard_knots::geometry::{
    caustic_from_chord, simulate, tangency_residual, tangent_contacts, ConfocalConic, Ellipse, Line2, Vec2,
};
use billiard_knots::poncelet::{
    birkhoff_polygon, darboux_residual, graves_spread, polygon, rotation_number, solve_caustic, JacobiFrame,
    PonceletError,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PERIODS: [(usize, usize); 6] = [(3, 1), (5, 1), (5, 2), (7, 2), (7, 3), (9, 2)];

fn table() -> Ellipse {
    Ellipse::new(2.0, 1.0).unwrap()
}

fn wrap(a: f64) -> f64 {
    (a + PI).rem_euclid(2.0 * PI) - PI
}

/// Mean number of turns around the center per bounce along a simulated
/// trajectory tangent to the caustic `λ`.
fn simulated_winding(e: &Ellipse, lambda: f64, bounces: usize) -> f64 {
    let caustic = Ellipse::new((e.a * e.a - lambda).sqrt(), (e.b * e.b - lambda).sqrt()).unwrap();
    let p0 = Vec2::new(0.3 * e.a, 0.0);
    let p0 = e.project(p0 + Vec2::new(0.0, 0.7));
    let (m, _) = tangent_contacts(&caustic, p0);
    let pts = simulate(e, p0, m - p0, bounces).unwrap();
    let turned: f64 = pts.windows(2).map(|w| wrap(w[1].angle() - w[0].angle())).sum();
    turned.abs() / (2.0 * PI * bounces as f64)
}

#[test]
fn rotation_number_circle_limit() {
    let a = 1.0 + 1e-6;
    let e = Ellipse::new(a, 1.0).unwrap();
    for &lambda in &[0.1, 0.36, 0.8] {
        let rho = rotation_number(&e, lambda).unwrap();
        let expected = (1.0 - lambda / (a * a)).sqrt().acos() / PI;
        assert!((rho - expected).abs() < 1e-4, "{rho} vs {expected}");
    }
}

#[test]
fn rotation_number_matches_long_run_simulation() {
    let rho = rotation_number(&table(), 0.5).unwrap();
    assert!(rho > 0.0 && rho < 0.5);
    let sim = simulated_winding(&table(), 0.5, 2000);
    assert!((rho - sim).abs() < 1e-3, "{rho} vs {sim}");
}

#[test]
fn rotation_number_vanishes_at_the_boundary() {
    let small = rotation_number(&table(), 1e-8).unwrap();
    assert!(small > 0.0 && small < 1e-3);
    assert!(rotation_number(&table(), 0.0).is_err());
    assert!(rotation_number(&table(), 1.0).is_err());
}

#[test]
fn rotation_number_is_increasing() {
    let mut last = 0.0;
    for i in 1..=64 {
        let rho = rotation_number(&table(), i as f64 / 65.0).unwrap();
        assert!(rho > last);
        last = rho;
    }
    assert!(last < 0.5);
}

#[test]
fn triangle_caustic_closes_under_simulation() {
    let f = solve_caustic(&table(), 3, 1, 1e-12).unwrap();
    assert!((f.rotation_number() - 1.0 / 3.0).abs() < 1e-12);
    let poly = polygon(&f, 3, 1, 0.0).unwrap();
    let v0 = poly.vertices[0];
    let pts = simulate(&table(), v0, poly.vertices[1] - v0, 3).unwrap();
    assert!(pts[3].dist(v0) < 1e-8);
}

#[test]
fn pentagram_sides_are_tangent() {
    let f = solve_caustic(&table(), 5, 2, 1e-12).unwrap();
    let poly = polygon(&f, 5, 2, 0.123).unwrap();
    let c = ConfocalConic::new(table(), f.lambda);
    for j in 0..5 {
        let (a, b) = poly.side(j);
        let line = Line2::through(a, b).unwrap();
        assert!(tangency_residual(&c, &line) < 1e-8);
        // The side touches the caustic at its recorded tangency point.
        assert!(line.signed_distance(poly.tangency_points[j]).abs() < 1e-9);
    }
}

#[test]
fn non_coprime_is_rejected() {
    assert!(matches!(
        solve_caustic(&table(), 4, 2, 1e-12),
        Err(PonceletError::BadPeriod { .. } | PonceletError::NotCoprime { .. })
    ));
    assert!(matches!(solve_caustic(&table(), 9, 3, 1e-12), Err(PonceletError::NotCoprime { n: 9, p: 3 })));
    let f = solve_caustic(&table(), 5, 2, 1e-12).unwrap();
    assert!(matches!(polygon(&f, 7, 3, 0.0), Err(PonceletError::FrameMismatch { .. })));
}

#[test]
fn closure_for_every_start() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(n, p) in &PERIODS {
        let f = solve_caustic(&table(), n, p, 1e-12).unwrap();
        let (c, d) = f.defining_residuals();
        assert!(c < 1e-10 && d < 1e-10);
        for _ in 0..8 {
            let phi = rng.gen_range(-10.0..10.0);
            let poly = polygon(&f, n, p, phi).unwrap();
            assert!(poly.closure_gap() < 1e-9, "({n},{p}) phi={phi}");
            for v in &poly.vertices {
                assert!(table().level(*v).abs() < 1e-9);
            }
            let v0 = poly.vertices[0];
            let pts = simulate(&table(), v0, poly.vertices[1] - v0, n).unwrap();
            for (j, q) in pts.iter().enumerate() {
                assert!(q.dist(poly.vertices[j % n]) < 1e-7, "({n},{p}) vertex {j}");
            }
        }
    }
}

#[test]
fn even_polygons_are_centrally_symmetric() {
    for &(n, p) in &[(4, 1), (6, 1), (8, 3)] {
        let f = solve_caustic(&table(), n, p, 1e-12).unwrap();
        for &phi in &[0.0, 0.37, 2.1] {
            let poly = polygon(&f, n, p, phi).unwrap();
            let h = n / 2;
            for j in 0..n {
                let a = f.to_normalized(poly.vertices[j]);
                let b = f.to_normalized(poly.vertices[(j + h) % n]);
                assert!((a + b).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn darboux_point_is_the_center() {
    let f = solve_caustic(&table(), 4, 1, 1e-12).unwrap();
    let r = darboux_residual(&polygon(&f, 4, 1, 0.4).unwrap()).unwrap();
    assert!(r.residual < 1e-8);
    assert!(r.point.norm() < 1e-8);

    let f = solve_caustic(&table(), 6, 1, 1e-12).unwrap();
    let a = darboux_residual(&polygon(&f, 6, 1, 0.1).unwrap()).unwrap();
    let b = darboux_residual(&polygon(&f, 6, 1, 1.3).unwrap()).unwrap();
    assert!(a.residual < 1e-8 && b.residual < 1e-8);
    assert!(a.point.dist(b.point) < 1e-8);
}

#[test]
fn graves_perimeter_is_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let phis: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..10.0)).collect();
    for &(n, p) in &PERIODS {
        let f = solve_caustic(&table(), n, p, 1e-12).unwrap();
        let per = polygon(&f, n, p, 0.0).unwrap().perimeter;
        assert!(graves_spread(&f, n, p, &phis).unwrap() < 1e-8 * per);
    }
    let a = solve_caustic(&table(), 5, 2, 1e-12).unwrap();
    let b = solve_caustic(&table(), 5, 1, 1e-12).unwrap();
    let pa = polygon(&a, 5, 2, 0.0).unwrap().perimeter;
    let pb = polygon(&b, 5, 1, 0.0).unwrap().perimeter;
    assert!((pa - pb).abs() > 1e-3);
}

#[test]
fn birkhoff_recovers_the_caustic() {
    for &(n, p) in &[(3, 1), (5, 2), (7, 2)] {
        let p0 = table().project(Vec2::new(1.3, 0.9));
        let b = birkhoff_polygon(&table(), n, p, p0).unwrap();
        let f = solve_caustic(&table(), n, p, 1e-12).unwrap();
        assert!((b.lambda - f.lambda).abs() < 1e-6, "({n},{p}) {} vs {}", b.lambda, f.lambda);
        assert!(b.reflection_residual < 1e-6);
        assert!(b.polygon.vertices[0].dist(p0) < 1e-12);
        // The optimum lies in the focal-angle domain of the existence argument.
        let total: f64 = b.focal_angles.iter().sum();
        assert!((total - 2.0 * PI * p as f64).abs() < 1e-9);
        assert!(b.focal_angles.iter().all(|&a| a > 0.0 && a < PI));
        // Every chord of the optimum is tangent to the same caustic.
        for j in 0..n {
            let (a, c) = b.polygon.side(j);
            let lam = caustic_from_chord(&table(), &Line2::through(a, c).unwrap()).unwrap().lambda;
            assert!((lam - f.lambda).abs() < 1e-6);
        }
        let jac = polygon(&f, n, p, b.polygon.phi).unwrap();
        assert!((jac.perimeter - b.polygon.perimeter).abs() < 1e-8);
        for (u, v) in jac.vertices.iter().zip(&b.polygon.vertices) {
            assert!(u.dist(*v) < 1e-5);
        }
    }
}

#[test]
fn birkhoff_on_a_circle_is_regular() {
    let c = Ellipse::new(1.0, 1.0).unwrap();
    let b = birkhoff_polygon(&c, 7, 3, Vec2::new(0.0, 1.0)).unwrap();
    for a in &b.focal_angles {
        assert!((a - 6.0 * PI / 7.0).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn frame_relations(a in 1.05f64..4.0, t in 0.01f64..0.99) {
        let e = Ellipse::new(a, 1.0).unwrap();
        let f = JacobiFrame::new(e, t).unwrap();
        prop_assert!(f.a_star > f.b_star && f.b_star > 1.0);
        let k2 = f.modulus.k_squared();
        let from_axes = (f.a_star.powi(2) - f.b_star.powi(2)) / (f.a_star.powi(2) - 1.0);
        prop_assert!((k2 - from_axes).abs() < 1e-12);
        let (c, d) = f.defining_residuals();
        prop_assert!(c < 1e-10 && d < 1e-10);
    }

    #[test]
    fn tangent_lemma(a in 1.05f64..4.0, t in 0.01f64..0.99, phi in -20.0f64..20.0) {
        let f = JacobiFrame::new(Ellipse::new(a, 1.0).unwrap(), t).unwrap();
        prop_assert!(f.tangent_lemma_residual(phi) < 1e-9);
    }
}
