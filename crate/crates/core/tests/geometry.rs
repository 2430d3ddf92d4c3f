use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drlab::geometry::{
    focal_point, mean_curvature, mean_curvature_numeric, normal_geodesic_level, point_on_level, tube_level, tube_radius_map,
    TubeProfile,
};
use drlab::htype::SpaceSignature;
use drlab::model::{ModelPoint, TangentVector};
use drlab::numeric::family_value;
use drlab::rational::{q, qi, to_f64};
use drlab::verify::{family_polynomial, FamilySpec};

#[test]
fn radius_map_examples() {
    assert!((tube_radius_map(1.0, 20.0).unwrap() - 5f64.acosh()).abs() < 1e-12);
    assert!((tube_radius_map(0.3, tube_level(0.3, 1.0)).unwrap() - 1.0).abs() < 1e-12);
    assert!(tube_radius_map(0.5, 2.0).is_err());
    for c in [1.01, 2.0, 7.5, 100.0] {
        assert!((tube_level(0.25, tube_radius_map(0.25, c).unwrap()) - c).abs() < 1e-12 * c);
    }
}

#[test]
fn closed_form_is_monotone() {
    let p = TubeProfile::new(3, 4, 4, 0.5).unwrap();
    let mut prev = f64::NEG_INFINITY;
    for k in 1..200 {
        let h = mean_curvature(&p, 0.05 * k as f64).unwrap();
        assert!(h > prev);
        prev = h;
    }
    assert!((mean_curvature(&p, 40.0).unwrap() + 7.0).abs() < 1e-9);
}

#[test]
fn focal_variety_of_a_sphere_is_a_point() {
    let s = SpaceSignature::build(1, 1).unwrap();
    let spec = FamilySpec::spherelike_normalized(&s, q(1, 2), 1).unwrap();
    assert!(focal_point(&s, &spec, &[qi(0), qi(0)]).is_ok());
    assert!(focal_point(&s, &spec, &[q(1, 10), qi(0)]).is_err());
}

#[test]
fn focal_points_approach_the_boundary() {
    let s = SpaceSignature::build(1, 2).unwrap();
    let spec = FamilySpec::spherelike(&s, qi(1), qi(0), vec![qi(1), qi(0), qi(0), qi(-1)], vec![qi(2)], q(1, 2), 1).unwrap();
    let f = family_polynomial(&s, &spec).unwrap();
    for delta in [q(1, 10), q(1, 1000), q(1, 1_000_000)] {
        // ‖w‖² = (2 − δ)² just below 8λ = 4
        let a = qi(2) - &delta;
        let w = [qi(0), qi(0), a.clone(), qi(0)];
        let x = focal_point(&s, &spec, &w).unwrap();
        assert_eq!(x.t, qi(1) - &a * &a / qi(4));
        assert!(x.t > qi(0));
        assert_eq!(f.numerator().evaluate(&x.coords()), qi(2) * &x.t);
    }
    assert!(focal_point(&s, &spec, &[qi(0), qi(0), qi(2), qi(0)]).is_err());
}

#[test]
fn spherelike_lower_bound_and_margin() {
    let s = SpaceSignature::build(3, 1).unwrap();
    let spec = FamilySpec::spherelike(&s, qi(1), qi(0), vec![qi(1), qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)], qi(1), 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let mut x: Vec<f64> = (0..s.dim() - 1).map(|_| rng.random_range(-3.0..3.0)).collect();
        x.push(rng.random_range(0.01..5.0));
        assert!(family_value(&s, &spec, &x).unwrap() >= 4.0 - 1e-12);
    }
    // distance 0.1 from the focal variety
    let w = vec![qi(0), qi(0), qi(1), qi(0)];
    let mut u = TangentVector::zero(&s);
    u.dv[0] = 1.0;
    u.dz[2] = 0.5;
    let level = normal_geodesic_level(&s, &spec, &w, &u, 0.1, 100).unwrap();
    assert!(level > 4.0 + 0.01);
    assert!((level - 4.0 * 0.1f64.cosh()).abs() < 1e-8);
}

#[test]
fn sphere_has_constant_mean_curvature() {
    let s = SpaceSignature::build(1, 2).unwrap();
    let spec = FamilySpec::spherelike_normalized(&s, q(1, 4), 2).unwrap();
    let c = 1.8;
    let a = point_on_level(&s, &spec, c, &[0.2, -0.1, 0.0, 0.3], &[0.1]).unwrap();
    let b = point_on_level(&s, &spec, c, &[-0.4, 0.0, 0.1, 0.0], &[-0.2]).unwrap();
    let ha = mean_curvature_numeric(&s, &spec, &a).unwrap();
    let hb = mean_curvature_numeric(&s, &spec, &b).unwrap();
    assert!((ha - hb).abs() < 2e-4);
    let profile = TubeProfile::of(&s, &spec).unwrap();
    let h = mean_curvature(&profile, profile.radius(c).unwrap()).unwrap();
    assert!((ha - h).abs() <= 1e-4 * (1.0 + h.abs()));
}

#[test]
fn complex_plane_reference_case() {
    let s = SpaceSignature::build(1, 1).unwrap();
    let spec = FamilySpec::spherelike_normalized(&s, q(1, 4), 1).unwrap();
    let p = point_on_level(&s, &spec, 2.0, &[0.0, 0.5], &[0.0]).unwrap();
    let profile = TubeProfile::of(&s, &spec).unwrap();
    let h = mean_curvature(&profile, profile.radius(2.0).unwrap()).unwrap();
    let est = mean_curvature_numeric(&s, &spec, &p).unwrap();
    assert!((est - h).abs() <= 1e-4 * (1.0 + h.abs()));
}

#[test]
fn horospheres_have_constant_mean_curvature() {
    for (m, c) in [(0, 3), (2, 2), (5, 1)] {
        let s = SpaceSignature::build(m, c).unwrap();
        let expected = -(s.m() as f64 + s.n() as f64 / 2.0);
        let spec = FamilySpec::horosphere(qi(1), qi(0));
        for t in [0.5, 1.0, 3.0] {
            let p = ModelPoint::new(vec![0.2; s.n()], vec![-0.3; s.m()], t).unwrap();
            let h = mean_curvature_numeric(&s, &spec, &p).unwrap();
            assert!((h - expected).abs() < 1e-5, "{h}");
        }
        let profile = TubeProfile::new(s.m(), s.n(), 0, 0.0).unwrap();
        // (a, b) route with a(x) = (m+n/2+1)x, b(x) = x²
        let c = 2.0;
        let ab = (-2.0 * profile.a(c) + 2.0 * c) / (2.0 * c);
        assert!((ab - expected).abs() < 1e-12);
    }
}

#[test]
fn singular_points_are_rejected() {
    let s = SpaceSignature::build(1, 1).unwrap();
    let spec = FamilySpec::spherelike_normalized(&s, q(1, 2), 1).unwrap();
    let x = focal_point(&s, &spec, &[qi(0), qi(0)]).unwrap();
    let p = ModelPoint::new(x.v.iter().map(to_f64).collect(), x.z.iter().map(to_f64).collect(), to_f64(&x.t)).unwrap();
    assert!(mean_curvature_numeric(&s, &spec, &p).is_err());
}
