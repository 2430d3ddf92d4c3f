use proptest::prelude::*;

use drlab::htype::SpaceSignature;
use drlab::model::{
    geodesic_flow, group_inverse, group_multiply, left_invariant_frame, left_translate, left_translation_differential,
    metric_at, ModelPoint, TangentVector,
};
use drlab::numeric::family_value;
use drlab::rational::{q, qi};
use drlab::verify::FamilySpec;
use drlab::Q;

fn sig() -> SpaceSignature {
    SpaceSignature::build(3, 1).unwrap()
}

fn rat() -> impl Strategy<Value = Q> {
    (-5i64..=5, 1i64..=3).prop_map(|(a, b)| q(a, b))
}

/// Points with `t` a rational square so that `√t` stays exact.
fn point(n: usize, m: usize) -> impl Strategy<Value = ModelPoint<Q>> {
    (proptest::collection::vec(rat(), n), proptest::collection::vec(rat(), m), 1i64..=4, 1i64..=3)
        .prop_map(|(v, z, a, b)| ModelPoint::new(v, z, q(a * a, b * b)).unwrap())
}

fn tangent(n: usize, m: usize) -> impl Strategy<Value = TangentVector<Q>> {
    (proptest::collection::vec(rat(), n), proptest::collection::vec(rat(), m), rat())
        .prop_map(|(dv, dz, dt)| TangentVector { dv, dz, dt })
}

#[test]
fn multiplication_examples() {
    let s = SpaceSignature::build(1, 1).unwrap();
    let p = ModelPoint::new(vec![qi(1), qi(2)], vec![qi(3)], qi(5)).unwrap();
    let e = ModelPoint::identity(&s);
    assert_eq!(group_multiply(&s, &e, &p).unwrap(), p);
    let dil = ModelPoint::new(vec![qi(0), qi(0)], vec![qi(0)], qi(4)).unwrap();
    let out = group_multiply(&s, &dil, &p).unwrap();
    assert_eq!(out, ModelPoint::new(vec![qi(2), qi(4)], vec![qi(12)], qi(20)).unwrap());

    let a = ModelPoint::new(vec![qi(1), qi(0)], vec![qi(0)], qi(1)).unwrap();
    let b = ModelPoint::new(vec![qi(0), qi(1)], vec![qi(0)], qi(1)).unwrap();
    assert_eq!(group_multiply(&s, &a, &b).unwrap().z, vec![q(1, 2)]);
    assert!(ModelPoint::new(vec![qi(0)], vec![], qi(0)).is_err());
}

#[test]
fn metric_examples() {
    let s = SpaceSignature::build(1, 1).unwrap();
    let o = ModelPoint::identity(&s);
    let u = TangentVector { dv: vec![qi(1), qi(2)], dz: vec![qi(3)], dt: qi(4) };
    let w = TangentVector { dv: vec![qi(-1), qi(1)], dz: vec![qi(2)], dt: qi(1) };
    assert_eq!(metric_at(&s, &o, &u, &w).unwrap(), qi(-1 + 2 + 6 + 4));
    let p = ModelPoint::new(vec![qi(0), qi(0)], vec![qi(0)], qi(3)).unwrap();
    let v = TangentVector { dv: vec![qi(1), qi(2)], dz: vec![qi(0)], dt: qi(0) };
    assert_eq!(metric_at(&s, &p, &v, &v).unwrap(), q(5, 3));
}

#[test]
fn frame_at_origin_is_coordinate_frame() {
    let s = sig();
    let frame = left_invariant_frame(&s, &ModelPoint::<Q>::identity(&s)).unwrap();
    for (k, e) in frame.iter().enumerate() {
        let x = e.coords();
        for (j, c) in x.iter().enumerate() {
            assert_eq!(*c, if j == k { qi(1) } else { qi(0) });
        }
    }
}

#[test]
fn frame_has_bracket_term() {
    let s = SpaceSignature::build(1, 1).unwrap();
    let p = ModelPoint::new(vec![qi(2), qi(0)], vec![qi(0)], qi(4)).unwrap();
    let frame = left_invariant_frame(&s, &p).unwrap();
    // E_2 = 2(∂_{e_2} − ½ [e_2, v] ∂_z) with [e_2, 2e_1] = −2.
    assert_eq!(frame[1].dz, vec![qi(2)]);
}

#[test]
fn vertical_geodesic() {
    let s = sig();
    let p0 = ModelPoint::<f64>::identity(&s);
    let mut u = TangentVector::zero(&s);
    u.dt = 1.0;
    let path = geodesic_flow(&s, &p0, &u, 2.0, 400).unwrap();
    for smp in &path.samples {
        assert!((smp.point.t - smp.s.exp()).abs() < 1e-8 * smp.s.exp());
        assert!(smp.point.v.iter().chain(&smp.point.z).all(|x| x.abs() < 1e-12));
    }
    let s_end = 3f64.ln();
    let path = geodesic_flow(&s, &p0, &u, s_end, 200).unwrap();
    let spec = FamilySpec::DistanceLike { x0: ModelPoint::identity(&s) };
    let f = family_value(&s, &spec, &path.end().coords()).unwrap();
    assert!((f - 16.0 / 3.0).abs() < 1e-8);
    assert_eq!(geodesic_flow(&s, &p0, &u, 0.0, 0).unwrap().samples.len(), 1);
}

#[test]
fn geodesic_speed_is_conserved() {
    for (m, c) in [(1, 1), (2, 2), (3, 1)] {
        let s = SpaceSignature::build(m, c).unwrap();
        let p0 = ModelPoint::new(vec![0.3; s.n()], vec![-0.2; s.m()], 0.7).unwrap();
        let mut u = TangentVector::zero(&s);
        u.dv[0] = 1.0;
        u.dz.iter_mut().for_each(|x| *x = 0.5);
        u.dt = -0.3;
        let path = geodesic_flow(&s, &p0, &u, 3.0, 600).unwrap();
        assert!(path.max_speed_error() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(a in point(4, 3), b in point(4, 3), c in point(4, 3)) {
        let s = sig();
        let ab_c = group_multiply(&s, &group_multiply(&s, &a, &b).unwrap(), &c).unwrap();
        let a_bc = group_multiply(&s, &a, &group_multiply(&s, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let inv = group_inverse(&s, &a).unwrap();
        let e = ModelPoint::identity(&s);
        prop_assert_eq!(group_multiply(&s, &a, &inv).unwrap(), e.clone());
        prop_assert_eq!(group_multiply(&s, &inv, &a).unwrap(), e);
    }

    #[test]
    fn metric_is_left_invariant(g in point(4, 3), p in point(4, 3), u in tangent(4, 3), w in tangent(4, 3)) {
        let s = sig();
        let gp = left_translate(&s, &g, &p).unwrap();
        let du = left_translation_differential(&s, &g, &u).unwrap();
        let dw = left_translation_differential(&s, &g, &w).unwrap();
        prop_assert_eq!(metric_at(&s, &gp, &du, &dw).unwrap(), metric_at(&s, &p, &u, &w).unwrap());
    }

    #[test]
    fn frame_is_orthonormal(p in point(4, 3)) {
        let s = sig();
        let frame = left_invariant_frame(&s, &p).unwrap();
        for (i, a) in frame.iter().enumerate() {
            for (j, b) in frame.iter().enumerate() {
                prop_assert_eq!(metric_at(&s, &p, a, b).unwrap(), if i == j { qi(1) } else { qi(0) });
            }
        }
    }
}
