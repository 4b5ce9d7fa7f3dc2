use std::f64::consts::PI;

use dcn::cmat2::to_cmat2;
use dcn::deform::{auto_weights, deform, Mesh, Pose, Probe, Rect};
use dcn::dualquat::to_dualquat;
use dcn::se2::{from_se2, to_se2};
use dcn::{dlb, exp, slerp, Complex, Dcn, DcnTangent, Point2, UnitDcn};
use proptest::prelude::*;

fn cx(r: f64) -> impl Strategy<Value = Complex> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex::new(a, b))
}

fn any_dcn() -> impl Strategy<Value = Dcn> {
    (cx(10.0), cx(10.0)).prop_map(|(a, b)| Dcn::new(a, b))
}

fn any_unit() -> impl Strategy<Value = UnitDcn> {
    (-PI..PI, cx(10.0)).prop_map(|(a, t)| UnitDcn::new(Complex::from_polar(1.0, a), t).unwrap())
}

fn any_point() -> impl Strategy<Value = Point2> {
    (-10.0..10.0, -10.0..10.0).prop_map(|(x, y)| Point2::new(x, y))
}

fn err(a: Dcn, b: Dcn) -> f64 {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in any_dcn(), b in any_dcn()) {
        let lhs = (a * b).norm();
        let rhs = a.norm() * b.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1e-300));
    }

    #[test]
    fn tilde_reverses_products_up_to_norm(a in any_dcn(), b in any_dcn()) {
        // the involution is only multiplicative on primal parts; norms agree
        let lhs = (a * b).conj_tilde().norm();
        let rhs = (b.conj_tilde() * a.conj_tilde()).norm();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }

    #[test]
    fn general_inverse_is_two_sided(a in any_dcn()) {
        prop_assume!(a.norm() > 1e-3);
        let inv = a.inverse().unwrap();
        prop_assert!(err(a * inv, Dcn::ONE) < 1e-9);
        prop_assert!(err(inv * a, Dcn::ONE) < 1e-9);
    }

    #[test]
    fn units_form_a_group(p in any_unit(), q in any_unit()) {
        prop_assert!(err(p.as_dcn() * p.inverse().as_dcn(), Dcn::ONE) < 1e-12);
        prop_assert!(((p * q).p0().norm() - 1.0).abs() < 1e-12);
        prop_assert!((p.inverse().p0().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn action_is_rigid(p in any_unit(), u in any_point(), v in any_point()) {
        let before = u.distance(v);
        let after = p.act(u).distance(p.act(v));
        prop_assert!((before - after).abs() <= 1e-9 * before.max(1.0));
    }

    #[test]
    fn action_is_a_group_action(p in any_unit(), q in any_unit(), v in any_point()) {
        prop_assert!((p * q).act(v).distance(p.act(q.act(v))) < 1e-9);
    }

    #[test]
    fn opposite_lifts_act_identically(p in any_unit(), v in any_point()) {
        prop_assert_eq!(p.act(v), (-p).act(v));
        prop_assert_eq!(to_se2(p), to_se2(-p));
    }

    #[test]
    fn dlb_projects_repeated_input(p in any_unit(), w1 in 0.01f64..5.0, w2 in 0.01f64..5.0) {
        prop_assert!(err(dlb(&[p, p], &[w1, w2]).unwrap().as_dcn(), p.as_dcn()) < 1e-12);
        prop_assert!(err(dlb(&[p, -p], &[w1, w2]).unwrap().as_dcn(), p.as_dcn()) < 1e-12);
    }

    #[test]
    fn dlb_is_scale_invariant(ps in prop::collection::vec(any_unit(), 1..6), s in 0.1f64..10.0, seed in any::<u64>()) {
        let ws: Vec<f64> = (0..ps.len()).map(|k| 0.1 + ((seed >> (k * 8)) & 0xff) as f64 / 64.0).collect();
        let scaled: Vec<f64> = ws.iter().map(|w| w * s).collect();
        let a = dlb(&ps, &ws).unwrap();
        let b = dlb(&ps, &scaled).unwrap();
        prop_assert!(err(a.as_dcn(), b.as_dcn()) < 1e-12);
    }

    #[test]
    fn exp_log_round_trip(theta in (-PI + 0.01)..(PI - 0.01), t in cx(10.0)) {
        let x = DcnTangent::new(theta, t);
        let back = exp(x).log().unwrap();
        prop_assert!((back.theta - theta).abs() < 1e-10);
        prop_assert!((back.t - t).norm() < 1e-10);
    }

    #[test]
    fn pow_adds_exponents(p in any_unit(), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        prop_assume!(p.p0().re > -0.99);
        let lhs = p.pow(s).unwrap() * p.pow(t).unwrap();
        let rhs = p.pow(s + t).unwrap();
        prop_assert!(err(lhs.as_dcn(), rhs.as_dcn()) < 1e-9);
    }

    #[test]
    fn slerp_is_left_invariant(g in any_unit(), p in any_unit(), q in any_unit(), t in 0.0f64..1.0) {
        let pq = (p.p0() * q.hemisphere_aligned(p).p0().conj()).re;
        prop_assume!(pq > 0.01);
        let lhs = g * slerp(p, q, t).unwrap();
        let rhs = slerp(g * p, g * q, t).unwrap();
        prop_assert!(err(lhs.as_dcn(), rhs.as_dcn()) < 1e-9);
    }

    #[test]
    fn from_se2_inverts_to_se2_up_to_sign(p in any_unit()) {
        let back = from_se2(&to_se2(p)).unwrap();
        let e = err(back.as_dcn(), p.as_dcn()).min(err(back.as_dcn(), (-p).as_dcn()));
        prop_assert!(e < 1e-9);
        prop_assert!(back.p0().re >= 0.0);
    }

    #[test]
    fn embeddings_are_additive(a in any_dcn(), b in any_dcn()) {
        prop_assert_eq!(to_dualquat(a + b), to_dualquat(a) + to_dualquat(b));
        prop_assert_eq!(to_cmat2(a + b), to_cmat2(a) + to_cmat2(b));
    }

    #[test]
    fn deform_is_deterministic(seed_angle in -3.0f64..3.0, dx in -1.0f64..1.0) {
        let mesh = Mesh::grid(6, 6, Rect::new(0.0, 0.0, 1.0, 1.0)).unwrap();
        let mut probes = vec![Probe::at(0, Point2::new(0.2, 0.3)), Probe::at(1, Point2::new(0.7, 0.8))];
        probes[1].current = Pose::new(Point2::new(0.7 + dx, 0.8), seed_angle);
        let w = auto_weights(&mesh.vertices, &probes, 2.0, 1e-6).unwrap();
        let a = deform(&mesh, &probes, &w).unwrap();
        let b = deform(&mesh, &probes, &w).unwrap();
        prop_assert!(a.iter().zip(&b).all(|(p, q)| p.x.to_bits() == q.x.to_bits() && p.y.to_bits() == q.y.to_bits()));
    }
}
