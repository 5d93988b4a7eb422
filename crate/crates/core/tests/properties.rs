use num_complex::Complex64;
use proptest::prelude::*;
use ulambda::bounds::{b_a, cauchy_schwarz_bound, conjecture_bound, v_of_x};
use ulambda::uclass::{l_of_phi, q_from_phi, sup_u, taylor_of_f, u_of_q};
use ulambda::{DiskFunction, DiskSpec, GridSpec, TruncatedSeries};

fn disk_point(max_r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_r, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), order + 1).prop_map(|v| {
        let mut c: Vec<Complex64> = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        c[0] += 2.0;
        TruncatedSeries::new(c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn v_lies_between_one_half_and_one(x in 0.0..1.0f64) {
        let v = v_of_x(x);
        prop_assert!((0.5..1.0).contains(&v));
        prop_assert!(v_of_x((x + 1e-3).min(1.0)) >= v);
    }

    #[test]
    fn b_a_is_bounded_by_v(a in disk_point(0.98), z in disk_point(1.0)) {
        let b = b_a(a, z).unwrap();
        prop_assert!(b.norm() <= v_of_x(a.norm()) + 1e-12);
    }

    #[test]
    fn b_a_rotation_identity(a in disk_point(0.95), z in disk_point(1.0), beta in 0.0..std::f64::consts::TAU) {
        let e = Complex64::from_polar(1.0, beta);
        let lhs = b_a(a * e, z).unwrap();
        let rhs = e * b_a(a, z * e.conj()).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn conjectured_bound_never_exceeds_proven_bound(n in 2usize..200, lambda in 0.0..=1.0f64) {
        prop_assert!(conjecture_bound(n, lambda) <= cauchy_schwarz_bound(n, lambda) * (1.0 + 1e-12));
    }

    #[test]
    fn product_evaluates_pointwise(s in series(12), t in series(12), z in disk_point(0.1)) {
        let lhs = s.mul(&t).eval(z).unwrap();
        let rhs = s.eval(z).unwrap() * t.eval(z).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn reciprocal_inverts(s in series(16)) {
        let one = s.mul(&s.reciprocal().unwrap());
        prop_assert!((one.coeffs()[0] - 1.0).norm() < 1e-12);
        for c in &one.coeffs()[1..] {
            prop_assert!(c.norm() < 1e-9);
        }
    }

    #[test]
    fn composition_evaluates_pointwise(s in series(10), w in disk_point(0.5), z in disk_point(0.2)) {
        // inner series vanishing at the origin, as composition requires
        let inner = TruncatedSeries::with_order(&[Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0), w * 0.3], 10).unwrap();
        let composed = TruncatedSeries::compose(&s, &inner).unwrap();
        let direct = s.eval(inner.eval(z).unwrap()).unwrap();
        prop_assert!((composed.eval(z).unwrap() - direct).norm() < 1e-6 * (1.0 + direct.norm()));
    }

    #[test]
    fn disk_spec_round_trips(a in disk_point(0.99), psi in -3.0..3.0f64) {
        let spec = DiskSpec::Moebius { a, psi };
        let json = serde_json::to_string(&spec).unwrap();
        let back: DiskSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn rotations_give_members_with_extremal_a2(theta in 0.0..std::f64::consts::TAU, lambda in 0.05..=1.0f64) {
        let cand = q_from_phi(lambda, &DiskFunction::rotation(theta).unwrap(), 64).unwrap();
        let grid = GridSpec::default();
        let rep = sup_u(&cand, &grid).unwrap();
        prop_assert!(rep.sup_estimate <= lambda * grid.outer_radius().powi(2) + 1e-10);
        let a2 = taylor_of_f(&cand).unwrap().coeff(2).unwrap();
        prop_assert!((a2.norm() - (1.0 + lambda)).abs() < 1e-12);
    }

    #[test]
    fn l_of_phi_is_the_modulus_of_u(a in disk_point(0.7), rot in 0.0..std::f64::consts::TAU, lambda in 0.05..=1.0f64, z in disk_point(0.9)) {
        // phi need not produce a member for the identity to hold
        let phi = DiskFunction::blaschke(vec![Complex64::new(0.0, 0.0), a], rot).unwrap();
        let cand = q_from_phi(lambda, &phi, 256).unwrap();
        let direct = u_of_q(&cand, z).unwrap().norm();
        prop_assert!((l_of_phi(lambda, &phi, z).unwrap() - direct).abs() < 1e-9);
    }
}
