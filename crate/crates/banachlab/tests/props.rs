//! Property tests for the norm-level invariants.

use banachlab::{pairing, rvec, NormedSpace, ScalarField, SearchBudget};
use num_complex::Complex64;
use proptest::prelude::*;

fn small_coord() -> impl Strategy<Value = f64> {
    prop_oneof![-3.0..3.0f64, Just(0.0), Just(1.0), Just(-1.0)]
}

fn vec3() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(small_coord(), 3)
}

fn spaces() -> Vec<NormedSpace> {
    vec![
        NormedSpace::lp(ScalarField::Real, 3, 1.0).unwrap(),
        NormedSpace::lp(ScalarField::Real, 3, 2.0).unwrap(),
        NormedSpace::lp(ScalarField::Real, 3, 2.5).unwrap(),
        NormedSpace::lp(ScalarField::Real, 3, f64::INFINITY).unwrap(),
        NormedSpace::weighted_euclidean(ScalarField::Real, vec![1.0, 2.0, 0.5]).unwrap(),
        NormedSpace::cross_polytope(3).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norms_are_homogeneous_and_subadditive(x in vec3(), y in vec3(), t in -4.0..4.0f64) {
        for space in spaces() {
            let xv = rvec(&x);
            let yv = rvec(&y);
            let nx = space.norm(&xv).unwrap();
            let ny = space.norm(&yv).unwrap();
            let scaled = space.norm(&(&xv * Complex64::new(t, 0.0))).unwrap();
            prop_assert!((scaled - t.abs() * nx).abs() <= 1e-12 * (1.0 + nx));
            let sum = space.norm(&(&xv + &yv)).unwrap();
            prop_assert!(sum <= nx + ny + 1e-12);
        }
    }

    #[test]
    fn duality_pairing_is_bounded(x in vec3(), f in vec3()) {
        for space in spaces() {
            let xv = rvec(&x);
            let fv = rvec(&f);
            let lhs = pairing(&fv, &xv).norm();
            let rhs = space.dual_norm(&fv).unwrap() * space.norm(&xv).unwrap();
            prop_assert!(lhs <= rhs + 1e-12, "{}: {lhs} > {rhs}", space.label());
        }
    }

    #[test]
    fn norming_face_attains_the_norm(x in vec3()) {
        for space in spaces() {
            let xv = rvec(&x);
            let value = space.norm(&xv).unwrap();
            if value < 1e-9 {
                continue;
            }
            let face = space.norming_functionals(&xv, 64).unwrap();
            for f in &face.functionals {
                prop_assert!((space.dual_norm(f).unwrap() - 1.0).abs() <= 1e-9);
                prop_assert!((pairing(f, &xv).re - value).abs() <= 1e-9 * (1.0 + value));
            }
        }
    }

    #[test]
    fn cross_polytope_norm_equals_l1(x in vec3()) {
        let cross = NormedSpace::cross_polytope(3).unwrap();
        let l1 = NormedSpace::lp(ScalarField::Real, 3, 1.0).unwrap();
        let xv = rvec(&x);
        prop_assert!((cross.norm(&xv).unwrap() - l1.norm(&xv).unwrap()).abs() <= 1e-9);
        prop_assert!((cross.dual_norm(&xv).unwrap() - l1.dual_norm(&xv).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn radius_is_dominated_by_operator_norm(entries in proptest::collection::vec(-2.0..2.0f64, 4)) {
        let space = NormedSpace::lp(ScalarField::Real, 2, 1.0).unwrap();
        let m = banachlab::rmat(&[&[entries[0], entries[1]], &[entries[2], entries[3]]]);
        let op = banachlab::OperatorRep::new(space.into(), m, SearchBudget::new(4, 60), 3).unwrap();
        let v = banachlab::numerical_radius(&op, SearchBudget::new(4, 60), 3).unwrap();
        prop_assert!(v.lower <= op.norm_bounds().upper + 1e-9);
        prop_assert!(v.upper <= op.norm_bounds().upper + 1e-12);
    }
}
