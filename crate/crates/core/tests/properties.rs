use dqcalc::oracle::{kl_split_poly, poly_eval_dq};
use dqcalc::pauli::pauli_pascal_row;
use dqcalc::{
    apply, apply_dual_number, decompose, exp_dq, log_dq, pow_dq, screw_factor, ComplexScalar, DualNumber,
    DualQuaternion, LogBranch, Quaternion, Term, ValidFunction, ValidPolynomial,
};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (coord(), coord(), coord(), coord()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn dual_quaternion() -> impl Strategy<Value = DualQuaternion> {
    (quaternion(), quaternion()).prop_map(|(a, b)| DualQuaternion::new(a, b))
}

fn polynomial() -> impl Strategy<Value = ValidPolynomial> {
    prop::collection::vec((0u32..5, 0u32..5, -1.0..1.0f64), 0..12)
        .prop_map(|terms| ValidPolynomial::from_terms(terms.into_iter().map(|(m, n, r)| Term { m, n, r })))
}

fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

proptest! {
    #[test]
    fn quaternion_product_is_associative(p in quaternion(), q in quaternion(), r in quaternion()) {
        prop_assert!(close((p * q) * r, p * (q * r), 1e-14));
    }

    #[test]
    fn quaternion_norm_is_multiplicative(p in quaternion(), q in quaternion()) {
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs() <= 1e-14 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn conjugation_reverses_products(p in quaternion(), q in quaternion()) {
        prop_assert!(close((p * q).conj(), q.conj() * p.conj(), 1e-15));
    }

    #[test]
    fn dual_product_is_associative(a in dual_quaternion(), b in dual_quaternion(), c in dual_quaternion()) {
        prop_assert!(((a * b) * c).relative_defect(a * (b * c)) <= 1e-14);
    }

    #[test]
    fn dual_conjugation_reverses_products(a in dual_quaternion(), b in dual_quaternion()) {
        prop_assert!((a * b).conj().relative_defect(b.conj() * a.conj()) <= 1e-15);
    }

    #[test]
    fn decomposition_reassembles_with_parallel_and_perpendicular_parts(eta in dual_quaternion()) {
        let d = decompose(eta);
        prop_assert!(d.reassemble().relative_defect(eta) <= 1e-15);
        prop_assert!(d.b1.cross(d.a1).norm() <= 1e-14 * (1.0 + d.a1.norm() * d.b1.norm()));
        prop_assert!(d.b2.dot(d.a1).abs() <= 1e-14 * (1.0 + d.a1.norm() * d.b2.norm()));
    }

    #[test]
    fn polynomial_calculus_matches_direct_algebra(p in polynomial(), eta in dual_quaternion()) {
        let v = apply(&ValidFunction::polynomial(p.clone()), eta).unwrap();
        prop_assert!(v.relative_defect(poly_eval_dq(&p, eta)) <= 1e-11);
    }

    #[test]
    fn polynomial_ring_operations_evaluate_pointwise(p in polynomial(), q in polynomial(), x in coord(), y in coord()) {
        let z = ComplexScalar::new(x, y);
        let (pz, qz) = (p.eval(z), q.eval(z));
        let scale = 1.0 + pz.norm() * qz.norm() + pz.norm() + qz.norm();
        prop_assert!(((p.clone() * q.clone()).eval(z) - pz * qz).norm() <= 1e-11 * scale);
        prop_assert!(((p.clone() + q.clone()).eval(z) - (pz + qz)).norm() <= 1e-12 * scale);
        prop_assert!((p.conj().eval(z) - pz.conj()).norm() <= 1e-12 * scale);
        prop_assert!((p.eval(z.conj()) - pz.conj()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn univariate_polynomials_satisfy_cauchy_riemann(coeffs in prop::collection::vec(-1.0..1.0f64, 1..8)) {
        let p = ValidPolynomial::from_univariate(&coeffs);
        let (px, piy) = p.partials();
        let diff = px - piy;
        prop_assert!(diff.terms().iter().all(|t| t.r.abs() <= 1e-12));
    }

    #[test]
    fn kl_split_reconstructs(coeffs in prop::collection::vec(-1.0..1.0f64, 0..11), x in coord(), y in coord()) {
        let z = ComplexScalar::new(x, y);
        let horner = |c: &[f64], w: ComplexScalar| c.iter().rev().fold(ComplexScalar::new(0.0, 0.0), |acc, &a| acc * w + a);
        let (k, l) = kl_split_poly(&coeffs);
        let want = horner(&coeffs, z);
        let got = horner(&k, z * z) + horner(&l, z * z) * z;
        prop_assert!((got - want).norm() <= 1e-12 * (1.0 + want.norm()));
    }

    #[test]
    fn exp_of_negation_is_inverse(eta in dual_quaternion()) {
        let prod = exp_dq(eta) * exp_dq(-eta);
        prop_assert!((prod - DualQuaternion::ONE).component_norm() <= 1e-13);
    }

    #[test]
    fn exp_norm_depends_on_scalar_part(a in quaternion()) {
        let e = exp_dq(DualQuaternion::from_real(a)).real;
        prop_assert!((e.norm() - a.w.exp()).abs() <= 1e-14 * a.w.exp());
    }

    #[test]
    fn log_inverts_exp_on_small_arguments(eta in dual_quaternion()) {
        // imaginary norm below pi keeps exp inside the principal branch
        let small = eta.scale(0.5);
        let back = log_dq(exp_dq(small), &LogBranch::default()).unwrap();
        prop_assert!(back.relative_defect(small) <= 1e-12);
    }

    #[test]
    fn integer_powers_match_repeated_products(a in quaternion(), b in quaternion(), n in 1u32..6) {
        let eta = DualQuaternion::new(Quaternion::new(a.w.abs() + 0.5, a.x, a.y, a.z), b);
        let want = (1..n).fold(eta, |acc, _| acc * eta);
        prop_assert!(pow_dq(eta, f64::from(n)).unwrap().relative_defect(want) <= 1e-12);
    }

    #[test]
    fn dual_number_calculus_embeds_in_dual_quaternions(a in coord(), b in coord(), p in polynomial()) {
        let f = ValidFunction::polynomial(p);
        let d = apply_dual_number(&f, DualNumber::new(a, b)).unwrap();
        let q = apply(&f, DualNumber::new(a, b).to_dual_quaternion()).unwrap();
        prop_assert!(d.to_dual_quaternion().relative_defect(q) <= 1e-12);
    }

    #[test]
    fn screw_core_dual_part_is_parallel_to_axis(eta in dual_quaternion()) {
        let s = screw_factor(eta);
        let axis = s.core.real.vector();
        let dual = s.core.dual.vector();
        prop_assert!(s.reassemble().relative_defect(eta) <= 1e-13);
        prop_assert!(axis.cross(dual).norm() <= 1e-12 * (1.0 + axis.norm() * dual.norm()));
    }

    #[test]
    fn pascal_row_sums(n in 0usize..=32) {
        let row = pauli_pascal_row(n).unwrap();
        let sum: u64 = row.iter().sum();
        prop_assert_eq!(sum, 1u64 << n.div_ceil(2));
        prop_assert_eq!(row.len(), n + 1);
    }
}
