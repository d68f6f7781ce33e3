//! Brute-force ground truth for the closed-form calculus.
//!
//! Nothing here calls into `calculus`. Polynomials are evaluated by literal
//! substitution `x ↦ S = (η + η̄)/2`, `iy ↦ V = (η - η̄)/2` and repeated
//! products; `exp` by its power series.

use crate::algebra::{DualQuaternion, Quaternion};
use crate::polynomial::ValidPolynomial;

/// The substitution `x ↦ S`, `iy ↦ V` applied to a dual quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialExpansion {
    /// `S = (η + η̄)/2 = a0 + εb0`, central.
    pub s: DualQuaternion,
    /// `V = (η - η̄)/2 = a1 + εb`.
    pub v: DualQuaternion,
}

impl MonomialExpansion {
    pub fn new(eta: DualQuaternion) -> Self {
        MonomialExpansion { s: (eta + eta.conj()).scale(0.5), v: (eta - eta.conj()).scale(0.5) }
    }
}

fn powers(base: DualQuaternion, max: usize) -> Vec<DualQuaternion> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(DualQuaternion::ONE);
    for k in 1..=max {
        out.push(out[k - 1] * base);
    }
    out
}

/// `Σ r S^m V^n` by explicit products.
pub fn poly_eval_dq(p: &ValidPolynomial, eta: DualQuaternion) -> DualQuaternion {
    poly_eval_dq_ordered(p, eta, false)
}

/// As [`poly_eval_dq`], optionally with each monomial written `V^n S^m`.
/// Both orders agree because `S` is central.
pub fn poly_eval_dq_ordered(p: &ValidPolynomial, eta: DualQuaternion, v_first: bool) -> DualQuaternion {
    let ex = MonomialExpansion::new(eta);
    let terms = p.terms();
    let max_m = terms.iter().map(|t| t.m).max().unwrap_or(0) as usize;
    let max_n = terms.iter().map(|t| t.n).max().unwrap_or(0) as usize;
    let sp = powers(ex.s, max_m);
    let vp = powers(ex.v, max_n);
    let mut acc = DualQuaternion::ZERO;
    for t in terms {
        let (s, v) = (sp[t.m as usize], vp[t.n as usize]);
        let mono = if v_first { v * s } else { s * v };
        acc += mono.scale(t.r);
    }
    acc
}

/// `p(A)` for a quaternion, by the same substitution.
pub fn poly_eval_quat(p: &ValidPolynomial, a: Quaternion) -> Quaternion {
    poly_eval_dq(p, DualQuaternion::from_real(a)).real
}

/// `d/dr p(A + rB)` at `r = 0`.
///
/// Each monomial `S^m V^n` is a product of `m + n` factors; its derivative is
/// the sum over positions of the product with that one factor replaced by
/// the matching part of `B`.
pub fn nc_derivative(p: &ValidPolynomial, a: Quaternion, b: Quaternion) -> Quaternion {
    let s_a = Quaternion::from_real(a.w);
    let v_a = a.vector().to_quaternion();
    let s_b = Quaternion::from_real(b.w);
    let v_b = b.vector().to_quaternion();
    let mut acc = Quaternion::ZERO;
    for t in p.terms() {
        let factors: Vec<(Quaternion, Quaternion)> = std::iter::repeat_n((s_a, s_b), t.m as usize)
            .chain(std::iter::repeat_n((v_a, v_b), t.n as usize))
            .collect();
        for pos in 0..factors.len() {
            let prod = factors
                .iter()
                .enumerate()
                .fold(Quaternion::ONE, |acc, (i, &(fa, fb))| acc * if i == pos { fb } else { fa });
            acc += prod.scale(t.r);
        }
    }
    acc
}

/// `Σ_{k=0}^{N} η^k / k!`.
pub fn taylor_exp(eta: DualQuaternion, terms: usize) -> DualQuaternion {
    let mut term = DualQuaternion::ONE;
    let mut sum = DualQuaternion::ONE;
    for k in 1..=terms {
        term = (term * eta).scale(1.0 / k as f64);
        sum += term;
    }
    sum
}

/// Even/odd coefficient split `p(z) = k(z²) + l(z²) z` of a univariate
/// real polynomial `p(z) = Σ c[j] z^j`.
pub fn kl_split_poly(coeffs: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let k = coeffs.iter().step_by(2).copied().collect();
    let l = coeffs.iter().skip(1).step_by(2).copied().collect();
    (k, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Term;
    use num_complex::Complex64;
    use std::f64::consts::{E, PI};

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn coordinate_polynomials() {
        let eta = DualQuaternion::new(q(1.5, -0.3, 0.2, 0.8), q(-0.4, 0.6, 1.1, 0.2));
        let sx = poly_eval_dq(&ValidPolynomial::x(), eta);
        assert_eq!(sx, DualQuaternion::new(Quaternion::from_real(1.5), Quaternion::from_real(-0.4)));

        let iy2 = ValidPolynomial::from_terms([Term { m: 0, n: 2, r: 1.0 }]);
        let v2 = poly_eval_dq(&iy2, DualQuaternion::new(Quaternion::I, Quaternion::J));
        assert_eq!(v2, DualQuaternion::from_real(-Quaternion::ONE));
    }

    #[test]
    fn modulus_squared_polynomial() {
        // x² - (iy)² = x² + y² = z z̄
        let p = ValidPolynomial::from_terms([Term { m: 2, n: 0, r: 1.0 }, Term { m: 0, n: 2, r: -1.0 }]);
        let eta = DualQuaternion::new(q(0.5, -1.0, 0.3, 0.2), q(0.1, 0.7, -0.6, 1.3));
        let sym = (eta * eta.conj() + eta.conj() * eta).scale(0.5);
        assert!((poly_eval_dq(&p, eta) - sym).component_norm() < 1e-14);
    }

    #[test]
    fn derivative_examples() {
        let a = q(0.2, 0.5, -0.3, 0.9);
        let b = q(-0.7, 0.1, 0.4, 0.6);
        let sq = ValidPolynomial::from_univariate(&[0.0, 0.0, 1.0]);
        assert!((nc_derivative(&sq, a, b) - (a * b + b * a)).norm() < 1e-15);
        assert_eq!(nc_derivative(&ValidPolynomial::constant(1.0), a, b), Quaternion::ZERO);

        // z³ at A = i, B = j: i i j + i j i + j i i
        let cube = ValidPolynomial::from_univariate(&[0.0, 0.0, 0.0, 1.0]);
        let (i, j) = (Quaternion::I, Quaternion::J);
        let direct = i * i * j + i * j * i + j * i * i;
        assert!((nc_derivative(&cube, i, j) - direct).norm() < 1e-15);
    }

    #[test]
    fn series_exp_examples() {
        assert_eq!(taylor_exp(DualQuaternion::ZERO, 40), DualQuaternion::ONE);
        let e = taylor_exp(DualQuaternion::ONE, 40);
        assert!((e.real.w - E).abs() < 1e-15);
        let r = taylor_exp(DualQuaternion::new(Quaternion::I.scale(PI), Quaternion::J), 40);
        assert!((r - DualQuaternion::from_real(-Quaternion::ONE)).component_norm() < 1e-12);
    }

    #[test]
    fn kl_split_examples() {
        assert_eq!(kl_split_poly(&[0.0, 0.0, 1.0]), (vec![0.0, 1.0], vec![0.0]));
        assert_eq!(kl_split_poly(&[0.0, 1.0, 0.0, 1.0]), (vec![0.0, 0.0], vec![1.0, 1.0]));
        let coeffs = [1.0, 1.0, 1.0, 1.0];
        let (k, l) = kl_split_poly(&coeffs);
        assert_eq!((k.clone(), l.clone()), (vec![1.0, 1.0], vec![1.0, 1.0]));
        let eval = |c: &[f64], z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| acc * z + x);
        let z = Complex64::new(0.4, -1.2);
        assert!((eval(&k, z * z) + eval(&l, z * z) * z - eval(&coeffs, z)).norm() < 1e-15);
    }
}
