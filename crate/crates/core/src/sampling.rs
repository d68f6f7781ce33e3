//! Random instances for the verification harness, tests and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{DualQuaternion, Quaternion, Vector3};
use crate::pauli::ComplexMatrix;
use crate::polynomial::{Term, ValidPolynomial};

/// Deterministic generator for trial `trial` of check `check` under `seed`.
pub fn trial_rng(seed: u64, check: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(check);
    rng.set_word_pos(u128::from(trial) << 20);
    rng
}

/// Quaternion with components uniform in `[-bound, bound]`.
pub fn quaternion_in_box<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> Quaternion {
    let mut c = || rng.random_range(-bound..=bound);
    Quaternion::new(c(), c(), c(), c())
}

pub fn vector_in_box<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> Vector3 {
    let mut c = || rng.random_range(-bound..=bound);
    Vector3::new(c(), c(), c())
}

/// Uniform direction on the unit sphere in `R^dim`.
fn unit_direction<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vector3 {
    let d = unit_direction(rng, 3);
    Vector3::new(d[0], d[1], d[2])
}

/// Quaternion with uniformly random direction and the given norm.
pub fn quaternion_with_norm<R: Rng + ?Sized>(rng: &mut R, norm: f64) -> Quaternion {
    let d = unit_direction(rng, 4);
    Quaternion::new(d[0], d[1], d[2], d[3]).scale(norm)
}

/// Dual quaternion uniform in the 8-dimensional ball of the given radius.
pub fn dual_quaternion_in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> DualQuaternion {
    let d = unit_direction(rng, 8);
    let r = radius * rng.random::<f64>().powf(1.0 / 8.0);
    DualQuaternion::new(
        Quaternion::new(d[0], d[1], d[2], d[3]).scale(r),
        Quaternion::new(d[4], d[5], d[6], d[7]).scale(r),
    )
}

/// Dual quaternion with both parts having components in `[-1, 1]`, so `|A|, |B| <= 2`.
pub fn dual_quaternion_in_box<R: Rng + ?Sized>(rng: &mut R) -> DualQuaternion {
    DualQuaternion::new(quaternion_in_box(rng, 1.0), quaternion_in_box(rng, 1.0))
}

/// Random valid polynomial: total degree drawn from `0..=max_degree`, every
/// monomial of at most that degree present with a coefficient uniform in
/// `[-bound, bound]`.
pub fn valid_polynomial<R: Rng + ?Sized>(rng: &mut R, max_degree: u32, bound: f64) -> ValidPolynomial {
    let degree = rng.random_range(0..=max_degree);
    let mut terms = Vec::new();
    for total in 0..=degree {
        for n in 0..=total {
            terms.push(Term { m: total - n, n, r: rng.random_range(-bound..=bound) });
        }
    }
    ValidPolynomial::from_terms(terms)
}

/// Random univariate complex polynomial of degree `0..=max_degree`.
pub fn complex_polynomial<R: Rng + ?Sized>(rng: &mut R, max_degree: usize, bound: f64) -> Vec<Complex64> {
    let degree = rng.random_range(0..=max_degree);
    (0..=degree)
        .map(|_| Complex64::new(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound)))
        .collect()
}

/// `U σ U†` for a random `U ∈ SU(2)` applied to scaled `σx`, `σy`.
pub fn anticommuting_pauli_pair<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> (ComplexMatrix, ComplexMatrix) {
    let q = quaternion_with_norm(rng, 1.0);
    let minus_i = Complex64::new(0.0, -1.0);
    let u = &(&(&ComplexMatrix::identity(2).scale(Complex64::new(q.w, 0.0))
        + &ComplexMatrix::pauli_x().scale(minus_i * q.x))
        + &ComplexMatrix::pauli_y().scale(minus_i * q.y))
        + &ComplexMatrix::pauli_z().scale(minus_i * q.z);
    let ud = u.adjoint();
    let s1 = rng.random_range(-scale..=scale);
    let s2 = rng.random_range(-scale..=scale);
    let a = &(&u * &ComplexMatrix::pauli_x()) * &ud;
    let b = &(&u * &ComplexMatrix::pauli_y()) * &ud;
    (a.scale(Complex64::new(s1, 0.0)), b.scale(Complex64::new(s2, 0.0)))
}
