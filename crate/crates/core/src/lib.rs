//! Functional calculus for dual quaternions.
//!
//! A complex function `f` with `f(z̄) = conj(f(z))` (a *valid* function)
//! extends to quaternions and dual quaternions. This crate evaluates that
//! extension in closed form ([`calculus::apply`] and the specialised
//! [`exp_dq`], [`log_dq`], [`pow_dq`], [`inv_dq`], [`cayley_dq`], [`dq_abs`]),
//! and ships brute-force evaluators ([`oracle`]) plus a seeded verification
//! harness ([`verify`]) that cross-check it.
//!
//! ```
//! use dqcalc::{exp_dq, log_dq, DualQuaternion, LogBranch, Quaternion};
//!
//! let eta = DualQuaternion::new(Quaternion::new(0.5, 0.1, -0.3, 0.2), Quaternion::J);
//! let back = exp_dq(log_dq(eta, &LogBranch::default()).unwrap());
//! assert!(back.relative_defect(eta) < 1e-14);
//! ```

pub mod algebra;
pub mod calculus;
pub mod error;
pub mod oracle;
pub mod pauli;
pub mod polynomial;
pub mod sampling;
pub mod valid;
pub mod verify;

pub use algebra::{decompose, dq_mul, quat_mul, DecomposedDual, DualNumber, DualQuaternion, Quaternion, Vector3};
pub use calculus::{
    apply, apply_anticommute, apply_commuting, apply_dual_number, apply_quaternion, apply_via_screw, cayley_dq,
    cayley_dq_forms, dq_abs, exp_dq, inv_dq, log_dq, log_dq_with_branch, pow_dq, screw_factor, LogBranch,
    ResolvedLogBranch, ScrewFactorization,
};
pub use error::{CalcError, Result};
pub use pauli::{ComplexMatrix, SeriesSplit};
pub use polynomial::{Term, ValidPolynomial};
pub use valid::{builtin, check_valid, eval_g, eval_h, poly_partials, Builtin, ComplexScalar, ValidFunction};
