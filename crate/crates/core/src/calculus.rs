//! Extension of valid functions to quaternions and dual quaternions.
//!
//! The central routine is [`apply`]: with `A = a0 + a1`, `B = b0 + b1 + b2`
//! (`b1 ∥ a1`, `b2 ⊥ a1`),
//!
//! ```text
//! f(A + εB) = f(A) + ε f_x(A) b0 + ε f_iy(A) b1 + ε h(A) b2
//! ```
//!
//! where `f(A)`, `f_x(A)`, `f_iy(A)` are quaternion extensions and `h(A)` is
//! the real number `h(a0 + i|a1|)`. The remaining functions are the closed
//! forms for `exp`, `log`, powers, inverse, Cayley transform and modulus,
//! plus the screw-factorization route that reduces everything to the
//! commuting case.

use num_complex::Complex64;

use crate::algebra::{decompose, DualNumber, DualQuaternion, Quaternion, Vector3};
use crate::error::{CalcError, Result};
use crate::valid::{eval_g, eval_h, sinc, ValidFunction};

/// Relative tolerance for the commutation precondition of [`apply_commuting`].
pub const COMMUTE_TOL: f64 = 1e-10;

/// Relative tolerance for the parallel/perpendicular checks of [`apply_anticommute`].
pub const SHAPE_TOL: f64 = 1e-10;

/// Relative threshold below which the real part counts as zero.
pub const SINGULAR_TOL: f64 = 1e-12;

/// The complex point `a0 + i|a1|` attached to a quaternion.
pub fn complexify(a: Quaternion) -> Complex64 {
    if a.is_scalar_like() {
        Complex64::new(a.w, 0.0)
    } else {
        Complex64::new(a.w, a.vector().norm())
    }
}

fn domain_error(f: &ValidFunction, z: Complex64) -> CalcError {
    CalcError::Domain { function: f.name().to_string(), re: z.re, im: z.im }
}

fn require_nonzero_real(eta: DualQuaternion, op: &str) -> Result<()> {
    let n = eta.real.norm();
    if n > SINGULAR_TOL * (1.0 + eta.dual.norm()) && n.is_finite() {
        Ok(())
    } else {
        Err(CalcError::SingularInput(format!("{op} needs a nonzero real part, got |A| = {n:e}")))
    }
}

/// `f(a0 + a1) = g(a0 + i|a1|) + h(a0 + i|a1|) a1`, or `f(a0)` when `a1 = 0`.
pub fn apply_quaternion(f: &ValidFunction, a: Quaternion) -> Result<Quaternion> {
    let z = complexify(a);
    if z.im == 0.0 {
        if !f.in_domain(z) {
            return Err(domain_error(f, z));
        }
        return Ok(Quaternion::from_real(f.eval(z).re));
    }
    let g = eval_g(f, z)?;
    let h = eval_h(f, z)?;
    Ok(Quaternion::from_parts(g, a.vector().scale(h)))
}

/// `f(a + εb) = f(a) + ε f'(a) b` for `f` restricted to the real line.
pub fn apply_dual_number(f: &ValidFunction, d: DualNumber) -> Result<DualNumber> {
    let z = Complex64::new(d.a, 0.0);
    if !f.in_domain(z) {
        return Err(domain_error(f, z));
    }
    Ok(DualNumber::new(f.eval(z).re, f.fx(z).re * d.b))
}

/// Values of `f`, `f_x`, `f_iy` extended to the quaternion `a`.
fn extended_partials(f: &ValidFunction, a: Quaternion) -> Result<(Quaternion, Quaternion, Quaternion)> {
    Ok((
        apply_quaternion(f, a)?,
        apply_quaternion(&f.partial_x(), a)?,
        apply_quaternion(&f.partial_iy(), a)?,
    ))
}

/// `f(A + εB) = f(A) + ε f_x(A) b0 + ε f_iy(A) b1` when `AB = BA`.
///
/// The commutation is checked numerically:
/// `|AB - BA| <= COMMUTE_TOL (1 + |A|)(1 + |B|)`.
pub fn apply_commuting(f: &ValidFunction, eta: DualQuaternion) -> Result<DualQuaternion> {
    let (a, b) = (eta.real, eta.dual);
    let defect = a.commutator(b).norm();
    let tolerance = COMMUTE_TOL * (1.0 + a.norm()) * (1.0 + b.norm());
    if defect.is_nan() || defect > tolerance {
        return Err(CalcError::NonCommuting { defect, tolerance });
    }
    let (fa, fxa, fiya) = extended_partials(f, a)?;
    let dual = fxa.scale(b.w) + fiya * b.vector().to_quaternion();
    Ok(DualQuaternion::new(fa, dual))
}

/// `f(a + εb1 + εb2) = f(a + εb1) + ε h(a) b2` for pure `a`, `b1 ∥ a`, `b2 ⊥ a`.
pub fn apply_anticommute(f: &ValidFunction, a: Vector3, b1: Vector3, b2: Vector3) -> Result<DualQuaternion> {
    let scale = (1.0 + a.norm()) * (1.0 + b1.norm().max(b2.norm()));
    let parallel = b1.cross(a).norm();
    if parallel > SHAPE_TOL * scale {
        return Err(CalcError::ShapeMismatch(format!("b1 is not parallel to a (|b1 × a| = {parallel:e})")));
    }
    let perpendicular = b2.dot(a).abs();
    if perpendicular > SHAPE_TOL * scale {
        return Err(CalcError::ShapeMismatch(format!("b2 is not perpendicular to a (b2 · a = {perpendicular:e})")));
    }
    let commuting = apply_commuting(f, DualQuaternion::new(a.to_quaternion(), b1.to_quaternion()))?;
    let h = eval_h(f, Complex64::new(0.0, a.norm()))?;
    Ok(commuting + DualQuaternion::epsilon(b2.to_quaternion().scale(h)))
}

/// Extends a valid function to an arbitrary dual quaternion.
pub fn apply(f: &ValidFunction, eta: DualQuaternion) -> Result<DualQuaternion> {
    let d = decompose(eta);
    let a = d.real();
    let (fa, fxa, fiya) = extended_partials(f, a)?;
    let mut dual = fxa.scale(d.b0) + fiya * d.b1.to_quaternion();
    if !d.axis_is_zero() {
        let h = eval_h(f, complexify(a))?;
        dual += d.b2.to_quaternion().scale(h);
    }
    Ok(DualQuaternion::new(fa, dual))
}

/// `exp(A + εB) = e^{a0} ((cos|a1| + sinc|a1| a1)(1 + εB1) + ε sinc|a1| b2)`.
pub fn exp_dq(eta: DualQuaternion) -> DualQuaternion {
    let d = decompose(eta);
    let angle = d.a1.norm();
    let s = sinc(angle);
    let rotor = Quaternion::from_parts(angle.cos(), d.a1.scale(s));
    let e = d.a0.exp();
    let dual = rotor * d.commuting_dual() + d.b2.to_quaternion().scale(s);
    DualQuaternion::new(rotor.scale(e), dual.scale(e))
}

/// Branch selection for [`log_dq`].
///
/// `None` fields take the defaults: the principal angle `t = atan2(|a1|, a0)`,
/// and for scalar `A` the winding `n = 0` when `a0 > 0`, `n = 1` when `a0 < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBranch {
    pub t: Option<f64>,
    pub n: Option<i64>,
    /// Axis used for the `nπ` rotation when both `a1` and `b1` vanish.
    pub axis_fallback: Vector3,
    /// Free dual vector perpendicular to the rotation axis (scalar `A`, `n ≠ 0` only).
    pub p: Vector3,
}

impl Default for LogBranch {
    fn default() -> Self {
        LogBranch { t: None, n: None, axis_fallback: Vector3::K, p: Vector3::ZERO }
    }
}

/// The branch parameters actually used by a logarithm evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedLogBranch {
    pub t: f64,
    /// `Some` only for the scalar-`A` case.
    pub n: Option<i64>,
    pub axis: Vector3,
    pub p: Vector3,
}

/// A logarithm: `exp_dq(log_dq(η, branch)) = η`.
pub fn log_dq(eta: DualQuaternion, branch: &LogBranch) -> Result<DualQuaternion> {
    log_dq_with_branch(eta, branch).map(|(value, _)| value)
}

/// Like [`log_dq`], also reporting the resolved branch.
pub fn log_dq_with_branch(eta: DualQuaternion, branch: &LogBranch) -> Result<(DualQuaternion, ResolvedLogBranch)> {
    require_nonzero_real(eta, "log")?;
    let d = decompose(eta);
    let a = d.real();
    let norm_a = a.norm();

    if !d.axis_is_zero() {
        let len = d.a1.norm();
        let principal = len.atan2(d.a0);
        let t = match branch.t {
            None => principal,
            Some(t) => {
                let off = (t.cos() - d.a0 / norm_a).abs().max((t.sin() - len / norm_a).abs());
                if off.is_nan() || off > 1e-9 {
                    return Err(CalcError::InvalidParameter(format!(
                        "t = {t} is not a polar angle of ({}, {len})",
                        d.a0
                    )));
                }
                t
            }
        };
        let k = t / len;
        let real = Quaternion::from_parts(norm_a.ln(), d.a1.scale(k));
        let dual = (a.conj() * d.commuting_dual()).scale(1.0 / (norm_a * norm_a)) + d.b2.to_quaternion().scale(k);
        let resolved = ResolvedLogBranch { t, n: None, axis: d.a1.scale(1.0 / len), p: Vector3::ZERO };
        return Ok((DualQuaternion::new(real, dual), resolved));
    }

    let a0 = d.a0;
    let n = branch.n.unwrap_or(if a0 > 0.0 { 0 } else { 1 });
    if (n.rem_euclid(2) == 0) != (a0 > 0.0) {
        return Err(CalcError::InvalidParameter(format!(
            "winding n = {n} has the wrong parity for real part {a0}"
        )));
    }
    let b1_len = d.b1.norm();
    let axis = if b1_len > 0.0 {
        d.b1.scale(1.0 / b1_len)
    } else {
        let len = branch.axis_fallback.norm();
        if !(len > 0.0 && len.is_finite()) {
            return Err(CalcError::InvalidParameter("fallback axis must be a nonzero finite vector".into()));
        }
        branch.axis_fallback.scale(1.0 / len)
    };
    let p = branch.p;
    if n == 0 && p != Vector3::ZERO {
        return Err(CalcError::InvalidParameter("p must be zero when n = 0".into()));
    }
    if p.dot(axis).abs() > 1e-12 * p.norm() {
        return Err(CalcError::InvalidParameter("p must be perpendicular to the rotation axis".into()));
    }
    let t = n as f64 * std::f64::consts::PI;
    let real = Quaternion::from_parts(a0.abs().ln(), axis.scale(t));
    let dual = d.commuting_dual().scale(1.0 / a0) + p.to_quaternion();
    Ok((DualQuaternion::new(real, dual), ResolvedLogBranch { t, n: Some(n), axis, p }))
}

/// Principal power `(A + εB)^α = A^α + ε α A^{α-1} B1 + ε (Im(A^α)/Im(A)) b2`.
///
/// `Im` refers to the complex point `a0 + i|a1|`; at `a1 = 0` the ratio is
/// its limit `α a0^{α-1}`.
pub fn pow_dq(eta: DualQuaternion, alpha: f64) -> Result<DualQuaternion> {
    let pow = ValidFunction::pow(alpha)?;
    if eta.real.norm() <= SINGULAR_TOL * (1.0 + eta.dual.norm()) {
        // η = εB: the limit of the formula as A → 0
        return if alpha < 1.0 {
            Err(CalcError::SingularInput(format!("0^{alpha} with a zero real part")))
        } else if alpha == 1.0 {
            Ok(DualQuaternion::epsilon(eta.dual))
        } else {
            Ok(DualQuaternion::ZERO)
        };
    }
    let d = decompose(eta);
    let a = d.real();
    let z = complexify(a);
    if !pow.in_domain(z) {
        return Err(domain_error(&pow, z));
    }
    let a_alpha = apply_quaternion(&pow, a)?;
    let a_alpha_minus_one = apply_quaternion(&ValidFunction::pow(alpha - 1.0)?, a)?;
    let ratio = eval_h(&pow, z)?;
    let dual = (a_alpha_minus_one * d.commuting_dual()).scale(alpha) + d.b2.to_quaternion().scale(ratio);
    Ok(DualQuaternion::new(a_alpha, dual))
}

/// `(A + εB)^{-1} = A^{-1} - ε A^{-1} B A^{-1}`.
pub fn inv_dq(eta: DualQuaternion) -> Result<DualQuaternion> {
    require_nonzero_real(eta, "inverse")?;
    let inv = eta.real.inverse().expect("nonzero real part");
    Ok(DualQuaternion::new(inv, -(inv * eta.dual * inv)))
}

/// The Cayley transform `(1 + η)(1 - η)^{-1}` in closed form:
/// `(1+A)/(1-A) + ε 2(1-A)^{-2} B1 + ε 2|1-A|^{-2} b2`.
pub fn cayley_dq(eta: DualQuaternion) -> Result<DualQuaternion> {
    cayley_dq_forms(eta).map(|(closed, _)| closed)
}

/// Both forms of the Cayley transform: the closed form of [`cayley_dq`] and
/// the sandwich `(1+A)(1-A)^{-1} + 2ε (1-A)^{-1} B (1-A)^{-1}`.
pub fn cayley_dq_forms(eta: DualQuaternion) -> Result<(DualQuaternion, DualQuaternion)> {
    let one_minus = Quaternion::ONE - eta.real;
    let dist2 = one_minus.norm_squared();
    if dist2.is_nan() || dist2 <= SINGULAR_TOL * SINGULAR_TOL {
        return Err(CalcError::SingularInput("Cayley transform needs A ≠ 1".into()));
    }
    let cayley = ValidFunction::cayley();
    let d = decompose(eta);
    let a = d.real();
    let value = apply_quaternion(&cayley, a)?;
    let derivative = apply_quaternion(&cayley.partial_x(), a)?;
    let closed = DualQuaternion::new(
        value,
        derivative * d.commuting_dual() + d.b2.to_quaternion().scale(2.0 / dist2),
    );

    let inv = one_minus.inverse().expect("checked nonzero");
    let sandwich = DualQuaternion::new(
        (Quaternion::ONE + eta.real) * inv,
        (inv * eta.dual * inv).scale(2.0),
    );
    Ok((closed, sandwich))
}

/// Dual-number modulus `|A + εB| = |A| + ε Re(A conj(B)) / |A|`.
pub fn dq_abs(eta: DualQuaternion) -> Result<DualNumber> {
    require_nonzero_real(eta, "modulus")?;
    let n = eta.real.norm();
    Ok(DualNumber::new(n, (eta.real * eta.dual.conj()).w / n))
}

/// `η = (1 + εr) core (1 - εr)` with the dual vector part of `core` parallel to `a1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewFactorization {
    pub r: Vector3,
    pub core: DualQuaternion,
}

impl ScrewFactorization {
    /// `(1 + εr) core (1 - εr)`.
    pub fn reassemble(&self) -> DualQuaternion {
        conjugate_by_screw(self.r, self.core)
    }
}

/// `(1 + εr) X (1 - εr) = X + ε (r X_real - X_real r)`.
fn conjugate_by_screw(r: Vector3, x: DualQuaternion) -> DualQuaternion {
    let r = r.to_quaternion();
    DualQuaternion::new(x.real, x.dual + r.commutator(x.real))
}

/// Factors out the screw `1 + εr`, `r = (a1 b - b a1) / 4|a1|² = (a1 × b) / 2|a1|²`,
/// where `b` is the vector part of `B`. `r = 0` when `a1 = 0`.
pub fn screw_factor(eta: DualQuaternion) -> ScrewFactorization {
    let a1 = eta.real.vector();
    let r = if eta.real.is_scalar_like() {
        Vector3::ZERO
    } else {
        a1.cross(eta.dual.vector()).scale(0.5 / a1.norm_squared())
    };
    ScrewFactorization { r, core: conjugate_by_screw(-r, eta) }
}

/// `f(η) = (1 + εr) f(core) (1 - εr)`, with `f(core)` from the commuting case.
pub fn apply_via_screw(f: &ValidFunction, eta: DualQuaternion) -> Result<DualQuaternion> {
    let screw = screw_factor(eta);
    let inner = apply_commuting(f, screw.core)?;
    Ok(conjugate_by_screw(screw.r, inner))
}
