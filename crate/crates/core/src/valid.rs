//! Valid functions: `f: Ω → ℂ` with `z ∈ Ω ⇔ z̄ ∈ Ω` and `f(z̄) = conj(f(z))`.
//!
//! A [`ValidFunction`] bundles the value, the partials `f_x = ∂f/∂x` and
//! `f_iy = -i ∂f/∂y`, the domain test, and optionally a closed form for `h`.
//! Partials are themselves valid functions and can be extended to quaternions
//! in turn, which is what the dual-quaternion formula needs.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{CalcError, Result};
use crate::polynomial::ValidPolynomial;

/// A point `x + iy` of the complex plane.
pub type ComplexScalar = Complex64;

type ComplexFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type RealFn = Arc<dyn Fn(Complex64) -> f64 + Send + Sync>;
type DomainFn = Arc<dyn Fn(Complex64) -> bool + Send + Sync>;

/// Below `|y| <= H_SWITCH_TOL * (1 + |x|)` the difference quotient for `h`
/// is replaced by `f_iy(x)`.
pub const H_SWITCH_TOL: f64 = 1e-8;

/// Pointwise tolerance for the validity identity, relative to `1 + |f(z)|`.
pub const VALIDITY_TOL: f64 = 1e-12;

/// Step for central differences of closures without analytic partials.
const NUMERIC_STEP: f64 = 6e-6;

/// `sin(u) / u` with the removable singularity filled.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// `atan(t) / t` with the removable singularity filled.
fn atan_ratio(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 3.0 + t2 * t2 / 5.0
    } else {
        t.atan() / t
    }
}

/// `Im(z^α) / y` for the principal power, without cancellation near `y = 0`.
fn pow_h(alpha: f64, z: Complex64) -> f64 {
    let (x, y) = (z.re, z.im);
    let theta = y.atan2(x);
    let theta_over_y = if y == 0.0 {
        1.0 / x
    } else if x > 0.0 {
        atan_ratio(y / x) / x
    } else {
        theta / y
    };
    x.hypot(y).powf(alpha) * alpha * theta_over_y * sinc(alpha * theta)
}

/// `Im((u + iy)^p) / y` for integer `p`, as a polynomial in `u` and `y²`.
fn binomial_odd_part(p: u32, u: f64, y: f64) -> f64 {
    let minus_y2 = -y * y;
    let mut binom = 1.0;
    let mut sum = 0.0;
    let mut y_pow = 1.0;
    for j in 0..=p {
        if j % 2 == 1 {
            sum += binom * u.powi((p - j) as i32) * y_pow;
            y_pow *= minus_y2;
        }
        binom = binom * (p - j) as f64 / (j + 1) as f64;
    }
    sum
}

#[derive(Clone)]
enum Repr {
    /// `scale · e^z`
    Exp { scale: f64 },
    /// `scale · z^α`, principal branch
    Pow { alpha: f64, scale: f64 },
    /// `(1 + z) / (1 - z)`
    Cayley,
    /// `coeff · (1 - z)^(-power)`; the derivatives of the Cayley transform
    ReciprocalPower { coeff: f64, power: u32 },
    Polynomial(Arc<ValidPolynomial>),
    Custom(Arc<Custom>),
}

struct Custom {
    eval: ComplexFn,
    fx: Option<ComplexFn>,
    fiy: Option<ComplexFn>,
    in_domain: DomainFn,
    h_exact: Option<RealFn>,
}

/// A valid function together with its partial derivatives.
#[derive(Clone)]
pub struct ValidFunction {
    name: String,
    repr: Repr,
}

impl fmt::Debug for ValidFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValidFunction").field("name", &self.name).finish()
    }
}

/// Named built-in functions.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    Exp,
    Pow(f64),
    Cayley,
    Polynomial(ValidPolynomial),
}

pub fn builtin(b: Builtin) -> Result<ValidFunction> {
    match b {
        Builtin::Exp => Ok(ValidFunction::exp()),
        Builtin::Pow(alpha) => ValidFunction::pow(alpha),
        Builtin::Cayley => Ok(ValidFunction::cayley()),
        Builtin::Polynomial(p) => {
            if p.is_finite() {
                Ok(ValidFunction::polynomial(p))
            } else {
                Err(CalcError::InvalidParameter("polynomial coefficients must be finite".into()))
            }
        }
    }
}

impl ValidFunction {
    pub fn exp() -> Self {
        ValidFunction { name: "exp".into(), repr: Repr::Exp { scale: 1.0 } }
    }

    /// Principal power `z^α` on `ℂ \ (-∞, 0]`.
    pub fn pow(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(CalcError::InvalidParameter(format!("power exponent must be finite, got {alpha}")));
        }
        Ok(ValidFunction { name: format!("pow:{alpha}"), repr: Repr::Pow { alpha, scale: 1.0 } })
    }

    /// Cayley transform `(1 + z) / (1 - z)` on `ℂ \ {1}`.
    pub fn cayley() -> Self {
        ValidFunction { name: "cayley".into(), repr: Repr::Cayley }
    }

    pub fn polynomial(p: ValidPolynomial) -> Self {
        ValidFunction { name: "poly".into(), repr: Repr::Polynomial(Arc::new(p)) }
    }

    /// A function given only by its values; partials are taken by central
    /// differences. The caller is responsible for validity (see [`check_valid`]).
    pub fn from_eval(
        name: impl Into<String>,
        eval: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        in_domain: impl Fn(Complex64) -> bool + Send + Sync + 'static,
    ) -> Self {
        ValidFunction {
            name: name.into(),
            repr: Repr::Custom(Arc::new(Custom {
                eval: Arc::new(eval),
                fx: None,
                fiy: None,
                in_domain: Arc::new(in_domain),
                h_exact: None,
            })),
        }
    }

    /// A function with explicit partials `f_x` and `f_iy`.
    pub fn from_closures(
        name: impl Into<String>,
        eval: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        fx: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        fiy: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        in_domain: impl Fn(Complex64) -> bool + Send + Sync + 'static,
    ) -> Self {
        ValidFunction {
            name: name.into(),
            repr: Repr::Custom(Arc::new(Custom {
                eval: Arc::new(eval),
                fx: Some(Arc::new(fx)),
                fiy: Some(Arc::new(fiy)),
                in_domain: Arc::new(in_domain),
                h_exact: None,
            })),
        }
    }

    /// Attaches a closed form for `h` to a closure-backed function. No effect
    /// on built-ins, which already carry one.
    pub fn with_h_exact(self, h: impl Fn(Complex64) -> f64 + Send + Sync + 'static) -> Self {
        match self.repr {
            Repr::Custom(c) => {
                let custom = Custom {
                    eval: c.eval.clone(),
                    fx: c.fx.clone(),
                    fiy: c.fiy.clone(),
                    in_domain: c.in_domain.clone(),
                    h_exact: Some(Arc::new(h)),
                };
                ValidFunction { name: self.name, repr: Repr::Custom(Arc::new(custom)) }
            }
            repr => ValidFunction { name: self.name, repr },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The underlying polynomial, if this function is one.
    pub fn as_polynomial(&self) -> Option<&ValidPolynomial> {
        match &self.repr {
            Repr::Polynomial(p) => Some(p),
            _ => None,
        }
    }

    pub fn in_domain(&self, z: Complex64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        match &self.repr {
            Repr::Exp { .. } | Repr::Polynomial(_) => true,
            Repr::Pow { .. } => !(z.im == 0.0 && z.re <= 0.0),
            Repr::Cayley | Repr::ReciprocalPower { .. } => z != Complex64::new(1.0, 0.0),
            Repr::Custom(c) => (c.in_domain)(z),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match &self.repr {
            Repr::Exp { scale } => z.exp() * *scale,
            Repr::Pow { alpha, scale } => z.powf(*alpha) * *scale,
            Repr::Cayley => (one + z) / (one - z),
            Repr::ReciprocalPower { coeff, power } => (one - z).inv().powi(*power as i32) * *coeff,
            Repr::Polynomial(p) => p.eval(z),
            Repr::Custom(c) => (c.eval)(z),
        }
    }

    /// `f_x(z) = ∂f/∂x`.
    pub fn fx(&self, z: Complex64) -> Complex64 {
        match &self.repr {
            Repr::Custom(c) => match &c.fx {
                Some(fx) => fx(z),
                None => central_dx(&c.eval, z),
            },
            _ => self.partial_x().eval(z),
        }
    }

    /// `f_iy(z) = -i ∂f/∂y`.
    pub fn fiy(&self, z: Complex64) -> Complex64 {
        match &self.repr {
            Repr::Custom(c) => match &c.fiy {
                Some(fiy) => fiy(z),
                None => central_diy(&c.eval, z),
            },
            _ => self.partial_iy().eval(z),
        }
    }

    /// Closed form of `h`, when one is known.
    pub fn h_exact(&self, z: Complex64) -> Option<f64> {
        match &self.repr {
            Repr::Exp { scale } => Some(scale * z.re.exp() * sinc(z.im)),
            Repr::Pow { alpha, scale } => Some(scale * pow_h(*alpha, z)),
            Repr::Cayley => {
                let u = 1.0 - z.re;
                Some(2.0 / (u * u + z.im * z.im))
            }
            Repr::ReciprocalPower { coeff, power } => {
                let u = 1.0 - z.re;
                let w2 = u * u + z.im * z.im;
                Some(coeff * binomial_odd_part(*power, u, z.im) / w2.powi(*power as i32))
            }
            Repr::Polynomial(p) => Some(p.h(z)),
            Repr::Custom(c) => c.h_exact.as_ref().map(|h| h(z)),
        }
    }

    /// `f_x` as a valid function in its own right.
    pub fn partial_x(&self) -> ValidFunction {
        self.derivative("dx")
    }

    /// `f_iy` as a valid function in its own right.
    pub fn partial_iy(&self) -> ValidFunction {
        self.derivative("diy")
    }

    fn derivative(&self, tag: &str) -> ValidFunction {
        let name = format!("{}'{}", self.name, tag);
        let repr = match &self.repr {
            // analytic: f_x = f_iy = f'
            Repr::Exp { scale } => Repr::Exp { scale: *scale },
            Repr::Pow { alpha, scale } => Repr::Pow { alpha: alpha - 1.0, scale: scale * alpha },
            Repr::Cayley => Repr::ReciprocalPower { coeff: 2.0, power: 2 },
            Repr::ReciprocalPower { coeff, power } => {
                Repr::ReciprocalPower { coeff: coeff * *power as f64, power: power + 1 }
            }
            Repr::Polynomial(p) => {
                let d = if tag == "dx" { p.partial_x() } else { p.partial_iy() };
                Repr::Polynomial(Arc::new(d))
            }
            Repr::Custom(c) => {
                let src = c.eval.clone();
                let explicit = if tag == "dx" { c.fx.clone() } else { c.fiy.clone() };
                let eval: ComplexFn = match explicit {
                    Some(d) => d,
                    None if tag == "dx" => Arc::new(move |z| central_dx(&src, z)),
                    None => Arc::new(move |z| central_diy(&src, z)),
                };
                Repr::Custom(Arc::new(Custom {
                    eval,
                    fx: None,
                    fiy: None,
                    in_domain: c.in_domain.clone(),
                    h_exact: None,
                }))
            }
        };
        ValidFunction { name, repr }
    }
}

fn central_step(z: Complex64) -> f64 {
    NUMERIC_STEP * (1.0 + z.norm())
}

fn central_dx(f: &ComplexFn, z: Complex64) -> Complex64 {
    let d = central_step(z);
    (f(z + d) - f(z - d)) / (2.0 * d)
}

fn central_diy(f: &ComplexFn, z: Complex64) -> Complex64 {
    let d = central_step(z);
    let di = Complex64::new(0.0, d);
    (f(z + di) - f(z - di)) * Complex64::new(0.0, -1.0) / (2.0 * d)
}

fn require_domain(f: &ValidFunction, z: Complex64) -> Result<()> {
    if f.in_domain(z) && f.in_domain(z.conj()) {
        Ok(())
    } else {
        Err(CalcError::Domain { function: f.name().to_string(), re: z.re, im: z.im })
    }
}

/// `g(z) = (f(z) + f(z̄)) / 2`, real for valid `f`.
pub fn eval_g(f: &ValidFunction, z: Complex64) -> Result<f64> {
    require_domain(f, z)?;
    Ok(((f.eval(z) + f.eval(z.conj())) * 0.5).re)
}

/// `h(z) = (f(z) - f(z̄)) / 2iy`, with `h(x) = f_iy(x)` on the real axis.
///
/// Uses the closed form when the function carries one; otherwise the
/// difference quotient, switching to `f_iy(x)` for `|y| <= H_SWITCH_TOL (1 + |x|)`.
pub fn eval_h(f: &ValidFunction, z: Complex64) -> Result<f64> {
    require_domain(f, z)?;
    match f.h_exact(z) {
        Some(h) => Ok(h),
        None => Ok(h_quotient(f, z)),
    }
}

/// The difference-quotient route for `h`, ignoring any closed form.
pub fn eval_h_quotient(f: &ValidFunction, z: Complex64) -> Result<f64> {
    require_domain(f, z)?;
    Ok(h_quotient(f, z))
}

fn h_quotient(f: &ValidFunction, z: Complex64) -> f64 {
    if z.im.abs() <= H_SWITCH_TOL * (1.0 + z.re.abs()) {
        f.fiy(Complex64::new(z.re, 0.0)).re
    } else {
        // (d / 2iy).re == d.im / 2y
        (f.eval(z) - f.eval(z.conj())).im / (2.0 * z.im)
    }
}

/// Outcome of sampling the validity identity `f(z̄) = conj(f(z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub samples: usize,
    /// Samples skipped because they (or their conjugates) lie outside the domain.
    pub skipped: usize,
    pub max_defect: f64,
    pub worst_sample: Option<Complex64>,
    pub failures: Vec<Complex64>,
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_valid(f: &ValidFunction, samples: &[Complex64]) -> ValidityReport {
    let mut report = ValidityReport {
        samples: samples.len(),
        skipped: 0,
        max_defect: 0.0,
        worst_sample: None,
        failures: Vec::new(),
    };
    for &z in samples {
        if require_domain(f, z).is_err() {
            report.skipped += 1;
            continue;
        }
        let fz = f.eval(z);
        let defect = (f.eval(z.conj()) - fz.conj()).norm();
        if defect > report.max_defect || report.worst_sample.is_none() {
            report.max_defect = report.max_defect.max(defect);
            report.worst_sample = Some(z);
        }
        if defect.is_nan() || defect > VALIDITY_TOL * (1.0 + fz.norm()) {
            report.failures.push(z);
        }
    }
    report
}

/// Partials of a polynomial, `(∂p/∂x, -i ∂p/∂y)`.
pub fn poly_partials(p: &ValidPolynomial) -> (ValidPolynomial, ValidPolynomial) {
    p.partials()
}
