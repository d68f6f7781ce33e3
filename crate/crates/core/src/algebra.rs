//! Quaternions, dual numbers and dual quaternions over `f64`.
//!
//! Everything here is exact ring arithmetic (up to rounding). The one
//! non-algebraic piece is [`decompose`], which splits the dual part of a dual
//! quaternion into the components parallel and perpendicular to the vector
//! part of the real quaternion.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Relative threshold below which the vector part of a quaternion is treated
/// as zero: `|a1| <= AXIS_ZERO_TOL * (1 + |A|)`.
pub const AXIS_ZERO_TOL: f64 = 1e-12;

/// A 3-vector, identified with the pure quaternion `x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vector3 {
    pub const ZERO: Vector3 = Vector3::new(0.0, 0.0, 0.0);
    pub const I: Vector3 = Vector3::new(1.0, 0.0, 0.0);
    pub const J: Vector3 = Vector3::new(0.0, 1.0, 0.0);
    pub const K: Vector3 = Vector3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vector3 { x, y, z }
    }

    pub fn dot(self, other: Vector3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vector3) -> Vector3 {
        Vector3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        // hypot-style scaling is not needed at the magnitudes this crate handles
        self.norm_squared().sqrt()
    }

    pub fn scale(self, s: f64) -> Vector3 {
        Vector3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Embeds the vector as a pure quaternion.
    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, o: Vector3) -> Vector3 {
        Vector3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, o: Vector3) -> Vector3 {
        Vector3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        Vector3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vector3 {
    type Output = Vector3;
    fn mul(self, s: f64) -> Vector3 {
        self.scale(s)
    }
}

/// A quaternion `w + x i + y j + z k` with `i² = j² = k² = ijk = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn from_real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_parts(w: f64, v: Vector3) -> Self {
        Quaternion::new(w, v.x, v.y, v.z)
    }

    /// Scalar part `w`.
    pub fn scalar(self) -> f64 {
        self.w
    }

    /// Vector part `x i + y j + z k`.
    pub fn vector(self) -> Vector3 {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_squared(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn scale(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse `conj(q) / |q|²`; `None` for the zero quaternion.
    pub fn inverse(self) -> Option<Quaternion> {
        let n2 = self.norm_squared();
        (n2 > 0.0).then(|| self.conj().scale(1.0 / n2))
    }

    /// True when the vector part is negligible relative to the whole,
    /// i.e. `|a1| <= AXIS_ZERO_TOL * (1 + |A|)`.
    pub fn is_scalar_like(self) -> bool {
        self.vector().norm() <= AXIS_ZERO_TOL * (1.0 + self.norm())
    }

    /// Commutator `pq - qp`.
    pub fn commutator(self, other: Quaternion) -> Quaternion {
        self * other - other * self
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Hamilton product.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        quat_mul(self, q)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, q: Quaternion) -> Quaternion {
        Quaternion::new(self.w + q.w, self.x + q.x, self.y + q.y, self.z + q.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, q: Quaternion) {
        *self = *self + q;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, q: Quaternion) -> Quaternion {
        Quaternion::new(self.w - q.w, self.x - q.x, self.y - q.y, self.z - q.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl From<Vector3> for Quaternion {
    fn from(v: Vector3) -> Self {
        v.to_quaternion()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

/// A dual number `a + εb` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualNumber {
    pub a: f64,
    pub b: f64,
}

impl DualNumber {
    pub const fn new(a: f64, b: f64) -> Self {
        DualNumber { a, b }
    }

    pub fn conj(self) -> DualNumber {
        // real dual numbers are self-conjugate
        self
    }

    pub fn scale(self, s: f64) -> DualNumber {
        DualNumber::new(self.a * s, self.b * s)
    }

    /// Embeds `a + εb` as the dual quaternion with scalar real and dual parts.
    pub fn to_dual_quaternion(self) -> DualQuaternion {
        DualQuaternion::new(Quaternion::from_real(self.a), Quaternion::from_real(self.b))
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber::new(-self.a, -self.b)
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.a * o.a, self.a * o.b + self.b * o.a)
    }
}

impl Mul<f64> for DualNumber {
    type Output = DualNumber;
    fn mul(self, s: f64) -> DualNumber {
        self.scale(s)
    }
}

/// A dual quaternion `A + εB`, with `A` the real part and `B` the dual part.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualQuaternion {
    pub real: Quaternion,
    pub dual: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: DualQuaternion = DualQuaternion::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: DualQuaternion = DualQuaternion::new(Quaternion::ONE, Quaternion::ZERO);

    pub const fn new(real: Quaternion, dual: Quaternion) -> Self {
        DualQuaternion { real, dual }
    }

    pub const fn from_real(real: Quaternion) -> Self {
        DualQuaternion::new(real, Quaternion::ZERO)
    }

    /// The purely dual element `εB`.
    pub const fn epsilon(dual: Quaternion) -> Self {
        DualQuaternion::new(Quaternion::ZERO, dual)
    }

    pub fn conj(self) -> DualQuaternion {
        DualQuaternion::new(self.real.conj(), self.dual.conj())
    }

    pub fn scale(self, s: f64) -> DualQuaternion {
        DualQuaternion::new(self.real.scale(s), self.dual.scale(s))
    }

    /// Euclidean norm over all eight components; used for error measurement,
    /// not the dual-number valued modulus (see `calculus::dq_abs`).
    pub fn component_norm(self) -> f64 {
        (self.real.norm_squared() + self.dual.norm_squared()).sqrt()
    }

    /// Left multiplication by a quaternion: `q (A + εB) = qA + ε qB`.
    pub fn left_mul(self, q: Quaternion) -> DualQuaternion {
        DualQuaternion::new(q * self.real, q * self.dual)
    }

    pub fn is_finite(self) -> bool {
        self.real.is_finite() && self.dual.is_finite()
    }

    /// Relative distance `|self - other| / max(1, |other|)` in the component norm.
    pub fn relative_defect(self, reference: DualQuaternion) -> f64 {
        (self - reference).component_norm() / reference.component_norm().max(1.0)
    }
}

/// `(A + εB)(C + εD) = AC + ε(AD + BC)`.
pub fn dq_mul(eta: DualQuaternion, zeta: DualQuaternion) -> DualQuaternion {
    DualQuaternion::new(
        eta.real * zeta.real,
        eta.real * zeta.dual + eta.dual * zeta.real,
    )
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, o: DualQuaternion) -> DualQuaternion {
        dq_mul(self, o)
    }
}

impl Mul<f64> for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, s: f64) -> DualQuaternion {
        self.scale(s)
    }
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.real + o.real, self.dual + o.dual)
    }
}

impl AddAssign for DualQuaternion {
    fn add_assign(&mut self, o: DualQuaternion) {
        *self = *self + o;
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.real - o.real, self.dual - o.dual)
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        DualQuaternion::new(-self.real, -self.dual)
    }
}

impl From<Quaternion> for DualQuaternion {
    fn from(q: Quaternion) -> Self {
        DualQuaternion::from_real(q)
    }
}

impl fmt::Display for DualQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ε({})", self.real, self.dual)
    }
}

/// Split of `A + εB` into `A = a0 + a1` and `B = b0 + b1 + b2`, with `b1`
/// parallel and `b2` perpendicular to `a1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposedDual {
    pub a0: f64,
    pub a1: Vector3,
    pub b0: f64,
    pub b1: Vector3,
    pub b2: Vector3,
}

impl DecomposedDual {
    /// `B1 = b0 + b1`, the part of `B` commuting with `A`.
    pub fn commuting_dual(&self) -> Quaternion {
        Quaternion::from_parts(self.b0, self.b1)
    }

    pub fn real(&self) -> Quaternion {
        Quaternion::from_parts(self.a0, self.a1)
    }

    /// True when `a1` was classified as zero, in which case `b2 = 0`.
    pub fn axis_is_zero(&self) -> bool {
        self.a1 == Vector3::ZERO
    }

    pub fn reassemble(&self) -> DualQuaternion {
        DualQuaternion::new(
            self.real(),
            Quaternion::from_parts(self.b0, self.b1 + self.b2),
        )
    }
}

/// Splits the dual part along the axis of the real part.
///
/// When `a1` is negligible (see [`Quaternion::is_scalar_like`]) it is zeroed
/// and the whole vector part of `B` goes into `b1`, since a scalar commutes
/// with everything.
pub fn decompose(eta: DualQuaternion) -> DecomposedDual {
    let a = eta.real;
    let b = eta.dual.vector();
    if a.is_scalar_like() {
        return DecomposedDual {
            a0: a.w,
            a1: Vector3::ZERO,
            b0: eta.dual.w,
            b1: b,
            b2: Vector3::ZERO,
        };
    }
    let a1 = a.vector();
    let axis = a1.scale(1.0 / a1.norm());
    let b1 = axis.scale(b.dot(axis));
    DecomposedDual {
        a0: a.w,
        a1,
        b0: eta.dual.w,
        b1,
        b2: b - b1,
    }
}
