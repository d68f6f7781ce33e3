//! Polynomials in `x` and `iy` with real coefficients.
//!
//! `p(x + iy) = Σ r[m][n] x^m (iy)^n`. Real coefficients are exactly the
//! condition for `p(z̄) = conj(p(z))`, so every value of this type is a valid
//! function.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One monomial `r x^m (iy)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub m: u32,
    pub n: u32,
    pub r: f64,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    terms: Vec<Term>,
}

/// Polynomial `Σ r[m][n] x^m (iy)^n` with real `r`.
///
/// Stored densely by power of `iy`: `rows[n][m] = r[m][n]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidPolynomial {
    rows: Vec<Vec<f64>>,
}

impl ValidPolynomial {
    pub fn zero() -> Self {
        ValidPolynomial::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms([Term { m: 0, n: 0, r: c }])
    }

    /// The coordinate function `x = Re z`.
    pub fn x() -> Self {
        Self::from_terms([Term { m: 1, n: 0, r: 1.0 }])
    }

    /// The coordinate function `iy = i Im z`.
    pub fn iy() -> Self {
        Self::from_terms([Term { m: 0, n: 1, r: 1.0 }])
    }

    /// The identity `z = x + iy`.
    pub fn z() -> Self {
        Self::x() + Self::iy()
    }

    /// Complex conjugation `z̄ = x - iy`.
    pub fn conjugation() -> Self {
        Self::x() - Self::iy()
    }

    /// Builds a polynomial from terms; repeated `(m, n)` pairs are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut p = ValidPolynomial::zero();
        for t in terms {
            p.add_to(t.m as usize, t.n as usize, t.r);
        }
        p.trim();
        p
    }

    /// Expands `Σ c[k] z^k` with `z = x + iy` binomially.
    pub fn from_univariate(coeffs: &[f64]) -> Self {
        let mut p = ValidPolynomial::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            let mut binom = 1.0;
            for j in 0..=k {
                p.add_to(k - j, j, c * binom);
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
        }
        p.trim();
        p
    }

    fn add_to(&mut self, m: usize, n: usize, r: f64) {
        if self.rows.len() <= n {
            self.rows.resize(n + 1, Vec::new());
        }
        let row = &mut self.rows[n];
        if row.len() <= m {
            row.resize(m + 1, 0.0);
        }
        row[m] += r;
    }

    fn trim(&mut self) {
        for row in &mut self.rows {
            while row.last() == Some(&0.0) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    pub fn coefficient(&self, m: u32, n: u32) -> f64 {
        self.rows
            .get(n as usize)
            .and_then(|row| row.get(m as usize))
            .copied()
            .unwrap_or(0.0)
    }

    /// Nonzero terms ordered by `(n, m)`.
    pub fn terms(&self) -> Vec<Term> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| {
                row.iter().enumerate().filter(|(_, r)| **r != 0.0).map(move |(m, &r)| Term {
                    m: m as u32,
                    n: n as u32,
                    r,
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total degree `max(m + n)`; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms().iter().map(|t| t.m + t.n).max().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|r| r.is_finite())
    }

    /// `P_n(x) = Σ_m r[m][n] x^m` by Horner.
    fn row_at(&self, n: usize, x: f64) -> f64 {
        self.rows[n].iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Evaluates at `z = x + iy`: Horner in `x` for each power of `iy`, then
    /// Horner in `iy` across rows.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let iy = Complex64::new(0.0, z.im);
        (0..self.rows.len())
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, n| acc * iy + self.row_at(n, z.re))
    }

    /// Even part `g(x + iy) = Σ_{n even} P_n(x) (-y²)^{n/2}`.
    pub fn g(&self, z: Complex64) -> f64 {
        self.parity_part(z, 0)
    }

    /// `h(x + iy) = Σ_{n odd} P_n(x) (-y²)^{(n-1)/2}`, so that `p = g + iy h`.
    /// Free of the removable singularity at `y = 0`.
    pub fn h(&self, z: Complex64) -> f64 {
        self.parity_part(z, 1)
    }

    fn parity_part(&self, z: Complex64, parity: usize) -> f64 {
        let minus_y2 = -z.im * z.im;
        (parity..self.rows.len())
            .step_by(2)
            .rev()
            .fold(0.0, |acc, n| acc * minus_y2 + self.row_at(n, z.re))
    }

    /// `∂p/∂x`.
    pub fn partial_x(&self) -> ValidPolynomial {
        let mut out = ValidPolynomial::zero();
        for t in self.terms().into_iter().filter(|t| t.m > 0) {
            out.add_to(t.m as usize - 1, t.n as usize, t.m as f64 * t.r);
        }
        out.trim();
        out
    }

    /// `-i ∂p/∂y`; since `-i ∂/∂y (iy)^n = n (iy)^{n-1}`, coefficients stay real.
    pub fn partial_iy(&self) -> ValidPolynomial {
        let mut out = ValidPolynomial::zero();
        for t in self.terms().into_iter().filter(|t| t.n > 0) {
            out.add_to(t.m as usize, t.n as usize - 1, t.n as f64 * t.r);
        }
        out.trim();
        out
    }

    /// `(∂p/∂x, -i ∂p/∂y)`.
    pub fn partials(&self) -> (ValidPolynomial, ValidPolynomial) {
        (self.partial_x(), self.partial_iy())
    }

    /// The conjugate function `p̄(z) = conj(p(z)) = p(z̄)`: odd powers of `iy` flip sign.
    pub fn conj(&self) -> ValidPolynomial {
        let mut out = self.clone();
        for (n, row) in out.rows.iter_mut().enumerate() {
            if n % 2 == 1 {
                row.iter_mut().for_each(|r| *r = -*r);
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> ValidPolynomial {
        let mut out = self.clone();
        out.rows.iter_mut().flatten().for_each(|r| *r *= s);
        out.trim();
        out
    }
}

impl Add for ValidPolynomial {
    type Output = ValidPolynomial;
    fn add(self, other: ValidPolynomial) -> ValidPolynomial {
        ValidPolynomial::from_terms(self.terms().into_iter().chain(other.terms()))
    }
}

impl Sub for ValidPolynomial {
    type Output = ValidPolynomial;
    fn sub(self, other: ValidPolynomial) -> ValidPolynomial {
        self + (-other)
    }
}

impl Neg for ValidPolynomial {
    type Output = ValidPolynomial;
    fn neg(self) -> ValidPolynomial {
        self.scale(-1.0)
    }
}

impl Mul for ValidPolynomial {
    type Output = ValidPolynomial;
    fn mul(self, other: ValidPolynomial) -> ValidPolynomial {
        let rhs = other.terms();
        let mut acc: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for s in self.terms() {
            for t in &rhs {
                *acc.entry((s.m + t.m, s.n + t.n)).or_default() += s.r * t.r;
            }
        }
        ValidPolynomial::from_terms(acc.into_iter().map(|((m, n), r)| Term { m, n, r }))
    }
}

impl Serialize for ValidPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialJson { terms: self.terms() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ValidPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PolynomialJson::deserialize(deserializer)?;
        Ok(ValidPolynomial::from_terms(json.terms))
    }
}
