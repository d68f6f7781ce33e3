//! Split calculus for anti-commuting pairs in a complex matrix algebra.
//!
//! For `AB = -BA`, `(A + B)² = A² + B²` is central in the algebra generated
//! by `A + B`, so any polynomial `f(z) = k(z²) + l(z²) z` satisfies
//! `f(A + B) = k(A² + B²) + (A + B) l(A² + B²)`. Applied to `z^n` this yields
//! the Pauli-Pascal triangle.

use std::ops::{Add, Mul, Sub};

use num_complex::{Complex, Complex64};

use crate::error::{CalcError, Result};

/// Relative tolerance for `‖AB + BA‖ <= ANTICOMMUTE_TOL ‖A‖ ‖B‖`.
pub const ANTICOMMUTE_TOL: f64 = 1e-12;

/// Largest supported Pauli-Pascal row.
pub const MAX_PASCAL_ROW: usize = 32;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, entries: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from rows; every row must have the same length as the row count.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CalcError::ShapeMismatch("matrix rows must form a square".into()));
        }
        Ok(ComplexMatrix { n, entries: rows.concat() })
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        ComplexMatrix { n: 2, entries: vec![o, l, l, o] }
    }

    pub fn pauli_y() -> Self {
        let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
        ComplexMatrix { n: 2, entries: vec![o, -i, i, o] }
    }

    pub fn pauli_z() -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        ComplexMatrix { n: 2, entries: vec![l, o, o, -l] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n + col]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix { n: self.n, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        out
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(CalcError::ShapeMismatch(format!("dimension {} vs {}", self.n, other.n)))
        }
    }

    /// `‖AB + BA‖`.
    pub fn anticommutator_norm(&self, other: &Self) -> f64 {
        (self * other + other * self).norm()
    }

    pub fn anticommutes_with(&self, other: &Self) -> bool {
        self.n == other.n && self.anticommutator_norm(other) <= ANTICOMMUTE_TOL * self.norm() * other.norm()
    }

    /// Horner evaluation of `Σ c[j] M^j`.
    pub fn horner(&self, coeffs: &[Complex64]) -> Self {
        coeffs
            .iter()
            .rev()
            .fold(Self::zeros(self.n), |acc, &c| &(&acc * self) + &Self::identity(self.n).scale(c))
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, o: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        ComplexMatrix { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, o: ComplexMatrix) -> ComplexMatrix {
        &self + &o
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, o: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        ComplexMatrix { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, o: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                for c in 0..n {
                    out.entries[r * n + c] += a * o.entries[k * n + c];
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, o: ComplexMatrix) -> ComplexMatrix {
        &self * &o
    }
}

/// `f(z) = k(z²) + l(z²) z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSplit<T> {
    pub k: Vec<T>,
    pub l: Vec<T>,
}

/// Splits `Σ c[j] z^j` into even coefficients `k` and odd coefficients `l`.
pub fn split_series<T: Copy>(coeffs: &[T]) -> SeriesSplit<T> {
    SeriesSplit {
        k: coeffs.iter().step_by(2).copied().collect(),
        l: coeffs.iter().skip(1).step_by(2).copied().collect(),
    }
}

/// `f(A + B) = k(A² + B²) + (A + B) l(A² + B²)` for anti-commuting `A`, `B`.
pub fn apply_anticommuting_pair(coeffs: &[Complex64], a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same(b)?;
    let defect = a.anticommutator_norm(b);
    let tolerance = ANTICOMMUTE_TOL * a.norm() * b.norm();
    if defect.is_nan() || defect > tolerance {
        return Err(CalcError::NotAnticommuting { defect, tolerance });
    }
    let split = split_series(coeffs);
    let square = &(a * a) + &(b * b);
    let sum = a + b;
    Ok(&square.horner(&split.k) + &(&sum * &square.horner(&split.l)))
}

fn binomial_row(m: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![1u64; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row
}

/// Coefficients `c[j]` of `A^{n-j} B^j` in `(A + B)^n` for anti-commuting `A`, `B`.
///
/// With `z^n = k(z²) + l(z²) z`, the square `A² + B²` expands binomially
/// (`A²` and `B²` commute), and `B A^{2p} = A^{2p} B` moves the odd factor.
pub fn pauli_pascal_row(n: usize) -> Result<Vec<u64>> {
    if n > MAX_PASCAL_ROW {
        return Err(CalcError::InvalidParameter(format!("row {n} exceeds the maximum {MAX_PASCAL_ROW}")));
    }
    let mut row = vec![0u64; n + 1];
    let half = binomial_row(n / 2);
    for (i, &c) in half.iter().enumerate() {
        row[2 * i] = c;
        if n % 2 == 1 {
            row[2 * i + 1] = c;
        }
    }
    Ok(row)
}

/// Independent check of [`pauli_pascal_row`] by expanding `(a σx + b σy)^n`
/// with polynomial matrix entries over the Gaussian integers and reading off
/// the coefficient of `a^{n-j} b^j` against `σx^{n-j} σy^j`.
pub fn pascal_row_by_pauli_expansion(n: usize) -> Vec<i64> {
    type G = Complex<i64>;
    let zero = G::new(0, 0);
    // entry = polynomial in b (homogeneous of degree n in a, b), indexed by power of b
    type PolyMat = [[Vec<G>; 2]; 2];
    let sx = [[G::new(0, 0), G::new(1, 0)], [G::new(1, 0), G::new(0, 0)]];
    let sy = [[G::new(0, 0), G::new(0, -1)], [G::new(0, 1), G::new(0, 0)]];
    let id = [[G::new(1, 0), zero], [zero, G::new(1, 0)]];
    let gmul = |x: [[G; 2]; 2], y: [[G; 2]; 2]| {
        let mut o = [[zero; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                o[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
            }
        }
        o
    };

    let mut acc: PolyMat = Default::default();
    for r in 0..2 {
        for c in 0..2 {
            acc[r][c] = vec![id[r][c]];
        }
    }
    for step in 0..n {
        let mut next: PolyMat = Default::default();
        for r in 0..2 {
            for c in 0..2 {
                next[r][c] = vec![zero; step + 2];
                for k in 0..2 {
                    for (p, &coef) in acc[r][k].iter().enumerate() {
                        next[r][c][p] += coef * sx[k][c];
                        next[r][c][p + 1] += coef * sy[k][c];
                    }
                }
            }
        }
        acc = next;
    }

    (0..=n)
        .map(|j| {
            let mut word = id;
            for _ in 0..n - j {
                word = gmul(word, sx);
            }
            for _ in 0..j {
                word = gmul(word, sy);
            }
            let (r, c) = (0..2)
                .flat_map(|r| (0..2).map(move |c| (r, c)))
                .find(|&(r, c)| word[r][c] != zero)
                .expect("Pauli words are invertible");
            // word entries are units ±1, ±i, so division is exact
            let unit = word[r][c];
            let q = acc[r][c][j] * unit.conj();
            assert_eq!(q.im, 0, "coefficient must be real");
            q.re
        })
        .collect()
}
