//! Dense arbitrary-precision integer matrices, the standard symplectic form,
//! and residue matrices modulo `k`.
//!
//! Every value in this crate is an exact integer; there is no floating point
//! anywhere. Matrices act on column vectors from the left, and the symplectic
//! basis is ordered `(a_1, b_1, ..., a_g, b_g)`, identified with the unit
//! vectors `e_1, ..., e_{2g}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("empty product requires an explicit dimension")]
    EmptyProduct,
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error("expected a 2g x 2g matrix for genus {genus}, got {rows}x{cols}")]
    GenusMismatch { genus: usize, rows: usize, cols: usize },
}

/// A dense `rows x cols` matrix with arbitrary-precision integer entries,
/// stored in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input;
    /// intended for literals in code and tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty(), "empty matrix literal");
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix literal");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix { rows: n, cols: n, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at `(row, col)`, zero-indexed.
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.entries[idx] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            for (c, vc) in v.iter().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *slot += a * vc;
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Exact division is guaranteed by the Bareiss identity.
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * m[n - 1][n - 1].clone())
    }

    /// Rank over the rationals (equivalently, the number of Z-linearly
    /// independent rows).
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            let pivot = (rank..self.rows).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let (a, b) = (m[rank][col].clone(), m[r][col].clone());
                let (pivot_row, rest) = m.split_at_mut(rank + 1);
                let row = &mut rest[r - rank - 1];
                for (c, entry) in row.iter_mut().enumerate().skip(col) {
                    *entry = &*entry * &a - &pivot_row[rank][c] * &b;
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Exact inverse, defined only for square matrices with determinant +-1.
    pub fn inverse(&self) -> Result<IntMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let det = self.determinant()?;
        if !det.magnitude().is_one() {
            return Err(MatrixError::NotUnimodular { det });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(IntMatrix { rows: 1, cols: 1, entries: vec![det] });
        }
        if n == 2 {
            let (a, b, c, d) = (
                self.get(0, 0).clone(),
                self.get(0, 1).clone(),
                self.get(1, 0).clone(),
                self.get(1, 1).clone(),
            );
            let adj = IntMatrix { rows: 2, cols: 2, entries: vec![d, -b, -c, a] };
            return Ok(if det.is_one() { adj } else { adj.neg() });
        }
        // Symplectic matrices invert in closed form: M^-1 = J^-1 M^T J.
        if n.is_multiple_of(2) {
            let j = symplectic_form_matrix(n / 2);
            if is_symplectic(self, n / 2).unwrap_or(false) {
                let inv = j.neg().mul(&self.transpose())?.mul(&j)?;
                return Ok(inv);
            }
        }
        // Adjugate route for the remaining unimodular cases.
        let mut adj = IntMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                let minor = self.minor(r, c);
                let mut cof = minor.determinant()?;
                if (r + c) % 2 == 1 {
                    cof = -cof;
                }
                adj.set(c, r, cof);
            }
        }
        Ok(if det.is_one() { adj } else { adj.neg() })
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.rows;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == row {
                continue;
            }
            for c in 0..n {
                if c == col {
                    continue;
                }
                entries.push(self.get(r, c).clone());
            }
        }
        IntMatrix { rows: n - 1, cols: n - 1, entries }
    }

    /// Integer power with an arbitrary-precision exponent. Negative exponents
    /// require a unimodular matrix.
    pub fn pow(&self, exp: &BigInt) -> Result<IntMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let base = if exp.is_negative() { self.inverse()? } else { self.clone() };
        let mut result = IntMatrix::identity(self.rows);
        let mut square = base;
        let bits = exp.magnitude().bits();
        for i in 0..bits {
            if exp.magnitude().bit(i) {
                result = result.mul(&square)?;
            }
            if i + 1 < bits {
                square = square.mul(&square)?;
            }
        }
        Ok(result)
    }

    /// Entry-wise reduction into `{0, ..., k-1}`.
    pub fn mod_reduce(&self, k: u64) -> Result<ResidueMatrix, MatrixError> {
        if k < 2 {
            return Err(MatrixError::BadModulus(k));
        }
        let kk = BigInt::from(k);
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let r = e % &kk;
                let r = if r.is_negative() { r + &kk } else { r };
                u64::try_from(&r).expect("residue fits in u64")
            })
            .collect();
        Ok(ResidueMatrix { modulus: k, rows: self.rows, cols: self.cols, entries })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}) {}", self.rows, self.cols, self)
    }
}

/// Text format: rows separated by semicolons, entries by spaces.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

/// Exact product of a sequence of matrices, in sequence order. An empty
/// sequence yields the identity of the given dimension.
pub fn mat_product<'a, I>(ms: I, empty_dim: usize) -> Result<IntMatrix, MatrixError>
where
    I: IntoIterator<Item = &'a IntMatrix>,
{
    let mut acc: Option<IntMatrix> = None;
    for m in ms {
        acc = Some(match acc {
            None => m.clone(),
            Some(p) => p.mul(m)?,
        });
    }
    match acc {
        Some(p) => Ok(p),
        None => {
            if empty_dim == 0 {
                Err(MatrixError::EmptyProduct)
            } else {
                Ok(IntMatrix::identity(empty_dim))
            }
        }
    }
}

/// The standard symplectic form on `Z^{2g}`: block diagonal with `g` blocks
/// `[[0, 1], [-1, 0]]`, so that `<a_i, b_i> = +1` in the basis
/// `(a_1, b_1, ..., a_g, b_g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    genus: usize,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be at least 1");
        SymplecticForm { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> IntMatrix {
        symplectic_form_matrix(self.genus)
    }

    /// Algebraic intersection pairing `<x, y> = x^T J y`.
    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), 2 * self.genus);
        assert_eq!(y.len(), 2 * self.genus);
        let mut acc = BigInt::zero();
        for i in 0..self.genus {
            acc += &x[2 * i] * &y[2 * i + 1] - &x[2 * i + 1] * &y[2 * i];
        }
        acc
    }
}

pub(crate) fn symplectic_form_matrix(genus: usize) -> IntMatrix {
    let n = 2 * genus;
    let mut j = IntMatrix::zero(n, n);
    for i in 0..genus {
        j.set(2 * i, 2 * i + 1, BigInt::one());
        j.set(2 * i + 1, 2 * i, BigInt::from(-1));
    }
    j
}

/// True iff `M^T J M = J` exactly for the genus-`g` form.
pub fn is_symplectic(m: &IntMatrix, genus: usize) -> Result<bool, MatrixError> {
    let n = 2 * genus;
    if m.rows() != n || m.cols() != n {
        return Err(MatrixError::GenusMismatch { genus, rows: m.rows(), cols: m.cols() });
    }
    let j = symplectic_form_matrix(genus);
    let lhs = m.transpose().mul(&j)?.mul(m)?;
    Ok(lhs == j)
}

/// A matrix with entries reduced modulo `k >= 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ResidueMatrix {
    pub fn identity(n: usize, k: u64) -> Result<Self, MatrixError> {
        if k < 2 {
            return Err(MatrixError::BadModulus(k));
        }
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % k;
        }
        Ok(ResidueMatrix { modulus: k, rows: n, cols: n, entries })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    pub fn mul(&self, other: &ResidueMatrix) -> Result<ResidueMatrix, MatrixError> {
        if self.modulus != other.modulus {
            return Err(MatrixError::DimensionMismatch(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = self.modulus as u128;
        let mut out = ResidueMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: other.cols,
            entries: vec![0; self.rows * other.cols],
        };
        for r in 0..self.rows {
            for kk in 0..self.cols {
                let a = self.get(r, kk) as u128;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    let v = (out.entries[idx] as u128 + a * other.get(kk, c) as u128) % k;
                    out.entries[idx] = v as u64;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let k = self.modulus as u128;
        (0..self.rows)
            .map(|r| {
                let mut acc: u128 = 0;
                for (c, vc) in v.iter().enumerate() {
                    acc = (acc + self.get(r, c) as u128 * *vc as u128) % k;
                }
                acc as u64
            })
            .collect()
    }

    /// Lifts back to an integer matrix with entries in `{0, ..., k-1}`.
    pub fn lift(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueMatrix(mod {}) {}", self.modulus, self.lift())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_three() {
        let a = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        let b = IntMatrix::from_rows(&[&[1, 0], &[-1, 1]]);
        let expected = IntMatrix::from_rows(&[&[0, 1], &[-1, 0]]);
        let p = mat_product([&a, &b, &a], 0).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn empty_product_is_identity() {
        let p = mat_product([], 4).unwrap();
        assert_eq!(p, IntMatrix::identity(4));
        assert!(matches!(mat_product([], 0), Err(MatrixError::EmptyProduct)));
    }

    #[test]
    fn m2_times_inverse() {
        let m2 = IntMatrix::from_rows(&[
            &[1, 0, 0, 1],
            &[0, 1, 0, 0],
            &[0, 1, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let inv = m2.inverse().unwrap();
        let p = mat_product([&m2, &inv], 0).unwrap();
        assert_eq!(p, IntMatrix::identity(4));
    }

    #[test]
    fn symplectic_checks() {
        let j = symplectic_form_matrix(1);
        assert!(is_symplectic(&j, 1).unwrap());
        let t = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        assert!(is_symplectic(&t, 1).unwrap());
        let bad = IntMatrix::from_rows(&[&[1, 1], &[1, 1]]);
        assert!(!is_symplectic(&bad, 1).unwrap());
        assert!(is_symplectic(&t, 2).is_err());
    }

    #[test]
    fn mod_reduce_examples() {
        let neg_i4 = IntMatrix::identity(4).neg();
        assert_eq!(neg_i4.mod_reduce(2).unwrap(), IntMatrix::identity(4).mod_reduce(2).unwrap());

        let m = IntMatrix::from_rows(&[&[1, 0], &[-3, 1]]);
        assert_eq!(m.mod_reduce(3).unwrap(), IntMatrix::identity(2).mod_reduce(3).unwrap());

        let m4 = IntMatrix::from_rows(&[
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(m4.mod_reduce(5).unwrap(), m4.mod_reduce(5).unwrap());
        assert_eq!(m4.mod_reduce(5).unwrap().lift(), m4);

        assert!(m4.mod_reduce(1).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix::from_rows(&[&[2, 3], &[1, 2]]);
        assert_eq!(m.determinant().unwrap(), BigInt::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(2));

        let sing = IntMatrix::from_rows(&[&[2, 0], &[0, 2]]);
        assert!(matches!(sing.inverse(), Err(MatrixError::NotUnimodular { .. })));
    }

    #[test]
    fn pow_negative() {
        let t = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        let p = t.pow(&BigInt::from(-5)).unwrap();
        assert_eq!(p, IntMatrix::from_rows(&[&[1, -5], &[0, 1]]));
        let big = BigInt::from(10).pow(20);
        let q = t.pow(&big).unwrap();
        assert_eq!(*q.get(0, 1), big);
    }

    #[test]
    fn pairing_orientation() {
        let form = SymplecticForm::new(2);
        let a1: Vec<BigInt> = vec![1.into(), 0.into(), 0.into(), 0.into()];
        let b1: Vec<BigInt> = vec![0.into(), 1.into(), 0.into(), 0.into()];
        assert_eq!(form.pairing(&a1, &b1), BigInt::one());
        assert_eq!(form.pairing(&b1, &a1), BigInt::from(-1));
    }

    #[test]
    fn rank_detects_dependence() {
        let m = IntMatrix::from_rows(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::identity(3).rank(), 3);
    }
}
