//! Exact integer matrices and their normal forms.
//!
//! Everything here works over arbitrary-precision integers. Entry growth during
//! elimination is unbounded, so nothing is ever narrowed to machine words.

mod hermite;
mod parse;
mod smith;

use std::fmt;
use std::ops::Mul;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use hermite::{hermite_normal_form, lattice_hermite, HermiteDecomposition, LatticeHermite};
pub use parse::{parse_vector, parse_vectors};
pub use smith::{invariant_factors, smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not unimodular (|det| = {0})")]
    NotUnimodular(BigInt),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("not a normal form decomposition: {0}")]
    InvalidDecomposition(String),
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diag<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone().into();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(MatrixError::ShapeMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(MatrixError::ShapeMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Selects the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut s = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.data[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        s
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<Self, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                m.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(m)
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &IntMatrix) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * c + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.data[(self.rows + i) * c + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut p = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    p.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(p)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn require_square(&self) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Signed determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, MatrixError> {
        self.require_square()?;
        Ok(bareiss_det(self.rows, self.data.clone()))
    }

    /// Classical adjoint, so that `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        if n == 1 {
            adj.data[0] = BigInt::one();
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.select(&rows, &cols);
                let mut cof = bareiss_det(n - 1, minor.data);
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                adj.data[j * n + i] = cof;
            }
        }
        Ok(adj)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }
}

fn bareiss_det(n: usize, mut a: Vec<BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Display for IntMatrix {
    /// Renders in the `a,b;c,d` text format accepted by [`IntMatrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = (0..self.rows)
            .map(|i| self.row(i).iter().join(","))
            .join(";");
        f.write_str(&s)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{self}]")
    }
}

/// Determinantal divisors `d_1..d_n`, each the gcd of all `k x k` minors,
/// by direct enumeration. Exponential in `n`; meant as a cross-check for small
/// matrices.
pub fn determinantal_divisors_by_minors(m: &IntMatrix) -> Result<Vec<BigInt>, MatrixError> {
    m.require_square()?;
    if m.det()?.is_zero() {
        return Err(MatrixError::SingularMatrix);
    }
    let n = m.rows();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in (0..n).combinations(k) {
            for cols in (0..n).combinations(k) {
                let minor = m.select(&rows, &cols);
                g = g.gcd(&bareiss_det(k, minor.data));
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Determinantal divisors as running products of the invariant factors.
pub fn determinantal_divisors(m: &IntMatrix) -> Result<Vec<BigInt>, MatrixError> {
    let factors = invariant_factors(m)?;
    let mut acc = BigInt::one();
    Ok(factors
        .into_iter()
        .map(|s| {
            acc *= s;
            acc.clone()
        })
        .collect())
}

/// Exact inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> Result<IntMatrix, MatrixError> {
    let det = u.det()?;
    if !det.abs().is_one() {
        return Err(MatrixError::NotUnimodular(det.abs()));
    }
    let adj = u.adjugate()?;
    if det.is_negative() {
        Ok(IntMatrix {
            rows: adj.rows,
            cols: adj.cols,
            data: adj.data.into_iter().map(|x| -x).collect(),
        })
    } else {
        Ok(adj)
    }
}

/// `|det M| * M^{-1} * a`, computed through the adjugate so it stays integral.
pub fn scaled_inverse_apply(m: &IntMatrix, a: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
    let det = m.det()?;
    if det.is_zero() {
        return Err(MatrixError::SingularMatrix);
    }
    let y = m.adjugate()?.mul_vec(a)?;
    Ok(if det.is_negative() {
        y.into_iter().map(|x| -x).collect()
    } else {
        y
    })
}

/// Converts a slice of machine integers into big integers.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
