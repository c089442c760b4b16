//! Exact rational scalars, vectors and dense matrices.
//!
//! Every value is kept in canonical form: `BigRational` reduces after each
//! operation, so equality is structural.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `numer / denom`. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Vector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    /// The `index`-th standard basis vector of R^dim.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[index] = Rational::one();
        v
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&e| int(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// True iff every entry is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|e| !e.is_negative())
    }

    /// True iff every entry is `<= 0`.
    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|e| !e.is_positive())
    }

    pub fn dot(&self, other: &Vector) -> Result<Rational> {
        if self.dim() != other.dim() {
            return Err(Error::mismatch("dot product", self.dim(), other.dim()));
        }
        Ok(dot_slices(&self.0, &other.0))
    }

    pub fn scale(&self, factor: &Rational) -> Vector {
        Vector(self.0.iter().map(|e| e * factor).collect())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::mismatch("vector sum", self.dim(), other.dim()));
        }
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|e| -e).collect())
    }

    /// Appends one coordinate, as in the lift `x -> (x, t)`.
    pub fn extended(&self, last: Rational) -> Vector {
        let mut entries = self.0.clone();
        entries.push(last);
        Vector(entries)
    }
}

impl Index<usize> for Vector {
    type Output = Rational;

    fn index(&self, index: usize) -> &Rational {
        &self.0[index]
    }
}

impl From<Vec<Rational>> for Vector {
    fn from(entries: Vec<Rational>) -> Self {
        Vector(entries)
    }
}

impl FromIterator<Rational> for Vector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Vector {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(e))?;
        }
        f.write_str(")")
    }
}

pub(crate) fn dot_slices(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense row-major rational matrix. Zero rows or zero columns are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` fixes the width when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.dim() != cols {
                return Err(Error::mismatch("matrix row", cols, row.dim()));
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are `columns`; `rows` fixes the height when empty.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        Ok(Matrix::from_rows(rows, columns)?.transpose())
    }

    /// Integer literal convenience, mostly for tests and fixtures.
    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vector> = rows.iter().map(|r| Vector::from_i64(r)).collect();
        Matrix::from_rows(cols, &rows).expect("ragged integer matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector(self.row(i).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        transpose(self)
    }

    pub fn mat_vec(&self, x: &Vector) -> Result<Vector> {
        mat_vec(self, x)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::mismatch("matrix product", self.cols, other.rows));
        }
        let columns = other.columns();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for col in &columns {
                data.push(dot_slices(self.row(i), col.entries()));
            }
        }
        Matrix::new(self.rows, other.cols, data)
    }
}

/// `A x`, exactly.
pub fn mat_vec(a: &Matrix, x: &Vector) -> Result<Vector> {
    if a.cols() != x.dim() {
        return Err(Error::mismatch("matrix-vector product", a.cols(), x.dim()));
    }
    Ok((0..a.rows())
        .map(|i| dot_slices(a.row(i), x.entries()))
        .collect())
}

pub fn transpose(a: &Matrix) -> Matrix {
    let mut data = Vec::with_capacity(a.data.len());
    for j in 0..a.cols {
        for i in 0..a.rows {
            data.push(a.get(i, j).clone());
        }
    }
    Matrix {
        rows: a.cols,
        cols: a.rows,
        data,
    }
}

/// Solves `A x = b` for a matrix of full column rank.
///
/// Returns `Ok(None)` when `A` is rank deficient (including wide matrices)
/// or the system is inconsistent. Pivots on the first nonzero entry of each
/// column, so the result is exact and deterministic.
pub fn solve_full_rank(a: &Matrix, b: &Vector) -> Result<Option<Vector>> {
    if a.rows() != b.dim() {
        return Err(Error::mismatch(
            "linear system right-hand side",
            a.rows(),
            b.dim(),
        ));
    }
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Ok(None);
    }
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();

    for col in 0..n {
        let Some(pivot) = (col..m).find(|&r| !aug[r][col].is_zero()) else {
            return Ok(None);
        };
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for entry in aug[col].iter_mut().skip(col) {
            *entry *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *entry -= &factor * p;
            }
        }
    }
    // Rows past the pivots have zero coefficients; a nonzero rhs is inconsistent.
    if aug[n..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    Ok(Some(aug[..n].iter().map(|row| row[n].clone()).collect()))
}

/// Canonical form of the constraint `a^t x <= b`.
///
/// Divides by the absolute value of the first nonzero entry of `a`, so the
/// sign of the row is preserved. A zero normal keeps only the sign of `b`.
pub fn normalize_row(a: &Vector, b: &Rational) -> (Vector, Rational) {
    match a.iter().find(|e| !e.is_zero()) {
        Some(lead) => {
            let scale = lead.abs().recip();
            (a.scale(&scale), b * &scale)
        }
        None => (a.clone(), b.signum()),
    }
}
