//! Dense exact matrices over the rationals.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Rational;

/// Row-major dense matrix. Equality is exact entrywise equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged row lengths".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and fixtures: entries given as `"p/q"` strings.
    pub fn from_str_rows(rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }

    /// Builds a matrix from column vectors.
    pub fn from_columns(ambient: usize, cols: &[Vec<Rational>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != ambient) {
            return Err(Error::DimensionMismatch("column length != ambient".into()));
        }
        let mut m = Matrix::zeros(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Rational::from_int(-1))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + &(a * other.get(k, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rational::zero(), |acc, j| {
                    &acc + &(self.get(i, j) * &v[j])
                })
            })
            .collect())
    }

    pub fn trace(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("trace of non-square matrix".into()));
        }
        Ok((0..self.rows).fold(Rational::zero(), |acc, i| &acc + self.get(i, i)))
    }

    /// Reduced row echelon form in place; returns the pivot column indices.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip().expect("pivot nonzero");
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.get(i, j) - &(&factor * self.get(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries
                .swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref_in_place().len()
    }

    /// Basis of the kernel (null space), one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut work = self.clone();
        let pivots = work.rref_in_place();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -work.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Flattens to a single row-major vector (used by the algebra closure).
    pub(crate) fn flatten(&self) -> Vec<Rational> {
        self.entries.clone()
    }
}

/// Exact evaluation of a polynomial at a square matrix.
pub fn mat_poly_eval(p: &Polynomial, a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "polynomial evaluation needs a square matrix".into(),
        ));
    }
    let n = a.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(a)?;
        for i in 0..n {
            let v = acc.get(i, i) + c;
            acc.set(i, i, v);
        }
    }
    Ok(acc)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows
            || repr.entries.iter().any(|row| row.len() != repr.cols)
        {
            return Err(D::Error::custom("matrix entry shape does not match rows/cols"));
        }
        Matrix::from_rows(repr.entries).map_err(D::Error::custom)
    }
}
