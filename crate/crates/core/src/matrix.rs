//! Dense exact matrices.
//!
//! Built arrays are lower triangular; production matrices are square but
//! banded with one superdiagonal (or two, for double almost-Riordan arrays).
//! Both use the same [`Matrix`] type.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from possibly ragged rows, padding with zeros.
    /// The result has as many columns as rows unless some row is longer.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Matrix {
        let n = rows.len();
        let cols = rows.iter().map(Vec::len).max().unwrap_or(0).max(n);
        let mut m = Matrix::zeros(n, cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Fills an `rows x cols` matrix from a function of the indices.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Top-left `rows x cols` block.
    pub fn block(&self, rows: usize, cols: usize) -> Result<Matrix> {
        if rows > self.rows || cols > self.cols {
            return Err(Error::Shape(format!(
                "cannot take a {rows}x{cols} block of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(Matrix::from_fn(rows, cols, |i, j| self.get(i, j).clone()))
    }

    /// Top-left `n x n` block.
    pub fn truncate(&self, n: usize) -> Result<Matrix> {
        self.block(n, n)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `[1] (+) self`: a leading unit entry and `self` shifted down and right.
    pub fn one_plus(&self) -> Matrix {
        Matrix::from_fn(self.rows + 1, self.cols + 1, |i, j| match (i, j) {
            (0, 0) => Rational::one(),
            (0, _) | (_, 0) => Rational::zero(),
            _ => self.get(i - 1, j - 1).clone(),
        })
    }

    /// Drops the first `k` rows.
    pub fn drop_rows(&self, k: usize) -> Matrix {
        let k = k.min(self.rows);
        Matrix::from_fn(self.rows - k, self.cols, |i, j| self.get(i + k, j).clone())
    }

    /// Sums along `i + j = n` for each `n < rows`.
    pub fn antidiagonal_sums(&self) -> Vec<Rational> {
        (0..self.rows)
            .map(|n| {
                (0..=n.min(self.cols.saturating_sub(1)))
                    .map(|j| self.get(n - j, j))
                    .fold(Rational::zero(), |acc, v| acc + v)
            })
            .collect()
    }

    /// Dense CSV; cells above the diagonal of a lower-triangular matrix are empty.
    pub fn to_csv(&self) -> String {
        let lower = self.is_lower_triangular();
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols)
                .map(|j| {
                    if lower && j > i {
                        String::new()
                    } else {
                        format_rational(self.get(i, j))
                    }
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Rows as canonical strings, lower triangle only for triangular matrices.
    pub fn string_rows(&self) -> Vec<Vec<String>> {
        let lower = self.is_lower_triangular() && self.is_square();
        (0..self.rows)
            .map(|i| {
                let len = if lower { i + 1 } else { self.cols };
                self.row(i)[..len].iter().map(format_rational).collect()
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.string_rows();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> Self {
        MatrixJson {
            n: m.rows,
            entries: m.string_rows(),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Matrix> {
        if j.entries.len() != j.n {
            return Err(Error::Format(format!(
                "n = {} but {} rows given",
                j.n,
                j.entries.len()
            )));
        }
        let rows = j
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = Matrix::from_int_rows(&[&[1], &[1, 1], &[1, 2, 1]]);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, Matrix::from_int_rows(&[&[1], &[2, 1], &[4, 4, 1]]));
        assert_eq!(a.mul(&Matrix::identity(3)).unwrap(), a);
        assert!(a.mul(&Matrix::identity(2)).is_err());
    }

    #[test]
    fn one_plus_and_blocks() {
        let a = Matrix::from_int_rows(&[&[2], &[3, 4]]);
        let b = a.one_plus();
        assert_eq!(b, Matrix::from_int_rows(&[&[1], &[0, 2], &[0, 3, 4]]));
        assert_eq!(
            b.truncate(2).unwrap(),
            Matrix::from_int_rows(&[&[1], &[0, 2]])
        );
        assert!(b.truncate(4).is_err());
        assert_eq!(b.drop_rows(1).row(0), b.row(1));
    }

    #[test]
    fn serial_forms() {
        let a = Matrix::from_int_rows(&[&[1], &[-1, 1]]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"n":2,"entries":[["1"],["-1","1"]]}"#);
        assert_eq!(serde_json::from_str::<Matrix>(&text).unwrap(), a);
        assert_eq!(a.to_csv(), "1,\n-1,1\n");
        let p = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let back: Matrix = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Matrix>(r#"{"n":3,"entries":[["1"]]}"#).is_err());
    }
}
