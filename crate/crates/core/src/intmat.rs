//! Dense integer matrices over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Row-major dense matrix over BigInt. Zero-row and zero-column shapes are
/// allowed; they show up naturally as incidence matrices of edgeless graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        IntMat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub fn row_add(&mut self, target: usize, source: usize, factor: &BigInt) {
        assert_ne!(target, source);
        for j in 0..self.cols {
            let delta = factor * &self[(source, j)];
            self[(target, j)] += delta;
        }
    }

    /// col[target] += factor * col[source]
    pub fn col_add(&mut self, target: usize, source: usize, factor: &BigInt) {
        assert_ne!(target, source);
        for i in 0..self.rows {
            let delta = factor * &self[(i, source)];
            self[(i, target)] += delta;
        }
    }

    pub fn negate_row(&mut self, row: usize) {
        for j in 0..self.cols {
            let v = -self[(row, j)].clone();
            self[(row, j)] = v;
        }
    }

    /// Rank over the rationals via fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut row = 0;
        for col in 0..a.cols {
            let pivot = (row..a.rows).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            a.swap_rows(row, p);
            for r in row + 1..a.rows {
                for c in col + 1..a.cols {
                    let num = &a[(row, col)] * &a[(r, c)] - &a[(r, col)] * &a[(row, c)];
                    a[(r, c)] = &num / &prev;
                }
                a[(r, col)] = BigInt::zero();
            }
            prev = a[(row, col)].clone();
            row += 1;
            rank += 1;
            if row == a.rows {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let num = &a[(k, k)] * &a[(r, c)] - &a[(r, k)] * &a[(k, c)];
                    a[(r, c)] = &num / &prev;
                }
                a[(r, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn abs_max(&self) -> BigInt {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].to_string().len()).max().unwrap_or(1))
            .collect();
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                write!(f, " {:>width$}", self[(i, j)].to_string(), width = widths[j])?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// Serialized form: shape plus row-major entries as decimal strings, so that
/// arbitrary-precision values survive JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntMatRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl From<&IntMat> for IntMatRecord {
    fn from(m: &IntMat) -> Self {
        IntMatRecord {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.iter().map(BigInt::to_string).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_known_matrices() {
        let m = IntMat::from_rows(&[vec![1, 1, 0], vec![-1, 0, 1], vec![0, -1, -1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMat::identity(4).rank(), 4);
        assert_eq!(IntMat::zeros(3, 2).rank(), 0);
        let wide = IntMat::from_rows(&[vec![2, 4, 6], vec![1, 2, 3]]);
        assert_eq!(wide.rank(), 1);
    }

    #[test]
    fn product_shapes() {
        let a = IntMat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMat::from_rows(&[vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn determinants() {
        let a = IntMat::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.determinant(), BigInt::from(-2));
        let b = IntMat::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]);
        assert_eq!(b.determinant(), BigInt::from(-5));
        assert_eq!(IntMat::identity(4).determinant(), BigInt::from(1));
        assert_eq!(IntMat::zeros(2, 2).determinant(), BigInt::from(0));
    }
}
