//! Dense integer matrices with checked arithmetic.

use std::fmt;

use crate::error::{Error, Result};

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Checked dot product.
pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter()
        .zip(b)
        .try_fold(0i64, |acc, (&x, &y)| add(acc, mul(x, y)?))
}

/// Checked sum.
pub fn sum(a: &[i64]) -> Result<i64> {
    a.iter().try_fold(0i64, |acc, &x| add(acc, x))
}

/// Row-major dense matrix of `i64`. Every arithmetic operation reports
/// [`Error::Overflow`] instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn neg(&self) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add(a, b))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = add(out.data[idx], mul(a, b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v · M`.
    pub fn vec_mul(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        (0..self.cols)
            .map(|j| (0..self.rows).try_fold(0i64, |acc, i| add(acc, mul(v[i], self.get(i, j))?)))
            .collect()
    }

    /// Matrix times column vector: `M · v`.
    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Quadratic form `v · M · vᵀ`.
    pub fn quadratic_form(&self, v: &[i64]) -> Result<i64> {
        let w = self.vec_mul(v)?;
        dot(&w, v)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as i64))
    }

    /// Unit diagonal and zeros above it.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| self.get(i, i) == 1 && (i + 1..self.cols).all(|j| self.get(i, j) == 0))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

/// Rows of space separated integers, one row per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_overflow() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_rows(), vec![vec![2, 1], vec![4, 3]]);
        assert_eq!(a.vec_mul(&[1, 1]).unwrap(), vec![4, 6]);
        assert_eq!(a.mul_vec(&[1, 1]).unwrap(), vec![3, 7]);
        assert_eq!(a.quadratic_form(&[1, -1]).unwrap(), 1 - 2 - 3 + 4);

        let big = IntMatrix::from_rows(&[vec![i64::MAX]]).unwrap();
        assert_eq!(big.mul(&big).unwrap_err(), Error::Overflow);
        assert_eq!(big.add(&big).unwrap_err(), Error::Overflow);
        let min = IntMatrix::from_rows(&[vec![i64::MIN]]).unwrap();
        assert_eq!(min.neg().unwrap_err(), Error::Overflow);
        assert!(matches!(
            a.mul(&IntMatrix::zeros(3, 1)),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn display_rows() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![-1, 1]]).unwrap();
        assert_eq!(m.to_string(), "1 0\n-1 1\n");
        assert!(IntMatrix::identity(3).is_identity());
        assert!(m.is_lower_unitriangular());
        assert!(!m.transpose().is_lower_unitriangular());
    }
}
