use std::ops::{Add, Index, IndexMut};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major `n×n` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Copy> SquareMatrix<T> {
    pub fn filled(n: usize, value: T) -> Self {
        SquareMatrix {
            n,
            data: vec![value; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        SquareMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "matrix is not square: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} row-major entries for n={n}, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_row_major(self) -> Vec<T> {
        self.data
    }

    /// `(i, j, value)` for every cell in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        let n = self.n;
        self.data.iter().enumerate().map(move |(k, &v)| (k / n, k % n, v))
    }

    pub fn map<U: Copy>(&self, f: impl FnMut(T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().copied().map(f).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Reorders rows and columns simultaneously: `out[p[i]][p[j]] = self[i][j]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = self.clone();
        for (i, j, v) in self.cells() {
            out.set(perm[i], perm[j], v);
        }
        out
    }
}

impl<T: Copy + Zero + Add<Output = T>> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self::filled(n, T::zero())
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.rows()
            .map(|r| r.iter().fold(T::zero(), |a, &b| a + b))
            .take(self.n)
            .collect()
    }

    pub fn col_sums(&self) -> Vec<T> {
        let mut sums = vec![T::zero(); self.n];
        for (_, j, v) in self.cells() {
            sums[j] = sums[j] + v;
        }
        sums
    }

    pub fn total(&self) -> T {
        self.data.iter().fold(T::zero(), |a, &b| a + b)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        SquareMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scaled(&self, k: T) -> Self {
        self.map(|v| v * k)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    pub fn min_entry(&self) -> T {
        self.data.iter().copied().fold(T::infinity(), T::min)
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_indexing() {
        let m = SquareMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(m.row_sums(), vec![3.0, 7.0]);
        assert_eq!(m.col_sums(), vec![4.0, 6.0]);
        assert_eq!(m[(1, 0)], 3.0);
        assert_eq!(m.total(), 10.0);
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(SquareMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).is_err());
        assert!(SquareMatrix::<u32>::from_row_major(2, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn permuted_moves_rows_and_columns() {
        let m = SquareMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]).unwrap();
        let p = m.permuted(&[1, 0]);
        assert_eq!(p.to_rows(), vec![vec![0, 2], vec![1, 0]]);
    }
}
