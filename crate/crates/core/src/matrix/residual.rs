use serde::Serialize;

use super::SquareMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Values within this distance of an integer are snapped onto it before flooring.
const INTEGER_SNAP: f64 = 1e-9;

/// Floor/residual split of a normalized matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegerResidualDecomposition<T> {
    pub int_part: SquareMatrix<u32>,
    pub res_part: SquareMatrix<T>,
    /// Residual row sum over total row sum (0 for an all-zero row).
    pub row_ratios: Vec<T>,
    pub col_ratios: Vec<T>,
}

impl<T: Scalar> IntegerResidualDecomposition<T> {
    /// `int_part + res_part` as a scalar matrix.
    pub fn reconstruct(&self) -> SquareMatrix<T> {
        let n = self.int_part.n();
        SquareMatrix::from_fn(n, |i, j| {
            T::from_u32(self.int_part.get(i, j)).unwrap() + self.res_part.get(i, j)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniformResidualClass {
    /// All ratios in `[0, 1/4)`.
    IntervalLow,
    /// All ratios in `[1/4, 1/2)`.
    IntervalMid,
    /// All ratios in `[1/2, 1]`.
    IntervalHigh,
    NotUniform,
}

impl UniformResidualClass {
    pub fn is_uniform(self) -> bool {
        self != UniformResidualClass::NotUniform
    }

    pub fn as_str(self) -> &'static str {
        match self {
            UniformResidualClass::IntervalLow => "interval-low",
            UniformResidualClass::IntervalMid => "interval-mid",
            UniformResidualClass::IntervalHigh => "interval-high",
            UniformResidualClass::NotUniform => "not-uniform",
        }
    }

    fn of_ratio<T: Scalar>(r: T) -> Self {
        if r < T::lit(0.25) {
            UniformResidualClass::IntervalLow
        } else if r < T::lit(0.5) {
            UniformResidualClass::IntervalMid
        } else {
            UniformResidualClass::IntervalHigh
        }
    }
}

impl std::fmt::Display for UniformResidualClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Splits a normalized nonnegative matrix into its floor and fractional parts.
///
/// The diagonal is not required to be zero, so pattern matrices can be
/// decomposed as well as demand matrices.
pub fn decompose_integer_residual<T: Scalar>(m: &SquareMatrix<T>) -> Result<IntegerResidualDecomposition<T>> {
    let n = m.n();
    let snap = T::lit(INTEGER_SNAP);
    let mut int_part = SquareMatrix::<u32>::zeros(n);
    let mut res_part = SquareMatrix::<T>::zeros(n);
    for (i, j, v) in m.cells() {
        if !v.is_finite() || v < T::zero() {
            return Err(Error::invalid(format!("entry ({i},{j}) = {v} must be nonnegative")));
        }
        let nearest = v.round();
        let v = if (v - nearest).abs() <= snap { nearest } else { v };
        let fl = v.floor();
        let count = fl
            .to_u32()
            .ok_or_else(|| Error::invalid(format!("entry ({i},{j}) = {v} too large")))?;
        int_part.set(i, j, count);
        res_part.set(i, j, v - fl);
    }
    let ratio = |res: Vec<T>, tot: Vec<T>| -> Vec<T> {
        res.into_iter()
            .zip(tot)
            .map(|(r, t)| if t > T::zero() { r / t } else { T::zero() })
            .collect()
    };
    let int_rows: Vec<T> = int_part
        .row_sums()
        .into_iter()
        .map(|v| T::from_u32(v).unwrap())
        .collect();
    let int_cols: Vec<T> = int_part
        .col_sums()
        .into_iter()
        .map(|v| T::from_u32(v).unwrap())
        .collect();
    let res_rows = res_part.row_sums();
    let res_cols = res_part.col_sums();
    let tot_rows = int_rows.iter().zip(&res_rows).map(|(&a, &b)| a + b).collect();
    let tot_cols = int_cols.iter().zip(&res_cols).map(|(&a, &b)| a + b).collect();
    Ok(IntegerResidualDecomposition {
        row_ratios: ratio(res_rows, tot_rows),
        col_ratios: ratio(res_cols, tot_cols),
        int_part,
        res_part,
    })
}

/// The interval containing every row and column ratio, or `NotUniform`.
pub fn classify_uniform_residual<T: Scalar>(d: &IntegerResidualDecomposition<T>) -> UniformResidualClass {
    let mut ratios = d.row_ratios.iter().chain(&d.col_ratios);
    let Some(&first) = ratios.next() else {
        return UniformResidualClass::IntervalLow;
    };
    let class = UniformResidualClass::of_ratio(first);
    if ratios.all(|&r| UniformResidualClass::of_ratio(r) == class) {
        class
    } else {
        UniformResidualClass::NotUniform
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::chessboard_pattern;

    fn sq(rows: Vec<Vec<f64>>) -> SquareMatrix<f64> {
        SquareMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn half_integer_two_by_two() {
        let d = decompose_integer_residual(&sq(vec![vec![0.5, 1.5], vec![1.5, 0.5]])).unwrap();
        assert_eq!(d.int_part.to_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(d.res_part.to_rows(), vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        assert!(d.row_ratios.iter().chain(&d.col_ratios).all(|&r| r == 0.5));
        assert_eq!(classify_uniform_residual(&d), UniformResidualClass::IntervalHigh);
    }

    #[test]
    fn integer_matrix_has_no_residual() {
        let d = decompose_integer_residual(&sq(vec![vec![2.0, 1.0], vec![1.0, 2.0]])).unwrap();
        assert_eq!(d.int_part.to_rows(), vec![vec![2, 1], vec![1, 2]]);
        assert!(d.res_part.as_slice().iter().all(|&v| v == 0.0));
        assert!(d.row_ratios.iter().all(|&r| r == 0.0));
        assert_eq!(classify_uniform_residual(&d), UniformResidualClass::IntervalLow);
    }

    #[test]
    fn snaps_serialization_noise() {
        let d = decompose_integer_residual(&sq(vec![vec![0.0, 1.9999999999], vec![2.0000000001, 0.0]])).unwrap();
        assert_eq!(d.int_part.to_rows(), vec![vec![0, 2], vec![2, 0]]);
        assert!(d.res_part.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn negative_entry_rejected() {
        assert!(decompose_integer_residual(&sq(vec![vec![0.0, -0.1], vec![0.0, 0.0]])).is_err());
    }

    #[test]
    fn zero_rows_count_as_low() {
        let d = decompose_integer_residual(&sq(vec![vec![0.0, 0.0], vec![0.0, 0.0]])).unwrap();
        assert_eq!(d.row_ratios, vec![0.0, 0.0]);
        assert_eq!(classify_uniform_residual(&d), UniformResidualClass::IntervalLow);
    }

    #[test]
    fn mixed_ratios_are_not_uniform() {
        let d = IntegerResidualDecomposition {
            int_part: SquareMatrix::zeros(2),
            res_part: SquareMatrix::<f64>::zeros(2),
            row_ratios: vec![0.1, 0.3],
            col_ratios: vec![0.1, 0.1],
        };
        assert_eq!(classify_uniform_residual(&d), UniformResidualClass::NotUniform);
    }

    #[test]
    fn interval_boundaries_follow_half_open_rule() {
        let class = |r: f64| {
            classify_uniform_residual(&IntegerResidualDecomposition {
                int_part: SquareMatrix::zeros(1),
                res_part: SquareMatrix::<f64>::zeros(1),
                row_ratios: vec![r],
                col_ratios: vec![r],
            })
        };
        assert_eq!(class(0.0), UniformResidualClass::IntervalLow);
        assert_eq!(class(0.25), UniformResidualClass::IntervalMid);
        assert_eq!(class(0.4999), UniformResidualClass::IntervalMid);
        assert_eq!(class(0.5), UniformResidualClass::IntervalHigh);
        assert_eq!(class(1.0), UniformResidualClass::IntervalHigh);
    }

    #[test]
    fn chessboard_pattern_ratios_are_one_half() {
        let pattern: SquareMatrix<f64> = chessboard_pattern(16);
        let d = decompose_integer_residual(&pattern).unwrap();
        // direct summation: all 16 cells leave residual 0.5, row total 16
        for &r in d.row_ratios.iter().chain(&d.col_ratios) {
            assert_eq!(r, 16.0 * 0.5 / 16.0);
        }
        assert_eq!(classify_uniform_residual(&d), UniformResidualClass::IntervalHigh);
    }

    #[test]
    fn works_in_f32() {
        let m = SquareMatrix::<f32>::from_rows(vec![vec![0.0, 1.25], vec![0.75, 0.0]]).unwrap();
        let d = decompose_integer_residual(&m).unwrap();
        assert_eq!(d.int_part.to_rows(), vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(d.row_ratios, vec![0.2, 1.0]);
    }
}
