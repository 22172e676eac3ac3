//! Demand matrices under the hose model.
//!
//! A [`DemandMatrix`] holds source→destination rates between ToRs. Raw
//! matrices are in bits/s; most operations expect a matrix normalized by a
//! link capacity so that entries count multiples of one link.

mod csv_io;
mod generate;
mod residual;
mod square;

use std::ops::Deref;

use serde::Serialize;

use crate::error::{Axis, Error, Result};
use crate::params::NetworkParams;
use crate::scalar::Scalar;

pub use csv_io::{load_csv, load_csv_matrix, read_csv, read_csv_matrix, save_csv, write_csv};
pub use generate::{chessboard_pattern, generate, GenParams, MatrixKind};
pub use residual::{
    classify_uniform_residual, decompose_integer_residual, IntegerResidualDecomposition, UniformResidualClass,
};
pub use square::SquareMatrix;

/// Nonnegative square matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DemandMatrix<T> {
    inner: SquareMatrix<T>,
}

impl<T: Scalar> DemandMatrix<T> {
    pub fn new(m: SquareMatrix<T>) -> Result<Self> {
        for (i, j, v) in m.cells() {
            if !v.is_finite() || v < T::zero() {
                return Err(Error::invalid(format!(
                    "entry ({i},{j}) = {v} is not a nonnegative finite rate"
                )));
            }
            if i == j && v != T::zero() {
                return Err(Error::invalid(format!(
                    "diagonal entry ({i},{i}) = {v}: self-demand must be zero"
                )));
            }
        }
        Ok(DemandMatrix { inner: m })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(SquareMatrix::from_rows(rows)?)
    }

    pub fn zeros(n: usize) -> Self {
        DemandMatrix {
            inner: SquareMatrix::zeros(n),
        }
    }

    pub fn as_matrix(&self) -> &SquareMatrix<T> {
        &self.inner
    }

    pub fn into_matrix(self) -> SquareMatrix<T> {
        self.inner
    }

    /// Multiplies every entry by `k ≥ 0`.
    pub fn scaled(&self, k: T) -> Self {
        debug_assert!(k >= T::zero());
        DemandMatrix {
            inner: self.inner.scaled(k),
        }
    }

    /// Converts entries to another scalar type.
    pub fn cast<U: Scalar>(&self) -> DemandMatrix<U> {
        DemandMatrix {
            inner: self.inner.map(|v| U::from(v).expect("scalar conversion")),
        }
    }

    /// Convex combination `alpha·self + (1-alpha)·other`.
    pub fn blend(&self, other: &Self, alpha: T) -> Self {
        assert_eq!(self.n(), other.n());
        let a = self.inner.scaled(alpha);
        let b = other.inner.scaled(T::one() - alpha);
        DemandMatrix { inner: a.add(&b) }
    }

    /// `(source, destination, rate)` for every strictly positive entry.
    pub fn demands(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.inner.cells().filter(|&(_, _, v)| v > T::zero())
    }
}

impl<T> Deref for DemandMatrix<T> {
    type Target = SquareMatrix<T>;

    fn deref(&self) -> &SquareMatrix<T> {
        &self.inner
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoseViolation {
    pub axis: Axis,
    pub index: usize,
    pub sum: f64,
    pub limit: f64,
}

/// Rows and columns whose total exceeds the per-ToR capacity `c·u`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<HoseViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the hose constraints of raw matrix `m` against `p`.
///
/// Sums are accepted up to `c·u·(1 + 1e-9)`.
pub fn validate_hose<T: Scalar>(m: &DemandMatrix<T>, p: &NetworkParams) -> Result<ValidationReport> {
    if m.n() != p.n {
        return Err(Error::invalid(format!(
            "matrix dimension {} does not match n = {}",
            m.n(),
            p.n
        )));
    }
    let limit = p.node_capacity();
    let eps = 1e-9 * limit;
    let mut report = ValidationReport::default();
    for (axis, sums) in [(Axis::Row, m.row_sums()), (Axis::Column, m.col_sums())] {
        for (index, s) in sums.into_iter().enumerate() {
            let sum = s.to_f64_lossy();
            if sum > limit + eps {
                report.violations.push(HoseViolation {
                    axis,
                    index,
                    sum,
                    limit,
                });
            }
        }
    }
    Ok(report)
}

/// Divides every entry by `unit`, giving a dimensionless matrix.
pub fn normalize<T: Scalar>(m: &DemandMatrix<T>, unit: T) -> Result<DemandMatrix<T>> {
    if !(unit > T::zero()) || !unit.is_finite() {
        return Err(Error::invalid(format!(
            "normalization unit must be positive, got {unit}"
        )));
    }
    Ok(DemandMatrix {
        inner: m.inner.map(|v| v / unit),
    })
}

/// Raises off-diagonal entries until every row and column sums to `target`.
///
/// Greedy transportation fill: the row with the largest slack is paired with
/// the largest-slack column other than itself and receives the smaller of the
/// two slacks. When the only remaining slack sits on a diagonal cell `(k,k)`,
/// previously added mass at some `(a,b)` with `a,b ≠ k` is rerouted through
/// `(k,b)` and `(a,k)`.
pub fn saturate<T: Scalar>(m: &DemandMatrix<T>, target: T) -> Result<DemandMatrix<T>> {
    let n = m.n();
    if !(target > T::zero()) {
        return Err(Error::invalid(format!(
            "saturation target must be positive, got {target}"
        )));
    }
    let tol = T::lit(1e-9) * target;
    let mut row_slack = Vec::with_capacity(n);
    let mut col_slack = Vec::with_capacity(n);
    for (axis, sums, slack) in [
        (Axis::Row, m.row_sums(), &mut row_slack),
        (Axis::Column, m.col_sums(), &mut col_slack),
    ] {
        for (index, s) in sums.into_iter().enumerate() {
            if s > target + tol {
                return Err(Error::InfeasibleAugmentation {
                    axis,
                    index,
                    sum: s.to_f64_lossy(),
                    target: target.to_f64_lossy(),
                });
            }
            slack.push((target - s).max(T::zero()));
        }
    }

    let mut out = m.inner.clone();
    let mut added = SquareMatrix::<T>::zeros(n);
    // Each pass either drains a row or column slack, or reroutes one added cell.
    let max_passes = 4 * n * n + 4 * n;
    for _ in 0..max_passes {
        let mut rows: Vec<usize> = (0..n).filter(|&i| row_slack[i] > tol).collect();
        if rows.is_empty() {
            break;
        }
        rows.sort_by(|&a, &b| row_slack[b].partial_cmp(&row_slack[a]).unwrap().then(a.cmp(&b)));
        let pick = rows.iter().find_map(|&i| {
            let j = (0..n)
                .filter(|&j| j != i && col_slack[j] > tol)
                .max_by(|&a, &b| col_slack[a].partial_cmp(&col_slack[b]).unwrap().then(b.cmp(&a)))?;
            Some((i, j))
        });
        match pick {
            Some((i, j)) => {
                let delta = row_slack[i].min(col_slack[j]);
                out[(i, j)] = out[(i, j)] + delta;
                added[(i, j)] = added[(i, j)] + delta;
                row_slack[i] = row_slack[i] - delta;
                col_slack[j] = col_slack[j] - delta;
            }
            None => {
                // Only (k,k) has both row and column slack left.
                let k = rows[0];
                if col_slack[k] <= tol {
                    return Err(Error::Internal(format!("row {k} has slack but no column does")));
                }
                let slack = row_slack[k].min(col_slack[k]);
                let (a, b, have) = added
                    .cells()
                    .filter(|&(a, b, v)| a != k && b != k && a != b && v > tol)
                    .max_by(|x, y| x.2.partial_cmp(&y.2).unwrap())
                    .ok_or_else(|| {
                        Error::AugmentationFailed(format!(
                            "remaining slack {slack} of node {k} can only go on the diagonal"
                        ))
                    })?;
                let delta = slack.min(have);
                out[(a, b)] = out[(a, b)] - delta;
                added[(a, b)] = added[(a, b)] - delta;
                out[(k, b)] = out[(k, b)] + delta;
                added[(k, b)] = added[(k, b)] + delta;
                out[(a, k)] = out[(a, k)] + delta;
                added[(a, k)] = added[(a, k)] + delta;
                row_slack[k] = row_slack[k] - delta;
                col_slack[k] = col_slack[k] - delta;
            }
        }
    }
    if row_slack.iter().chain(&col_slack).any(|&s| s > tol) {
        return Err(Error::AugmentationFailed("fill did not converge".into()));
    }
    Ok(DemandMatrix { inner: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dm(rows: Vec<Vec<f64>>) -> DemandMatrix<f64> {
        DemandMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rejects_self_demand_and_negatives() {
        assert!(DemandMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]).is_err());
        assert!(DemandMatrix::from_rows(vec![vec![0.0, -1.0], vec![0.0, 0.0]]).is_err());
        assert!(DemandMatrix::from_rows(vec![vec![0.0, f64::NAN], vec![0.0, 0.0]]).is_err());
    }

    #[test]
    fn hose_boundary_is_valid() {
        let p = NetworkParams::new(2, 1, 1.0).unwrap();
        let r = validate_hose(&dm(vec![vec![0.0, 1.0], vec![1.0, 0.0]]), &p).unwrap();
        assert!(r.is_valid());
    }

    #[test]
    fn hose_reports_violated_row() {
        let p = NetworkParams::new(2, 1, 1.0).unwrap();
        let r = validate_hose(&dm(vec![vec![0.0, 1.5], vec![1.0, 0.0]]), &p).unwrap();
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.violations[0].axis, Axis::Row);
        assert_eq!(r.violations[0].index, 0);
        assert_eq!(r.violations[0].sum, 1.5);
        // column 1 also carries 1.5
        assert_eq!(r.violations[1].axis, Axis::Column);
        assert_eq!(r.violations[1].index, 1);
    }

    #[test]
    fn hose_dimension_mismatch() {
        let p = NetworkParams::new(3, 1, 1.0).unwrap();
        assert!(matches!(
            validate_hose(&DemandMatrix::<f64>::zeros(2), &p),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn normalize_divides() {
        let m = dm(vec![vec![0.0, 25e9], vec![25e9, 0.0]]);
        let n = normalize(&m, 25e9).unwrap();
        assert_eq!(n.to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(normalize(&m, 1.0).unwrap(), m);
        assert!(normalize(&m, 0.0).is_err());
        assert!(normalize(&m, -1.0).is_err());
    }

    #[test]
    fn saturate_noop_when_full() {
        let m = dm(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(saturate(&m, 1.0).unwrap(), m);
    }

    #[test]
    fn saturate_two_by_two() {
        let m = dm(vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
        let s = saturate(&m, 1.0).unwrap();
        assert_eq!(s.to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn saturate_rejects_overfull_rows() {
        let m = dm(vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
        assert!(matches!(
            saturate(&m, 1.0),
            Err(Error::InfeasibleAugmentation {
                axis: Axis::Row,
                index: 0,
                ..
            })
        ));
    }

    #[test]
    fn saturate_diagonal_only_slack_fails() {
        // node 0 needs both in and out mass, but every other row/column is full
        let m = dm(vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]);
        assert!(matches!(saturate(&m, 1.0), Err(Error::AugmentationFailed(_))));
    }

    #[test]
    fn saturate_reroutes_through_added_mass() {
        // Greedy first fills (0,1) and (1,0)... leaving node 2's slack on the diagonal.
        let m = dm(vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0]]);
        let s = saturate(&m, 1.0).unwrap();
        for (i, j, v) in s.cells() {
            if i == j {
                assert_eq!(v, 0.0);
            }
        }
        for sum in s.row_sums().into_iter().chain(s.col_sums()) {
            assert!((sum - 1.0).abs() < 1e-9, "{sum}");
        }
    }

    #[test]
    fn saturate_random_six() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let raw = SquareMatrix::from_fn(6, |i, j| if i == j { 0.0 } else { rng.gen::<f64>() });
            let peak = raw.row_sums().into_iter().chain(raw.col_sums()).fold(0.0, f64::max);
            let m = DemandMatrix::new(raw.scaled(0.8 / peak)).unwrap();
            let s = saturate(&m, 1.0).unwrap();
            for (i, j, v) in s.cells() {
                assert!(v >= m[(i, j)]);
                if i == j {
                    assert_eq!(v, 0.0);
                }
            }
            for sum in s.row_sums().into_iter().chain(s.col_sums()) {
                assert!((sum - 1.0).abs() < 1e-9);
            }
        }
    }
}
