use serde::Serialize;

use super::matching::{perfect_matching, PermutationMatching};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

pub const DEFAULT_BVN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BvnTerm<T> {
    pub coefficient: T,
    pub matching: PermutationMatching,
}

/// `m = Σ λ_i · P_i` with positive coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BvnDecomposition<T> {
    pub terms: Vec<BvnTerm<T>>,
}

impl<T: Scalar> BvnDecomposition<T> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_sum(&self) -> T {
        self.terms.iter().map(|t| t.coefficient).sum()
    }

    pub fn reconstruct(&self, n: usize) -> SquareMatrix<T> {
        let mut m = SquareMatrix::zeros(n);
        for t in &self.terms {
            for (i, j) in t.matching.edges() {
                m[(i, j)] = m[(i, j)] + t.coefficient;
            }
        }
        m
    }
}

/// Birkhoff–von Neumann decomposition of a matrix with equal row and column sums.
///
/// Repeatedly matches on the support of entries above `tol`, peels off the
/// smallest matched entry, and stops once the residual mass drops below `n·tol`.
pub fn bvn_decompose<T: Scalar>(m: &SquareMatrix<T>, tol: T) -> Result<BvnDecomposition<T>> {
    let n = m.n();
    if !(tol > T::zero()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    if let Some((i, j, v)) = m.cells().find(|&(_, _, v)| !(v >= T::zero()) || !v.is_finite()) {
        return Err(Error::invalid(format!("entry ({i},{j}) = {v} must be nonnegative")));
    }
    let rows = m.row_sums();
    let cols = m.col_sums();
    let target = rows.first().copied().unwrap_or_else(T::zero);
    let slack = tol * target.max(T::one());
    if let Some(s) = rows.iter().chain(&cols).find(|&&s| (s - target).abs() > slack) {
        return Err(Error::invalid(format!(
            "row/column sums differ ({s} vs {target}): matrix is not doubly stochastic"
        )));
    }

    let mut residual = m.clone();
    let mut terms = Vec::new();
    let stop = tol * T::from_usize_lossy(n);
    let max_terms = n * n;
    loop {
        let mass = residual.total();
        if mass < stop {
            break;
        }
        if terms.len() >= max_terms {
            return Err(Error::DecompositionFailed(format!(
                "exceeded {max_terms} terms with residual mass {mass}"
            )));
        }
        let support = residual.map(|v| v > tol);
        let matching = perfect_matching(&support).ok_or_else(|| {
            Error::DecompositionFailed(format!("no perfect matching on the support with residual mass {mass}"))
        })?;
        let (lambda, argmin) = matching
            .edges()
            .map(|(i, j)| (residual.get(i, j), (i, j)))
            .fold((T::infinity(), (0, 0)), |acc, x| if x.0 < acc.0 { x } else { acc });
        for (i, j) in matching.edges() {
            residual[(i, j)] = (residual[(i, j)] - lambda).max(T::zero());
        }
        residual[argmin] = T::zero();
        terms.push(BvnTerm {
            coefficient: lambda,
            matching,
        });
    }
    Ok(BvnDecomposition { terms })
}
