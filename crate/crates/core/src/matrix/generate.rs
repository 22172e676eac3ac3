use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{saturate, DemandMatrix, SquareMatrix};
use crate::error::{Error, Result};
use crate::params::NetworkParams;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    Uniform,
    Permutation,
    Chessboard,
    Mix,
    RandomSaturated,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Uniform => "uniform",
            MatrixKind::Permutation => "permutation",
            MatrixKind::Chessboard => "chessboard",
            MatrixKind::Mix => "mix",
            MatrixKind::RandomSaturated => "random-saturated",
        }
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "uniform" => MatrixKind::Uniform,
            "permutation" => MatrixKind::Permutation,
            "chessboard" => MatrixKind::Chessboard,
            "mix" => MatrixKind::Mix,
            "random-saturated" | "random" => MatrixKind::RandomSaturated,
            other => return Err(Error::invalid(format!("unknown matrix kind {other:?}"))),
        })
    }
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Permutation weight for [`MatrixKind::Mix`].
    pub alpha: f64,
    /// Destination offset of the permutation: `i → i + shift (mod n)`.
    pub shift: i64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            alpha: 0.5,
            shift: 1,
            seed: 0,
        }
    }
}

/// The alternating 0.5/1.5 pattern, diagonal included (`(i+j)` even → 0.5).
///
/// Every row and column sums to `n` when `n` is even.
pub fn chessboard_pattern<T: Scalar>(n: usize) -> SquareMatrix<T> {
    SquareMatrix::from_fn(n, |i, j| if (i + j) % 2 == 0 { T::lit(0.5) } else { T::lit(1.5) })
}

/// Builds a hose-feasible demand matrix in bits/s.
///
/// Every kind fills the node capacity `c·u` except the uniform part, whose
/// entries `c·u/n` leave the diagonal share unused.
pub fn generate<T: Scalar>(kind: MatrixKind, p: &NetworkParams, gp: &GenParams) -> Result<DemandMatrix<T>> {
    p.validate()?;
    let n = p.n;
    let u = T::from_usize_lossy(p.u);
    let c = T::lit(p.c);
    // Everything is built normalized by c (row sums u) and rescaled at the end.
    let normalized = match kind {
        MatrixKind::Uniform => uniform(n, u),
        MatrixKind::Permutation => permutation(n, u, gp.shift)?,
        MatrixKind::Chessboard => {
            if !n.is_multiple_of(2) {
                return Err(Error::invalid(format!(
                    "n must be even for a chessboard matrix, got {n}"
                )));
            }
            let scale = u / T::from_usize_lossy(n);
            let mut m = chessboard_pattern::<T>(n).scaled(scale);
            for i in 0..n {
                m.set(i, i, T::zero());
            }
            saturate(&DemandMatrix::new(m)?, u)?
        }
        MatrixKind::Mix => {
            if !(0.0..=1.0).contains(&gp.alpha) {
                return Err(Error::invalid(format!("alpha must be in [0,1], got {}", gp.alpha)));
            }
            let perm = permutation(n, u, gp.shift)?;
            perm.blend(&uniform(n, u), T::lit(gp.alpha))
        }
        MatrixKind::RandomSaturated => {
            let mut rng = ChaCha8Rng::seed_from_u64(gp.seed);
            let raw = SquareMatrix::from_fn(n, |i, j| if i == j { T::zero() } else { T::lit(rng.gen::<f64>()) });
            let peak = raw.row_sums().into_iter().chain(raw.col_sums()).fold(T::zero(), T::max);
            let m = if peak > T::zero() { raw.scaled(u / peak) } else { raw };
            saturate(&DemandMatrix::new(m)?, u)?
        }
    };
    Ok(normalized.scaled(c))
}

fn uniform<T: Scalar>(n: usize, u: T) -> DemandMatrix<T> {
    let v = u / T::from_usize_lossy(n);
    DemandMatrix {
        inner: SquareMatrix::from_fn(n, |i, j| if i == j { T::zero() } else { v }),
    }
}

fn permutation<T: Scalar>(n: usize, u: T, shift: i64) -> Result<DemandMatrix<T>> {
    let s = shift.rem_euclid(n as i64) as usize;
    if s == 0 {
        return Err(Error::invalid(format!(
            "permutation shift {shift} is 0 mod {n}, which would be self-demand"
        )));
    }
    Ok(DemandMatrix {
        inner: SquareMatrix::from_fn(n, |i, j| if j == (i + s) % n { u } else { T::zero() }),
    })
}
