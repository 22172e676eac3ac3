//! The evaluation suite of demand matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{generate, DemandMatrix, GenParams, MatrixKind, SquareMatrix};
use crate::params::NetworkParams;

pub const SUITE_SIZE: usize = 16;

/// Permutation weights of the uniform/permutation mixes in the suite.
pub const MIX_ALPHAS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Clone, Serialize)]
pub struct LabeledMatrix {
    pub label: String,
    /// Raw rates in bits/s.
    pub matrix: DemandMatrix<f64>,
}

impl LabeledMatrix {
    pub fn new(label: impl Into<String>, matrix: DemandMatrix<f64>) -> Self {
        LabeledMatrix {
            label: label.into(),
            matrix,
        }
    }
}

/// Sixteen hose-feasible matrices for `p`: chessboard, uniform, permutation,
/// the nine mixes `U+P α`, and four training-traffic shapes (see [`workload`]).
pub fn build_suite(p: &NetworkParams) -> Result<Vec<LabeledMatrix>> {
    let gp = GenParams::default();
    let mut suite = vec![
        LabeledMatrix::new("chessboard", generate(MatrixKind::Chessboard, p, &gp)?),
        LabeledMatrix::new("uniform", generate(MatrixKind::Uniform, p, &gp)?),
        LabeledMatrix::new("permutation", generate(MatrixKind::Permutation, p, &gp)?),
    ];
    for alpha in MIX_ALPHAS {
        let gp = GenParams { alpha, ..gp };
        suite.push(LabeledMatrix::new(
            format!("mix-{alpha:.1}"),
            generate(MatrixKind::Mix, p, &gp)?,
        ));
    }
    for label in WORKLOADS {
        suite.push(LabeledMatrix::new(label, workload(label, p)?));
    }
    debug_assert_eq!(suite.len(), SUITE_SIZE);
    Ok(suite)
}

/// Labels accepted by [`workload`].
pub const WORKLOADS: [&str; 4] = ["ring", "hybrid", "skewed-3", "skewed-7"];

/// Saturated stand-ins for distributed-training traffic, in bits/s.
///
/// - `ring`: ring all-reduce, half the rate to each ring neighbour.
/// - `hybrid`: all-to-all inside groups of four (three or two when 4 does not
///   divide `n`) plus a pipeline shift to the next group, half each.
/// - `skewed-k`: all-to-all whose rates decay as `1/(1+o)` with the offset `o` from the `+k` neighbour.
pub fn workload(label: &str, p: &NetworkParams) -> Result<DemandMatrix<f64>> {
    p.validate()?;
    let n = p.n;
    let u = p.u as f64;
    let shift = |i: usize, k: usize, j: usize| (i + k) % n == j;
    let m = match label {
        "ring" if n >= 3 => {
            SquareMatrix::from_fn(n, |i, j| if shift(i, 1, j) || shift(j, 1, i) { u / 2.0 } else { 0.0 })
        }
        "hybrid" if hybrid_group(n).is_some() => {
            let g = hybrid_group(n).unwrap_or(2);
            let local = u / (2.0 * (g - 1) as f64);
            SquareMatrix::from_fn(n, |i, j| {
                let v = if i != j && i / g == j / g { local } else { 0.0 };
                if shift(i, g, j) {
                    v + u / 2.0
                } else {
                    v
                }
            })
        }
        "skewed-3" | "skewed-7" if n >= 3 => {
            let k = if label == "skewed-3" { 3 } else { 7 };
            let weight = |i: usize, j: usize| {
                if i == j {
                    0.0
                } else {
                    1.0 / (1.0 + ((j + 2 * n - i - k % n) % n) as f64)
                }
            };
            // Circulant, so every row and column has the same sum.
            let row: f64 = (1..n).map(|j| weight(0, j)).sum();
            SquareMatrix::from_fn(n, |i, j| weight(i, j) * u / row)
        }
        _ => {
            return Err(Error::invalid(format!(
                "no workload '{label}' for n = {n} (known: {})",
                WORKLOADS.join(", ")
            )))
        }
    };
    Ok(DemandMatrix::new(m)?.scaled(p.c))
}

fn hybrid_group(n: usize) -> Option<usize> {
    [4, 3, 2].into_iter().find(|&g| n.is_multiple_of(g) && n > g)
}
