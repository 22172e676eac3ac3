//! Throughput of reconfigurable datacenter networks.
//!
//! Demand matrices under the hose model, integer/residual and
//! Birkhoff–von Neumann decompositions, topology builders for static,
//! demand-oblivious and demand-aware networks, and an LP that computes the
//! maximum concurrent flow θ of a matrix on a topology.
//!
//! Matrix and decomposition code is generic over [`Scalar`] (`f32`/`f64`);
//! the flow layer computes in `f64`.

pub mod decomposition;
pub mod error;
pub mod flow;
pub mod matrix;
pub mod params;
pub mod scalar;
pub mod throughput;
pub mod topology;

pub use error::{Axis, Error, Result};
pub use params::NetworkParams;
pub use scalar::Scalar;

pub type DemandMatrixF64 = matrix::DemandMatrix<f64>;
pub type DemandMatrixF32 = matrix::DemandMatrix<f32>;
pub type SquareMatrixF64 = matrix::SquareMatrix<f64>;
pub type SquareMatrixF32 = matrix::SquareMatrix<f32>;
pub type BvnDecompositionF64 = decomposition::BvnDecomposition<f64>;
pub type BvnDecompositionF32 = decomposition::BvnDecomposition<f32>;
pub type IntegerResidualDecompositionF64 = matrix::IntegerResidualDecomposition<f64>;
pub type IntegerResidualDecompositionF32 = matrix::IntegerResidualDecomposition<f32>;
