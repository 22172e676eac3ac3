//! Maximum concurrent flow on a topology.
//!
//! Demands are in units of one link of the topology; `θ` is the largest
//! factor such that `θ·m` can be routed within link capacities.

mod backend;
mod decompose;
mod export;
mod model;
mod verify;

use serde::{Deserialize, Serialize};

#[cfg(feature = "highs")]
pub use backend::HighsBackend;
pub use backend::{backend_by_name, default_backend, LpBackend, LpSolution, SolverStatus, BACKENDS};
pub use export::write_lp;
pub use model::{build_lp, Column, Constraint, Formulation, LinearProgram, Row, Var};
pub use verify::{verify_solution, VerificationReport, Violation, ViolationKind, DEFAULT_VERIFY_EPS};

use crate::error::{Error, Result};
use crate::matrix::{normalize, DemandMatrix, SquareMatrix};
use crate::scalar::Scalar;
use crate::topology::Topology;

/// Default optimality / feasibility tolerance handed to the LP backend.
pub const DEFAULT_LP_TOL: f64 = 1e-7;

/// Flow of commodity `(s, d)` on arc `(i, j)`, in link units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowEntry {
    pub s: usize,
    pub d: usize,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

impl FlowEntry {
    pub fn name(&self) -> String {
        format!("f_{}_{}_{}_{}", self.s, self.d, self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThroughputResult {
    pub theta: f64,
    /// Nonzero per-pair flows sorted by `(s, d, i, j)`.
    pub flows: Vec<FlowEntry>,
    pub solver_status: SolverStatus,
}

impl ThroughputResult {
    pub fn flow(&self, s: usize, d: usize, i: usize, j: usize) -> f64 {
        self.flows
            .binary_search_by(|e| (e.s, e.d, e.i, e.j).cmp(&(s, d, i, j)))
            .map(|k| self.flows[k].value)
            .unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub formulation: Formulation,
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            formulation: Formulation::default(),
            tol: DEFAULT_LP_TOL,
        }
    }
}

/// Solves the throughput LP for `t` and a demand matrix in link units.
pub fn solve_max_throughput<T: Scalar>(
    t: &Topology,
    m: &DemandMatrix<T>,
    opts: &SolveOptions,
    backend: &dyn LpBackend,
) -> Result<ThroughputResult> {
    let n = t.n();
    if m.n() != n {
        return Err(Error::invalid(format!(
            "topology has {n} nodes, demand matrix has {}",
            m.n()
        )));
    }
    let demand: Vec<Vec<f64>> = m.rows().map(|r| r.iter().map(|v| v.to_f64_lossy()).collect()).collect();
    if demand.iter().flatten().all(|&v| v <= 0.0) {
        return Err(Error::invalid("demand matrix is all zero; throughput is unbounded"));
    }
    let lp = build_lp(t, &demand, opts.formulation);
    let sol = backend.solve(&lp)?;
    if sol.status != SolverStatus::Optimal {
        return Err(Error::Solver {
            status: sol.status.to_string(),
            detail: sol.detail,
        });
    }
    let theta = sol.values[lp.theta_column()];
    if !theta.is_finite() {
        return Err(Error::Internal(format!("LP returned θ = {theta}")));
    }

    let mut flows = Vec::new();
    match opts.formulation {
        Formulation::PerPair => {
            for (col, &v) in lp.columns.iter().zip(&sol.values) {
                if let Var::PairFlow { s, d, i, j } = col.var {
                    if v > 0.0 {
                        flows.push(FlowEntry { s, d, i, j, value: v });
                    }
                }
            }
        }
        Formulation::PerSource => {
            let mut per_source: Vec<Option<SquareMatrix<f64>>> = vec![None; n];
            for (col, &v) in lp.columns.iter().zip(&sol.values) {
                if let Var::SourceFlow { s, i, j } = col.var {
                    if v > 0.0 {
                        per_source[s].get_or_insert_with(|| SquareMatrix::zeros(n))[(i, j)] += v;
                    }
                }
            }
            for (s, agg) in per_source.into_iter().enumerate() {
                let Some(agg) = agg else { continue };
                let absorb: Vec<f64> = (0..n)
                    .map(|d| if d == s { 0.0 } else { theta * demand[s][d] })
                    .collect();
                for (d, i, j, value) in decompose::split_source_flow(s, &agg, &absorb) {
                    flows.push(FlowEntry { s, d, i, j, value });
                }
            }
        }
    }
    flows.sort_by_key(|a| (a.s, a.d, a.i, a.j));
    Ok(ThroughputResult {
        theta,
        flows,
        solver_status: sol.status,
    })
}

/// Normalizes a raw demand matrix by the topology's link capacity and solves.
pub fn solve_raw<T: Scalar>(
    t: &Topology,
    m: &DemandMatrix<T>,
    opts: &SolveOptions,
    backend: &dyn LpBackend,
) -> Result<(DemandMatrix<T>, ThroughputResult)> {
    let normalized = normalize(m, T::lit(t.link_capacity()))?;
    let r = solve_max_throughput(t, &normalized, opts, backend)?;
    Ok((normalized, r))
}
