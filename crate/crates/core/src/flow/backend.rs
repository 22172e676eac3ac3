use serde::{Deserialize, Serialize};

use super::model::LinearProgram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverStatus {
    Optimal,
    Infeasible,
    NumericalTrouble,
}

impl std::fmt::Display for SolverStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverStatus::Optimal => "optimal",
            SolverStatus::Infeasible => "infeasible",
            SolverStatus::NumericalTrouble => "numerical-trouble",
        })
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: SolverStatus,
    pub objective: f64,
    /// Column values, indexed like `LinearProgram::columns`.
    pub values: Vec<f64>,
    pub detail: String,
}

/// An LP solver. Each call must be independent so that one backend value
/// can serve many threads.
pub trait LpBackend: Send + Sync {
    fn name(&self) -> &'static str;

    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution>;
}

/// Names accepted by [`backend_by_name`].
pub const BACKENDS: &[&str] = &["highs"];

pub fn backend_by_name(name: &str, tolerance: f64) -> Result<Box<dyn LpBackend>> {
    match name {
        #[cfg(feature = "highs")]
        "highs" => Ok(Box::new(HighsBackend::new(tolerance))),
        #[cfg(not(feature = "highs"))]
        "highs" => {
            let _ = tolerance;
            Err(Error::NoBackend(
                "this build has no HiGHS support; rebuild with `--features highs` (needs cmake and a C++ compiler)"
                    .into(),
            ))
        }
        other => Err(Error::NoBackend(format!(
            "unknown LP backend {other:?}; available: {}",
            BACKENDS.join(", ")
        ))),
    }
}

pub fn default_backend(tolerance: f64) -> Result<Box<dyn LpBackend>> {
    backend_by_name("highs", tolerance)
}

#[cfg(feature = "highs")]
pub use self::highs_backend::HighsBackend;

#[cfg(feature = "highs")]
mod highs_backend {
    use highs::{HighsModelStatus, RowProblem, Sense};

    use super::*;

    /// Dual simplex from HiGHS, single-threaded per solve.
    #[derive(Debug, Clone)]
    pub struct HighsBackend {
        tolerance: f64,
    }

    impl HighsBackend {
        pub fn new(tolerance: f64) -> Self {
            HighsBackend { tolerance }
        }
    }

    impl LpBackend for HighsBackend {
        fn name(&self) -> &'static str {
            "highs"
        }

        fn solve(&self, lp: &LinearProgram) -> Result<LpSolution> {
            let mut pb = RowProblem::default();
            let cols: Vec<highs::Col> = lp
                .columns
                .iter()
                .map(|c| pb.add_column(c.cost, c.lower..=c.upper))
                .collect();
            for row in &lp.rows {
                let factors = row.coeffs.iter().map(|&(k, v)| (cols[k], v));
                pb.add_row(row.lower..=row.upper, factors);
            }
            let mut model = pb.optimise(Sense::Maximise);
            model.make_quiet();
            model.set_option("threads", 1);
            model.set_option("primal_feasibility_tolerance", self.tolerance);
            model.set_option("dual_feasibility_tolerance", self.tolerance);
            let solved = model.try_solve().map_err(|e| Error::Solver {
                status: SolverStatus::NumericalTrouble.to_string(),
                detail: format!("HiGHS run failed: {e:?}"),
            })?;
            let raw = solved.status();
            let status = match raw {
                HighsModelStatus::Optimal => SolverStatus::Optimal,
                HighsModelStatus::Infeasible => SolverStatus::Infeasible,
                _ => SolverStatus::NumericalTrouble,
            };
            let values = if status == SolverStatus::Optimal {
                solved.get_solution().columns().to_vec()
            } else {
                Vec::new()
            };
            Ok(LpSolution {
                status,
                objective: solved.objective_value(),
                values,
                detail: format!(
                    "HiGHS model status {raw:?}, {} simplex iterations",
                    solved.simplex_iteration_count()
                ),
            })
        }
    }
}
