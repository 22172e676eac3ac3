//! Cross-product sweeps over matrices, classes and degrees.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{derive_seed, evaluate_class, EvalContext, HeuristicTrace, LabeledMatrix, DEFAULT_STEP};
use crate::error::{Error, Result};
use crate::params::NetworkParams;
use crate::topology::NetworkClass;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub classes: Vec<NetworkClass>,
    pub seed: u64,
    pub step: f64,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
    /// Keep heuristic traces in the rows.
    pub keep_traces: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            classes: NetworkClass::EVALUATED.to_vec(),
            seed: 0,
            step: DEFAULT_STEP,
            jobs: 0,
            keep_traces: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub matrix: String,
    pub class: NetworkClass,
    pub degree: usize,
    /// `None` when the cell failed; see `error`.
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub lp_solves: usize,
    pub verification_violations: usize,
    pub schedules_checked: usize,
    pub schedule_mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<HeuristicTrace>,
}

/// Minimum θ of one class at one degree and the matrix attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCase {
    pub class: NetworkClass,
    pub degree: usize,
    pub theta: f64,
    pub matrix: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub worst_case: Vec<WorstCase>,
}

impl SweepResult {
    fn from_rows(rows: Vec<SweepRow>) -> Self {
        let mut worst_case: Vec<WorstCase> = Vec::new();
        for row in &rows {
            let Some(theta) = row.theta else { continue };
            match worst_case
                .iter_mut()
                .find(|w| w.class == row.class && w.degree == row.degree)
            {
                Some(w) if theta < w.theta => {
                    w.theta = theta;
                    w.matrix = row.matrix.clone();
                }
                Some(_) => {}
                None => worst_case.push(WorstCase {
                    class: row.class,
                    degree: row.degree,
                    theta,
                    matrix: row.matrix.clone(),
                }),
            }
        }
        SweepResult { rows, worst_case }
    }

    pub fn theta(&self, matrix: &str, class: NetworkClass, degree: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.matrix == matrix && r.class == class && r.degree == degree)
            .and_then(|r| r.theta)
    }

    pub fn worst(&self, class: NetworkClass, degree: usize) -> Option<&WorstCase> {
        self.worst_case.iter().find(|w| w.class == class && w.degree == degree)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.rows.iter().map(|r| r.degree).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Matrix labels in sweep order.
    pub fn matrices(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.matrix) {
                out.push(r.matrix.clone());
            }
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.error.is_some())
    }

    /// CSV with header `matrix,class,degree,theta`; failed cells have an empty theta.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let csv_err = |e: csv::Error| Error::Internal(format!("writing sweep CSV: {e}"));
        out.write_record(["matrix", "class", "degree", "theta"])
            .map_err(csv_err)?;
        for r in &self.rows {
            let theta = r.theta.map(|t| t.to_string()).unwrap_or_default();
            out.write_record([r.matrix.as_str(), r.class.as_str(), &r.degree.to_string(), &theta])
                .map_err(csv_err)?;
        }
        out.flush()
            .map_err(|e| Error::Internal(format!("writing sweep CSV: {e}")))?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Seed of the cell `(matrix, class, degree)`.
///
/// Both demand-aware classes share the seed of their matrix and degree, so
/// at `u = n` they start from the same residual graphs.
pub fn cell_seed(master: u64, matrix: &str, class: NetworkClass, degree: usize) -> u64 {
    let family = match class {
        NetworkClass::DaStatic | NetworkClass::DaPeriodic => "demand-aware",
        other => other.as_str(),
    };
    derive_seed(master, &format!("{matrix}/{family}/{degree}"))
}

fn run_cells(
    cells: Vec<(NetworkParams, &LabeledMatrix, NetworkClass)>,
    cfg: &SweepConfig,
    ctx: &EvalContext<'_>,
) -> Result<Vec<SweepRow>> {
    let eval = |&(p, lm, class): &(NetworkParams, &LabeledMatrix, NetworkClass)| {
        let seed = cell_seed(cfg.seed, &lm.label, class, p.u);
        let mut row = SweepRow {
            matrix: lm.label.clone(),
            class,
            degree: p.u,
            theta: None,
            error: None,
            lp_solves: 0,
            verification_violations: 0,
            schedules_checked: 0,
            schedule_mismatches: 0,
            trace: None,
        };
        match evaluate_class(class, &lm.matrix, &p, cfg.step, seed, ctx) {
            Ok(e) => {
                row.theta = Some(e.theta);
                row.lp_solves = e.lp_solves;
                row.verification_violations = e.verification_violations;
                row.schedules_checked = e.schedules_checked;
                row.schedule_mismatches = e.schedule_mismatches;
                if cfg.keep_traces {
                    row.trace = e.trace;
                }
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        row
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    // par_iter().map().collect() keeps input order.
    Ok(pool.install(|| cells.par_iter().map(eval).collect()))
}

/// Every class on every suite matrix at one degree.
pub fn sweep_matrices(
    p: &NetworkParams,
    suite: &[LabeledMatrix],
    cfg: &SweepConfig,
    ctx: &EvalContext<'_>,
) -> Result<SweepResult> {
    p.validate()?;
    let cells = suite
        .iter()
        .flat_map(|lm| cfg.classes.iter().map(move |&c| (*p, lm, c)))
        .collect();
    Ok(SweepResult::from_rows(run_cells(cells, cfg, ctx)?))
}

/// [`sweep_matrices`] at each degree in `degrees`, with the suite rebuilt per
/// degree by `suite_for`.
pub fn sweep_degree(
    p_base: &NetworkParams,
    degrees: &[usize],
    suite_for: &dyn Fn(&NetworkParams) -> Result<Vec<LabeledMatrix>>,
    cfg: &SweepConfig,
    ctx: &EvalContext<'_>,
) -> Result<SweepResult> {
    let mut suites = Vec::with_capacity(degrees.len());
    for &u in degrees {
        let p = NetworkParams::new(p_base.n, u, p_base.c)?;
        suites.push((p, suite_for(&p)?));
    }
    let cells = suites
        .iter()
        .flat_map(|(p, suite)| {
            suite
                .iter()
                .flat_map(move |lm| cfg.classes.iter().map(move |&c| (*p, lm, c)))
        })
        .collect();
    Ok(SweepResult::from_rows(run_cells(cells, cfg, ctx)?))
}
