//! Per-class throughput evaluation, the demand-aware scan heuristic, and
//! suite sweeps.

pub mod checks;
mod seed;
mod suite;
mod sweep;

use serde::{Deserialize, Serialize};

pub use seed::{derive_seed, iteration_seed};
pub use suite::{build_suite, workload, LabeledMatrix, SUITE_SIZE, WORKLOADS};
pub use sweep::{cell_seed, sweep_degree, sweep_matrices, SweepConfig, SweepResult, SweepRow, WorstCase};

use crate::error::{Error, Result};
use crate::flow::{solve_raw, verify_solution, LpBackend, SolveOptions, ThroughputResult, DEFAULT_VERIFY_EPS};
use crate::matrix::DemandMatrix;
use crate::params::NetworkParams;
use crate::scalar::Scalar;
use crate::topology::{
    build_demand_aware_periodic, build_demand_aware_static, build_oblivious_equivalent, build_static_expander,
    NetworkClass, PeriodicSchedule, ScheduleTiming, Topology,
};

/// Default scan step of the demand-aware heuristic.
pub const DEFAULT_STEP: f64 = 0.01;

/// LP objective at or above which a scaled matrix counts as fully served.
pub const SUCCESS_THRESHOLD: f64 = 1.0 - 1e-9;

/// Solver and verification settings shared by all evaluations of a run.
#[derive(Clone, Copy)]
pub struct EvalContext<'a> {
    pub backend: &'a dyn LpBackend,
    pub solve: SolveOptions,
    pub verify_eps: f64,
}

impl<'a> EvalContext<'a> {
    pub fn new(backend: &'a dyn LpBackend) -> Self {
        EvalContext {
            backend,
            solve: SolveOptions::default(),
            verify_eps: DEFAULT_VERIFY_EPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DemandAwareMode {
    Static,
    Periodic,
}

/// Record of one run of the scan heuristic.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HeuristicTrace {
    /// Scalings tried, descending from 1.
    pub iter_values: Vec<f64>,
    /// LP objective at each tried scaling.
    pub objectives: Vec<f64>,
    pub chosen_theta: f64,
    pub step: f64,
    pub schedules_checked: usize,
    pub schedule_mismatches: usize,
    pub verification_violations: usize,
}

/// Throughput of one (matrix, class) cell with its diagnostics.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub theta: f64,
    /// Topology of the final LP solve.
    pub topology: Topology,
    /// Schedule emulating `topology`, for the periodic class.
    pub schedule: Option<PeriodicSchedule>,
    pub trace: Option<HeuristicTrace>,
    pub lp_solves: usize,
    /// Verification violations summed over every LP solve of the cell.
    pub verification_violations: usize,
    pub schedules_checked: usize,
    pub schedule_mismatches: usize,
}

fn solve_checked<T: Scalar>(
    t: &Topology,
    m: &DemandMatrix<T>,
    ctx: &EvalContext<'_>,
) -> Result<(ThroughputResult, usize)> {
    let (normalized, r) = solve_raw(t, m, &ctx.solve, ctx.backend)?;
    let report = verify_solution(t, &normalized, &r, ctx.verify_eps);
    Ok((r, report.violations.len()))
}

/// Throughput of raw matrix `m` on a fixed topology, unclamped.
pub fn throughput_static<T: Scalar>(t: &Topology, m: &DemandMatrix<T>, ctx: &EvalContext<'_>) -> Result<Evaluation> {
    let (r, violations) = solve_checked(t, m, ctx)?;
    Ok(Evaluation {
        theta: r.theta,
        topology: t.clone(),
        schedule: None,
        trace: None,
        lp_solves: 1,
        verification_violations: violations,
        schedules_checked: 0,
        schedule_mismatches: 0,
    })
}

/// Throughput on the complete-graph equivalent of a demand-oblivious network.
pub fn throughput_oblivious<T: Scalar>(
    m: &DemandMatrix<T>,
    p: &NetworkParams,
    ctx: &EvalContext<'_>,
) -> Result<Evaluation> {
    let t = build_oblivious_equivalent(p)?;
    throughput_static(&t, m, ctx)
}

/// Scan heuristic: for `iter = 1, 1−step, …` build a demand-aware topology
/// for `iter·m` and return the first `iter` whose LP objective reaches 1.
///
/// Iteration `k` builds with `iteration_seed(seed, k)`. Returns θ = 0 with
/// the full trace when no scaling succeeds.
pub fn throughput_demand_aware<T: Scalar>(
    m: &DemandMatrix<T>,
    p: &NetworkParams,
    mode: DemandAwareMode,
    step: f64,
    seed: u64,
    ctx: &EvalContext<'_>,
) -> Result<Evaluation> {
    if !(step > 0.0 && step < 1.0) {
        return Err(Error::invalid(format!("scan step must lie in (0, 1), got {step}")));
    }
    let report = crate::matrix::validate_hose(m, p)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::invalid(format!(
            "matrix is not hose-feasible: {} {} sums to {:e}, limit {:e}",
            v.axis, v.index, v.sum, v.limit
        )));
    }
    let mut trace = HeuristicTrace {
        step,
        ..HeuristicTrace::default()
    };
    let mut lp_solves = 0;
    let mut last = None;
    let steps = (1.0 / step + 1e-9).floor() as usize;
    for k in 0..steps {
        // Rounded to shed accumulated error in `k·step`.
        let iter = ((1.0 - k as f64 * step) * 1e12).round() / 1e12;
        if iter <= 0.0 {
            break;
        }
        let scaled = m.scaled(T::lit(iter));
        let iseed = iteration_seed(seed, k);
        let (topology, schedule) = match mode {
            DemandAwareMode::Static => (build_demand_aware_static(&scaled, p, iseed)?, None),
            DemandAwareMode::Periodic => {
                let (t, s) = build_demand_aware_periodic(&scaled, p, iseed, ScheduleTiming::default())?;
                trace.schedules_checked += 1;
                if !s.emulates(&t) {
                    trace.schedule_mismatches += 1;
                }
                (t, Some(s))
            }
        };
        let (r, violations) = solve_checked(&topology, &scaled, ctx)?;
        lp_solves += 1;
        trace.verification_violations += violations;
        trace.iter_values.push(iter);
        trace.objectives.push(r.theta);
        let done = r.theta >= SUCCESS_THRESHOLD;
        last = Some((topology, schedule));
        if done {
            trace.chosen_theta = iter;
            break;
        }
    }
    let (topology, schedule) = last.ok_or_else(|| Error::Internal("scan performed no iteration".into()))?;
    Ok(Evaluation {
        theta: trace.chosen_theta,
        topology,
        schedule,
        lp_solves,
        verification_violations: trace.verification_violations,
        schedules_checked: trace.schedules_checked,
        schedule_mismatches: trace.schedule_mismatches,
        trace: Some(trace),
    })
}

/// Evaluates one network class on raw matrix `m`.
///
/// `seed` drives the random expander (static) and the residual graphs of
/// both demand-aware classes.
pub fn evaluate_class<T: Scalar>(
    class: NetworkClass,
    m: &DemandMatrix<T>,
    p: &NetworkParams,
    step: f64,
    seed: u64,
    ctx: &EvalContext<'_>,
) -> Result<Evaluation> {
    match class {
        NetworkClass::Static => throughput_static(&build_static_expander(p, seed)?, m, ctx),
        NetworkClass::Oblivious => throughput_oblivious(m, p, ctx),
        NetworkClass::DaStatic => throughput_demand_aware(m, p, DemandAwareMode::Static, step, seed, ctx),
        NetworkClass::DaPeriodic => throughput_demand_aware(m, p, DemandAwareMode::Periodic, step, seed, ctx),
        NetworkClass::OneShot => {
            let t = crate::topology::build_one_shot_integer(m, p)?;
            throughput_static(&t, m, ctx)
        }
    }
}
