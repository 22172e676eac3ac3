use serde::Serialize;

use super::ThroughputResult;
use crate::matrix::DemandMatrix;
use crate::scalar::Scalar;
use crate::topology::Topology;

pub const DEFAULT_VERIFY_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    NegativeTheta,
    NegativeFlow,
    /// Flow on a self-loop or on a pair without links.
    InvalidArc,
    SourceDemand,
    DestinationDemand,
    Conservation,
    /// Commodity `(s,d)` re-entering `s`.
    SourceInflow,
    /// Commodity `(s,d)` leaving `d`.
    DestinationOutflow,
    Capacity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Constraint or variable name in LP export notation.
    pub location: String,
    /// Amount by which the constraint is exceeded.
    pub excess: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Re-checks a result against the flow constraints from its raw per-pair
/// flows, independent of the LP that produced it.
///
/// `demand` must be in the same link units that were given to the solver.
pub fn verify_solution<T: Scalar>(
    t: &Topology,
    demand: &DemandMatrix<T>,
    r: &ThroughputResult,
    eps: f64,
) -> VerificationReport {
    let n = t.n();
    let mut report = VerificationReport::default();
    let mut push = |kind, location: String, excess: f64| report.violations.push(Violation { kind, location, excess });
    if r.theta < -eps || !r.theta.is_finite() {
        push(ViolationKind::NegativeTheta, "theta".into(), -r.theta);
    }

    // commodity index s*n+d -> (out of node, into node)
    let mut out_of = vec![vec![0.0f64; n]; n * n];
    let mut into = vec![vec![0.0f64; n]; n * n];
    let mut arc_load = vec![0.0f64; n * n];
    for e in &r.flows {
        let (s, d, i, j) = (e.s, e.d, e.i, e.j);
        if s >= n || d >= n || i >= n || j >= n {
            push(ViolationKind::InvalidArc, e.name(), e.value.abs());
            continue;
        }
        if e.value < -eps {
            push(ViolationKind::NegativeFlow, e.name(), -e.value);
        }
        if (i == j || t.routable_links(i, j) == 0) && e.value.abs() > eps {
            push(ViolationKind::InvalidArc, e.name(), e.value.abs());
        }
        let k = s * n + d;
        out_of[k][i] += e.value;
        into[k][j] += e.value;
        arc_load[i * n + j] += e.value;
    }

    for s in 0..n {
        for d in 0..n {
            if s == d {
                continue;
            }
            let k = s * n + d;
            let need = r.theta * demand.get(s, d).to_f64_lossy();
            let sent = out_of[k][s];
            if sent < need - eps {
                push(ViolationKind::SourceDemand, format!("src_{s}_{d}"), need - sent);
            }
            if into[k][d] < need - eps {
                push(
                    ViolationKind::DestinationDemand,
                    format!("dst_{s}_{d}"),
                    need - into[k][d],
                );
            }
            if into[k][s] > eps {
                push(ViolationKind::SourceInflow, format!("src_{s}_{d}"), into[k][s]);
            }
            if out_of[k][d] > eps {
                push(ViolationKind::DestinationOutflow, format!("dst_{s}_{d}"), out_of[k][d]);
            }
            for node in 0..n {
                if node == s || node == d {
                    continue;
                }
                let imbalance = into[k][node] - out_of[k][node];
                if imbalance.abs() > eps {
                    push(
                        ViolationKind::Conservation,
                        format!("cons_{s}_{d}_{node}"),
                        imbalance.abs(),
                    );
                }
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            let cap = t.routable_links(i, j) as f64;
            let load = arc_load[i * n + j];
            if load > cap + eps {
                push(ViolationKind::Capacity, format!("cap_{i}_{j}"), load - cap);
            }
        }
    }
    report
}
