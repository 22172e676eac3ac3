//! Backend-independent LP model of the max-concurrent-flow problem.

use serde::{Deserialize, Serialize};

use crate::topology::Topology;

/// Which commodities the LP carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formulation {
    /// One commodity per `(s, d)` pair with variables `f^{s,d}_{i,j}`.
    PerPair,
    /// One commodity per source, destinations absorbing `θ·m[s][d]` each;
    /// per-pair flows are recovered afterwards by path decomposition.
    #[default]
    PerSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Theta,
    PairFlow { s: usize, d: usize, i: usize, j: usize },
    SourceFlow { s: usize, i: usize, j: usize },
}

impl Var {
    pub fn name(&self) -> String {
        match *self {
            Var::Theta => "theta".to_string(),
            Var::PairFlow { s, d, i, j } => format!("f_{s}_{d}_{i}_{j}"),
            Var::SourceFlow { s, i, j } => format!("g_{s}_{i}_{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// `Σ_i f^{s,d}_{s,i} − θ·m ≥ 0`
    SourceDemand { s: usize, d: usize },
    /// `Σ_i f^{s,d}_{i,d} − θ·m ≥ 0`
    DestinationDemand { s: usize, d: usize },
    /// `in − out = 0` at `node ∉ {s, d}`.
    Conservation { s: usize, d: usize, node: usize },
    /// `in − out − θ·m[s][node] = 0` for source-aggregated commodity `s`.
    SourceBalance { s: usize, node: usize },
    /// `Σ f on (i,j) ≤ ĉ^{i,j}`
    Capacity { i: usize, j: usize },
}

impl Constraint {
    pub fn name(&self) -> String {
        match *self {
            Constraint::SourceDemand { s, d } => format!("src_{s}_{d}"),
            Constraint::DestinationDemand { s, d } => format!("dst_{s}_{d}"),
            Constraint::Conservation { s, d, node } => format!("cons_{s}_{d}_{node}"),
            Constraint::SourceBalance { s, node } => format!("bal_{s}_{node}"),
            Constraint::Capacity { i, j } => format!("cap_{i}_{j}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Column {
    pub var: Var,
    pub cost: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub constraint: Constraint,
    pub lower: f64,
    pub upper: f64,
    pub coeffs: Vec<(usize, f64)>,
}

/// `maximize Σ cost·x` subject to `lower ≤ A·x ≤ upper` and column bounds.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    fn add_column(&mut self, var: Var, cost: f64) -> usize {
        self.columns.push(Column {
            var,
            cost,
            lower: 0.0,
            upper: f64::INFINITY,
        });
        self.columns.len() - 1
    }

    fn add_row(&mut self, constraint: Constraint, lower: f64, upper: f64, coeffs: Vec<(usize, f64)>) {
        self.rows.push(Row {
            constraint,
            lower,
            upper,
            coeffs,
        });
    }

    pub fn theta_column(&self) -> usize {
        0
    }
}

/// Builds the throughput LP for topology `t` and a demand matrix already in
/// units of one link of `t` (`demand[s][d]` for every pair).
///
/// Self-loop arcs and zero-demand commodities get no variables. A pair
/// commodity `(s,d)` has no variables on arcs entering `s` or leaving `d`.
pub fn build_lp(t: &Topology, demand: &[Vec<f64>], formulation: Formulation) -> LinearProgram {
    let n = t.n();
    let arcs = t.arcs();
    let mut lp = LinearProgram::default();
    let theta = lp.add_column(Var::Theta, 1.0);
    let mut cap_rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); arcs.len()];

    match formulation {
        Formulation::PerPair => {
            for s in 0..n {
                for d in 0..n {
                    let m = demand[s][d];
                    if s == d || m <= 0.0 {
                        continue;
                    }
                    let mut out_s = Vec::new();
                    let mut in_d = Vec::new();
                    let mut node_in: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
                    for (a, &(i, j, _)) in arcs.iter().enumerate() {
                        if j == s || i == d {
                            continue;
                        }
                        let col = lp.add_column(Var::PairFlow { s, d, i, j }, 0.0);
                        cap_rows[a].push((col, 1.0));
                        if i == s {
                            out_s.push((col, 1.0));
                        } else {
                            node_in[i].push((col, -1.0));
                        }
                        if j == d {
                            in_d.push((col, 1.0));
                        } else {
                            node_in[j].push((col, 1.0));
                        }
                    }
                    out_s.push((theta, -m));
                    in_d.push((theta, -m));
                    lp.add_row(Constraint::SourceDemand { s, d }, 0.0, f64::INFINITY, out_s);
                    lp.add_row(Constraint::DestinationDemand { s, d }, 0.0, f64::INFINITY, in_d);
                    for (node, coeffs) in node_in.into_iter().enumerate() {
                        if node == s || node == d || coeffs.is_empty() {
                            continue;
                        }
                        lp.add_row(Constraint::Conservation { s, d, node }, 0.0, 0.0, coeffs);
                    }
                }
            }
        }
        Formulation::PerSource => {
            for s in 0..n {
                if (0..n).all(|d| d == s || demand[s][d] <= 0.0) {
                    continue;
                }
                let mut balance: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
                for (a, &(i, j, _)) in arcs.iter().enumerate() {
                    if j == s {
                        continue;
                    }
                    let col = lp.add_column(Var::SourceFlow { s, i, j }, 0.0);
                    cap_rows[a].push((col, 1.0));
                    if i != s {
                        balance[i].push((col, -1.0));
                    }
                    balance[j].push((col, 1.0));
                }
                for (node, mut coeffs) in balance.into_iter().enumerate() {
                    if node == s {
                        continue;
                    }
                    let m = demand[s][node];
                    if m > 0.0 {
                        coeffs.push((theta, -m));
                    }
                    if coeffs.is_empty() {
                        continue;
                    }
                    lp.add_row(Constraint::SourceBalance { s, node }, 0.0, 0.0, coeffs);
                }
            }
        }
    }

    for (coeffs, &(i, j, links)) in cap_rows.into_iter().zip(&arcs) {
        if coeffs.is_empty() {
            continue;
        }
        lp.add_row(Constraint::Capacity { i, j }, f64::NEG_INFINITY, links as f64, coeffs);
    }
    lp
}
