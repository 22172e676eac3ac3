//! Capacitated ToR-to-ToR multigraphs for each network class, and the
//! periodic switching schedules that realize the demand-aware periodic class.

mod build;
mod schedule;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

pub use build::{
    build_demand_aware_periodic, build_demand_aware_static, build_oblivious_equivalent, build_one_shot_integer,
    build_static_expander,
};
pub use schedule::{synthesize_schedule, PeriodicSchedule, ScheduleTiming};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NetworkClass {
    #[serde(rename = "static")]
    Static,
    #[serde(rename = "oblivious")]
    Oblivious,
    #[serde(rename = "da-static")]
    DaStatic,
    #[serde(rename = "da-periodic")]
    DaPeriodic,
    #[serde(rename = "one-shot")]
    OneShot,
}

impl NetworkClass {
    /// The four classes compared in the throughput sweeps.
    pub const EVALUATED: [NetworkClass; 4] = [
        NetworkClass::Static,
        NetworkClass::Oblivious,
        NetworkClass::DaStatic,
        NetworkClass::DaPeriodic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NetworkClass::Static => "static",
            NetworkClass::Oblivious => "oblivious",
            NetworkClass::DaStatic => "da-static",
            NetworkClass::DaPeriodic => "da-periodic",
            NetworkClass::OneShot => "one-shot",
        }
    }
}

impl std::str::FromStr for NetworkClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "static" => NetworkClass::Static,
            "oblivious" => NetworkClass::Oblivious,
            "da-static" => NetworkClass::DaStatic,
            "da-periodic" => NetworkClass::DaPeriodic,
            "one-shot" => NetworkClass::OneShot,
            other => return Err(Error::invalid(format!("unknown network class {other:?}"))),
        })
    }
}

impl std::fmt::Display for NetworkClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Directed multigraph over ToRs with uniform per-link capacity.
///
/// `link_count[(i,j)]` parallel links go from `i` to `j`. Diagonal entries
/// are padding slots and never carry traffic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TopologyRepr", into = "TopologyRepr")]
pub struct Topology {
    link_count: SquareMatrix<u32>,
    link_capacity: f64,
    class: NetworkClass,
    degree_budget: u32,
}

#[derive(Serialize, Deserialize)]
struct TopologyRepr {
    n: usize,
    link_capacity: f64,
    class: NetworkClass,
    link_count: Vec<u32>,
}

impl TryFrom<TopologyRepr> for Topology {
    type Error = Error;

    fn try_from(r: TopologyRepr) -> Result<Self> {
        let link_count = SquareMatrix::from_row_major(r.n, r.link_count)?;
        let budget = link_count
            .row_sums()
            .into_iter()
            .chain(link_count.col_sums())
            .max()
            .unwrap_or(0);
        Topology::new(link_count, r.link_capacity, r.class, budget)
    }
}

impl From<Topology> for TopologyRepr {
    fn from(t: Topology) -> Self {
        TopologyRepr {
            n: t.n(),
            link_capacity: t.link_capacity,
            class: t.class,
            link_count: t.link_count.into_row_major(),
        }
    }
}

impl Topology {
    /// Fails if any node's in- or out-degree exceeds `degree_budget`.
    pub fn new(
        link_count: SquareMatrix<u32>,
        link_capacity: f64,
        class: NetworkClass,
        degree_budget: u32,
    ) -> Result<Self> {
        if !(link_capacity > 0.0) || !link_capacity.is_finite() {
            return Err(Error::invalid(format!(
                "link capacity must be positive, got {link_capacity}"
            )));
        }
        for (k, (r, c)) in link_count.row_sums().into_iter().zip(link_count.col_sums()).enumerate() {
            if r > degree_budget || c > degree_budget {
                return Err(Error::invalid(format!(
                    "node {k} uses {r} out / {c} in links, above the budget {degree_budget}"
                )));
            }
        }
        Ok(Topology {
            link_count,
            link_capacity,
            class,
            degree_budget,
        })
    }

    pub fn n(&self) -> usize {
        self.link_count.n()
    }

    pub fn link_count(&self) -> &SquareMatrix<u32> {
        &self.link_count
    }

    pub fn link_capacity(&self) -> f64 {
        self.link_capacity
    }

    pub fn class(&self) -> NetworkClass {
        self.class
    }

    pub fn degree_budget(&self) -> u32 {
        self.degree_budget
    }

    /// Routable arcs `(i, j, links)` with `i ≠ j` and at least one link.
    pub fn arcs(&self) -> Vec<(usize, usize, u32)> {
        self.link_count.cells().filter(|&(i, j, c)| i != j && c > 0).collect()
    }

    /// Number of links `i → j` usable for traffic (0 on the diagonal).
    pub fn routable_links(&self, i: usize, j: usize) -> u32 {
        if i == j {
            0
        } else {
            self.link_count.get(i, j)
        }
    }

    /// A copy with one more parallel link `i → j` and the budget raised if needed.
    pub fn with_extra_link(&self, i: usize, j: usize) -> Topology {
        let mut t = self.clone();
        t.link_count[(i, j)] += 1;
        let peak = t
            .link_count
            .row_sums()
            .into_iter()
            .chain(t.link_count.col_sums())
            .max()
            .unwrap_or(0);
        t.degree_budget = t.degree_budget.max(peak);
        t
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
