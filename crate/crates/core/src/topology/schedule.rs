use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Topology;
use crate::decomposition::{edge_color_regular, PermutationMatching, RegularMultigraph};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::params::NetworkParams;

/// Slot length Δ and reconfiguration dead time Δr, in seconds.
///
/// Stored with the schedule; throughput evaluation ignores them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleTiming {
    pub slot_duration_s: f64,
    pub reconfig_duration_s: f64,
}

impl Default for ScheduleTiming {
    fn default() -> Self {
        ScheduleTiming {
            slot_duration_s: 1e-6,
            reconfig_duration_s: 1e-7,
        }
    }
}

/// Per-switch cyclic sequences of matchings.
///
/// Switch `k` installs `switches[k][t mod gamma]` during slot `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSchedule {
    pub u: usize,
    pub gamma: usize,
    pub slot_duration_s: f64,
    pub reconfig_duration_s: f64,
    pub switches: Vec<Vec<PermutationMatching>>,
}

impl PeriodicSchedule {
    pub fn n(&self) -> usize {
        self.switches.first().and_then(|s| s.first()).map_or(0, |m| m.n())
    }

    /// Multiset union of all installed matchings as a link-count matrix.
    pub fn union(&self) -> SquareMatrix<u32> {
        let n = self.n();
        let mut m = SquareMatrix::zeros(n);
        for m_k in self.switches.iter().flatten() {
            for (i, j) in m_k.edges() {
                m[(i, j)] += 1;
            }
        }
        m
    }

    /// Whether the union over one period equals the topology's link multiset,
    /// counting each link once per repeat of its matching.
    pub fn emulates(&self, t: &Topology) -> bool {
        let n = t.n();
        if n == 0 || self.n() != n || self.switches.iter().any(|s| s.len() != self.gamma) {
            return false;
        }
        let total = self.u * self.gamma;
        if !total.is_multiple_of(n) {
            return false;
        }
        let repeats = (total / n) as u32;
        self.union() == t.link_count().map(|v| v * repeats)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Splits an `n`-regular topology into `n` matchings and deals them, after a
/// seeded shuffle, onto `u` switches of `gamma` slots each.
///
/// When `u` does not divide `n` every matching is dealt
/// `u / gcd(n, u)` times so that each switch still gets the same count.
pub fn synthesize_schedule(
    t: &Topology,
    p: &NetworkParams,
    seed: u64,
    timing: ScheduleTiming,
) -> Result<PeriodicSchedule> {
    p.validate()?;
    if t.n() != p.n {
        return Err(Error::invalid("topology size does not match parameters"));
    }
    let g = RegularMultigraph::new(t.link_count().clone())
        .map_err(|e| Error::invalid(format!("topology is not regular: {e}")))?;
    if g.degree() as usize != p.n {
        return Err(Error::invalid(format!(
            "schedule synthesis needs an {}-regular topology, got degree {}",
            p.n,
            g.degree()
        )));
    }
    let colors = edge_color_regular(&g)?;
    let mut deck: Vec<PermutationMatching> = (0..p.matching_repeats()).flat_map(|_| colors.iter().cloned()).collect();
    deck.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let gamma = p.period();
    debug_assert_eq!(deck.len(), gamma * p.u);
    let switches = deck.chunks(gamma).map(|c| c.to_vec()).collect();
    Ok(PeriodicSchedule {
        u: p.u,
        gamma,
        slot_duration_s: timing.slot_duration_s,
        reconfig_duration_s: timing.reconfig_duration_s,
        switches,
    })
}
