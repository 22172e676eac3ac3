use super::schedule::{synthesize_schedule, PeriodicSchedule, ScheduleTiming};
use super::{NetworkClass, Topology};
use crate::decomposition::spread_regular_digraph;
use crate::error::{Error, Result};
use crate::matrix::{decompose_integer_residual, normalize, DemandMatrix, SquareMatrix};
use crate::params::NetworkParams;
use crate::scalar::Scalar;

/// Salt mixed into the builder seed for the schedule shuffle.
const SCHEDULE_SALT: u64 = 0x5c4e_d01e_0000_0001;

/// Random `u`-regular digraph without self-loops, links of capacity `c`.
pub fn build_static_expander(p: &NetworkParams, seed: u64) -> Result<Topology> {
    p.validate()?;
    let g = spread_regular_digraph(p.n, p.u as u32, seed)?;
    Topology::new(g.into_multiplicity(), p.c, NetworkClass::Static, p.u as u32)
}

/// Complete graph standing in for a rotor-style oblivious network.
///
/// One link between every ordered pair plus one padding self-loop per node,
/// i.e. the union of the `n` matchings `i → i+k`, each link carrying the
/// time-shared capacity `c·u/n`.
pub fn build_oblivious_equivalent(p: &NetworkParams) -> Result<Topology> {
    p.validate()?;
    Topology::new(
        SquareMatrix::filled(p.n, 1),
        p.emulated_capacity(),
        NetworkClass::Oblivious,
        p.n as u32,
    )
}

/// Floor links plus a random `d`-regular graph on the remaining ports.
///
/// `normalized` is in units of one link of the target topology; `budget` is
/// the per-node port count.
fn demand_aware_links<T: Scalar>(normalized: &DemandMatrix<T>, budget: u32, seed: u64) -> Result<SquareMatrix<u32>> {
    let n = normalized.n();
    let dec = decompose_integer_residual(normalized.as_matrix())?;
    let floor = dec.int_part;
    let out_used = floor.row_sums();
    let in_used = floor.col_sums();
    let used = out_used
        .iter()
        .zip(&in_used)
        .map(|(&o, &i)| o.max(i))
        .max()
        .unwrap_or(0);
    if used > budget {
        return Err(Error::Internal(format!(
            "floor matrix needs {used} links at some node, budget is {budget}; input is not hose-feasible"
        )));
    }
    let d = budget - used;
    if d == 0 || n < 2 {
        return Ok(floor);
    }
    let residual = spread_regular_digraph(n, d, seed)?;
    Ok(floor.add(residual.edge_multiplicity()))
}

/// Demand-aware static network of degree `u` with links of capacity `c`.
pub fn build_demand_aware_static<T: Scalar>(m: &DemandMatrix<T>, p: &NetworkParams, seed: u64) -> Result<Topology> {
    p.validate()?;
    check_dims(m, p)?;
    let normalized = normalize(m, T::lit(p.c))?;
    let links = demand_aware_links(&normalized, p.u as u32, seed)?;
    Topology::new(links, p.c, NetworkClass::DaStatic, p.u as u32)
}

/// Demand-aware periodic network: the degree-`n` emulated graph with links
/// of capacity `c·u/n`, padded to exact `n`-regularity, plus a schedule
/// installing its matchings on the `u` circuit switches.
///
/// Padding prefers self-loops. When a node's spare out-ports and in-ports
/// differ, the imbalance is closed with extra off-diagonal links, which are
/// real circuits and count as capacity.
pub fn build_demand_aware_periodic<T: Scalar>(
    m: &DemandMatrix<T>,
    p: &NetworkParams,
    seed: u64,
    timing: ScheduleTiming,
) -> Result<(Topology, PeriodicSchedule)> {
    p.validate()?;
    check_dims(m, p)?;
    let normalized = normalize(m, T::lit(p.emulated_capacity()))?;
    let n = p.n as u32;
    let links = pad_to_regular(demand_aware_links(&normalized, n, seed)?, n)?;
    let topo = Topology::new(links, p.emulated_capacity(), NetworkClass::DaPeriodic, n)?;
    let schedule = synthesize_schedule(&topo, p, seed ^ SCHEDULE_SALT, timing)?;
    Ok((topo, schedule))
}

/// One link per unit of demand; every entry of `m/c` must be an integer.
pub fn build_one_shot_integer<T: Scalar>(m: &DemandMatrix<T>, p: &NetworkParams) -> Result<Topology> {
    p.validate()?;
    check_dims(m, p)?;
    let normalized = normalize(m, T::lit(p.c))?;
    let dec = decompose_integer_residual(normalized.as_matrix())?;
    if let Some((i, j, r)) = dec.res_part.cells().find(|&(_, _, r)| r > T::zero()) {
        return Err(Error::invalid(format!(
            "normalized entry ({i},{j}) has fractional part {r}; use the demand-aware static builder"
        )));
    }
    Topology::new(dec.int_part, p.c, NetworkClass::OneShot, p.u as u32)
        .map_err(|e| Error::invalid(format!("matrix is not hose-feasible: {e}")))
}

fn check_dims<T: Scalar>(m: &DemandMatrix<T>, p: &NetworkParams) -> Result<()> {
    if m.n() != p.n {
        return Err(Error::invalid(format!(
            "matrix dimension {} does not match n = {}",
            m.n(),
            p.n
        )));
    }
    Ok(())
}

/// Completes `links` to a `degree`-regular multigraph.
fn pad_to_regular(mut links: SquareMatrix<u32>, degree: u32) -> Result<SquareMatrix<u32>> {
    let n = links.n();
    let mut out_slack: Vec<u32> = links.row_sums().iter().map(|&r| degree - r).collect();
    let mut in_slack: Vec<u32> = links.col_sums().iter().map(|&c| degree - c).collect();
    for k in 0..n {
        let loops = out_slack[k].min(in_slack[k]);
        links[(k, k)] += loops;
        out_slack[k] -= loops;
        in_slack[k] -= loops;
    }
    // Whatever is left pairs a node with spare out-ports to a different node
    // with spare in-ports; the remaining slack sets are disjoint.
    let mut j = 0;
    for i in 0..n {
        while out_slack[i] > 0 {
            while j < n && in_slack[j] == 0 {
                j += 1;
            }
            if j == n || j == i {
                return Err(Error::Internal("cannot pad topology to regularity".into()));
            }
            let k = out_slack[i].min(in_slack[j]);
            links[(i, j)] += k;
            out_slack[i] -= k;
            in_slack[j] -= k;
        }
    }
    Ok(links)
}
