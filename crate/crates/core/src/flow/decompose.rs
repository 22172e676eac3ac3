//! Splits a source-aggregated flow into per-destination path flows.

use std::collections::VecDeque;

use crate::matrix::SquareMatrix;

/// Decomposes the flow of one source `s` into flows per destination.
///
/// `flow` holds the aggregate arc flows of commodity `s`; `absorb[v]` is the
/// amount destination `v` takes out of the network. Returns `(d, i, j, value)`
/// tuples. Circulations left after all destinations are served are dropped.
pub(crate) fn split_source_flow(s: usize, flow: &SquareMatrix<f64>, absorb: &[f64]) -> Vec<(usize, usize, usize, f64)> {
    let n = flow.n();
    let scale = flow.as_slice().iter().chain(absorb).fold(1.0f64, |a, &b| a.max(b));
    let tol = 1e-12 * scale;
    let mut flow = flow.clone();
    let mut remaining = absorb.to_vec();
    let mut pair_flow: Vec<SquareMatrix<f64>> = vec![SquareMatrix::zeros(n); n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    // Each path exhausts an arc or a destination.
    for _ in 0..(n * n + n + 1) {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[s] = s;
        queue.clear();
        queue.push_back(s);
        let mut target = None;
        while let Some(v) = queue.pop_front() {
            if v != s && remaining[v] > tol {
                target = Some(v);
                break;
            }
            for w in 0..n {
                if parent[w] == usize::MAX && flow.get(v, w) > tol {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let Some(d) = target else { break };
        let mut bottleneck = remaining[d];
        let mut v = d;
        while v != s {
            let p = parent[v];
            bottleneck = bottleneck.min(flow.get(p, v));
            v = p;
        }
        let mut v = d;
        while v != s {
            let p = parent[v];
            flow[(p, v)] -= bottleneck;
            pair_flow[d][(p, v)] += bottleneck;
            v = p;
        }
        remaining[d] -= bottleneck;
    }
    let mut out = Vec::new();
    for (d, f) in pair_flow.iter().enumerate() {
        for (i, j, v) in f.cells() {
            if v > 0.0 {
                out.push((d, i, j, v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_shared_prefix() {
        // 0 -> 1 carries 3, then 1 -> 2 carries 2; node 1 keeps 1, node 2 keeps 2.
        let mut f = SquareMatrix::zeros(3);
        f[(0, 1)] = 3.0;
        f[(1, 2)] = 2.0;
        let mut got = split_source_flow(0, &f, &[0.0, 1.0, 2.0]);
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(got, vec![(1, 0, 1, 1.0), (2, 0, 1, 2.0), (2, 1, 2, 2.0)]);
    }

    #[test]
    fn drops_circulation() {
        let mut f = SquareMatrix::zeros(3);
        f[(0, 1)] = 1.0;
        f[(1, 2)] = 0.5;
        f[(2, 1)] = 0.5;
        let got = split_source_flow(0, &f, &[0.0, 1.0, 0.0]);
        assert_eq!(got, vec![(1, 0, 1, 1.0)]);
    }
}
