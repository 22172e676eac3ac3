//! Independent oracles: a dense tableau simplex and a path-formulation
//! throughput LP built on it.

#![allow(dead_code)]

use rdcn::topology::Topology;

const EPS: f64 = 1e-11;

/// Maximizes `c·x` subject to `A x ≤ b`, `x ≥ 0`, with `b ≥ 0`.
///
/// Tableau simplex from the slack basis with Bland's rule. Returns the
/// optimum, or `None` if unbounded.
pub fn simplex_max(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<f64> {
    let m = a.len();
    let nv = c.len();
    let width = nv + m + 1;
    // rows 0..m constraints, row m objective (reduced costs, negated c)
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        assert!(b[i] >= 0.0, "origin must be feasible");
        t[i][..nv].copy_from_slice(&a[i]);
        t[i][nv + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for j in 0..nv {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    loop {
        let Some(enter) = (0..nv + m).find(|&j| t[m][j] < -EPS) else {
            return Some(t[m][width - 1]);
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > EPS {
                let ratio = t[i][width - 1] / t[i][enter];
                let better = ratio < best - EPS || (ratio <= best + EPS && leave.is_some_and(|l| basis[i] < basis[l]));
                if leave.is_none() || better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let r = leave?;
        let piv = t[r][enter];
        for v in t[r].iter_mut() {
            *v /= piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[enter];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
        basis[r] = enter;
    }
}

/// All simple paths `s → d` over arcs with at least one routable link,
/// each as a list of arcs.
pub fn simple_paths(t: &Topology, s: usize, d: usize, max_hops: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(
        t: &Topology,
        v: usize,
        d: usize,
        max_hops: usize,
        seen: &mut Vec<bool>,
        path: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if v == d {
            out.push(path.clone());
            return;
        }
        if path.len() == max_hops {
            return;
        }
        for w in 0..t.n() {
            if !seen[w] && t.routable_links(v, w) > 0 {
                seen[w] = true;
                path.push((v, w));
                walk(t, w, d, max_hops, seen, path, out);
                path.pop();
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; t.n()];
    seen[s] = true;
    let mut out = Vec::new();
    walk(t, s, d, max_hops, &mut seen, &mut Vec::new(), &mut out);
    out
}

/// Throughput of `demand` (link units) on `t` by the path formulation over
/// simple paths of at most `max_hops` arcs.
pub fn path_lp_theta(t: &Topology, demand: &[Vec<f64>], max_hops: usize) -> f64 {
    let n = t.n();
    let mut commodities = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if s != d && demand[s][d] > 0.0 {
                commodities.push((s, d, simple_paths(t, s, d, max_hops)));
            }
        }
    }
    let arcs = t.arcs();
    let npaths: usize = commodities.iter().map(|c| c.2.len()).sum();
    // Column 0 is θ, then one column per path.
    let nv = 1 + npaths;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut col = 1;
    let mut arc_rows = vec![vec![0.0; nv]; arcs.len()];
    for (s, d, paths) in &commodities {
        let mut row = vec![0.0; nv];
        row[0] = demand[*s][*d];
        for p in paths {
            row[col] = -1.0;
            for arc in p {
                let k = arcs.iter().position(|&(i, j, _)| (i, j) == *arc).unwrap();
                arc_rows[k][col] = 1.0;
            }
            col += 1;
        }
        a.push(row);
        b.push(0.0);
    }
    for (row, &(_, _, links)) in arc_rows.into_iter().zip(&arcs) {
        a.push(row);
        b.push(links as f64);
    }
    let mut c = vec![0.0; nv];
    c[0] = 1.0;
    simplex_max(&c, &a, &b).expect("capacity-bounded LP")
}

#[test]
fn simplex_small_known_optimum() {
    // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3  →  x=3, y=1, value 11
    let v = simplex_max(
        &[3.0, 2.0],
        &[vec![1.0, 1.0], vec![1.0, 3.0], vec![1.0, 0.0]],
        &[4.0, 6.0, 3.0],
    )
    .unwrap();
    assert!((v - 11.0).abs() < 1e-12);
    assert!(simplex_max(&[1.0], &[vec![-1.0]], &[1.0]).is_none());
}
