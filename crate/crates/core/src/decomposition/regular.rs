use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matching::perfect_matching;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Directed multigraph whose every node has in- and out-degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularMultigraph {
    degree: u32,
    edge_multiplicity: SquareMatrix<u32>,
}

impl RegularMultigraph {
    pub fn new(edge_multiplicity: SquareMatrix<u32>) -> Result<Self> {
        let rows = edge_multiplicity.row_sums();
        let cols = edge_multiplicity.col_sums();
        let degree = rows.first().copied().unwrap_or(0);
        for (k, (&r, &c)) in rows.iter().zip(&cols).enumerate() {
            if r != degree || c != degree {
                return Err(Error::invalid(format!(
                    "node {k} has out-degree {r} and in-degree {c}, expected {degree}"
                )));
            }
        }
        Ok(RegularMultigraph {
            degree,
            edge_multiplicity,
        })
    }

    pub fn n(&self) -> usize {
        self.edge_multiplicity.n()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn edge_multiplicity(&self) -> &SquareMatrix<u32> {
        &self.edge_multiplicity
    }

    pub fn into_multiplicity(self) -> SquareMatrix<u32> {
        self.edge_multiplicity
    }
}

/// Union of `d` seeded uniformly random permutations.
///
/// With `allow_self_loops == false` each permutation is redrawn until it has
/// no fixed point.
pub fn random_regular_digraph(n: usize, d: u32, seed: u64, allow_self_loops: bool) -> Result<RegularMultigraph> {
    if n == 0 {
        return Err(Error::invalid("graph needs at least one node"));
    }
    if n == 1 && !allow_self_loops && d > 0 {
        return Err(Error::invalid("a single node cannot have edges without self-loops"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mult = SquareMatrix::<u32>::zeros(n);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..d {
        loop {
            perm.shuffle(&mut rng);
            if allow_self_loops || perm.iter().enumerate().all(|(i, &j)| i != j) {
                break;
            }
        }
        for (i, &j) in perm.iter().enumerate() {
            mult[(i, j)] += 1;
        }
    }
    RegularMultigraph::new(mult)
}

/// Random `d`-regular self-loop-free digraph with links spread over all pairs.
///
/// Built one random perfect matching at a time, each restricted to the pairs
/// with the fewest links so far, so the result is simple whenever `d ≤ n−1`
/// and multiplicities differ by at most one otherwise.
pub fn spread_regular_digraph(n: usize, d: u32, seed: u64) -> Result<RegularMultigraph> {
    if n < 2 && d > 0 {
        return Err(Error::invalid("a single node cannot have edges without self-loops"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mult = SquareMatrix::<u32>::zeros(n);
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    for _ in 0..d {
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let floor = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| mult.get(i, j))
            .min()
            .unwrap_or(0);
        let mut level = floor;
        let matching = loop {
            // Relabel rows and columns so the deterministic matcher picks a random matching.
            let support = SquareMatrix::from_fn(n, |a, b| {
                let (i, j) = (rows[a], cols[b]);
                i != j && mult.get(i, j) <= level
            });
            if let Some(m) = perfect_matching(&support) {
                break m;
            }
            level += 1;
        };
        for (a, b) in matching.edges() {
            let (i, j) = (rows[a], cols[b]);
            mult[(i, j)] += 1;
        }
    }
    RegularMultigraph::new(mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_permutation() {
        let g = random_regular_digraph(4, 1, 11, true).unwrap();
        assert_eq!(g.degree(), 1);
        assert!(g.edge_multiplicity().as_slice().iter().all(|&v| v <= 1));
        assert_eq!(g.edge_multiplicity().total(), 4);
    }

    #[test]
    fn self_loop_free_when_requested() {
        for seed in 0..20 {
            let g = random_regular_digraph(5, 3, seed, false).unwrap();
            assert!((0..5).all(|i| g.edge_multiplicity().get(i, i) == 0));
            assert_eq!(g.degree(), 3);
        }
    }

    #[test]
    fn single_node_without_loops_is_rejected() {
        assert!(random_regular_digraph(1, 1, 0, false).is_err());
        assert!(random_regular_digraph(1, 2, 0, true).is_ok());
    }

    #[test]
    fn spread_graph_is_simple_below_n() {
        for seed in 0..10 {
            let g = spread_regular_digraph(6, 5, seed).unwrap();
            let m = g.edge_multiplicity();
            assert_eq!(g.degree(), 5);
            assert!((0..6).all(|i| (0..6).all(|j| m.get(i, j) == u32::from(i != j))));
            let g = spread_regular_digraph(9, 4, seed).unwrap();
            assert!(g
                .edge_multiplicity()
                .cells()
                .all(|(i, j, v)| v <= 1 && (i != j || v == 0)));
        }
        let g = spread_regular_digraph(4, 6, 3).unwrap();
        assert!(g
            .edge_multiplicity()
            .cells()
            .all(|(i, j, v)| v == if i == j { 0 } else { 2 }));
        assert!(spread_regular_digraph(1, 1, 0).is_err());
        assert_eq!(
            spread_regular_digraph(8, 3, 5).unwrap(),
            spread_regular_digraph(8, 3, 5).unwrap()
        );
    }

    #[test]
    fn seeds_differ() {
        let a = random_regular_digraph(16, 8, 1, false).unwrap();
        let b = random_regular_digraph(16, 8, 2, false).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, random_regular_digraph(16, 8, 1, false).unwrap());
    }

    #[test]
    fn irregular_rejected() {
        let m = SquareMatrix::from_rows(vec![vec![0, 2], vec![1, 0]]).unwrap();
        assert!(RegularMultigraph::new(m).is_err());
    }
}
