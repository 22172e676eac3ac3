use super::matching::{perfect_matching, PermutationMatching};
use super::regular::RegularMultigraph;
use crate::error::{Error, Result};

/// Splits a `d`-regular multigraph into `d` perfect matchings.
///
/// Peels one perfect matching at a time; removing a perfect matching from a
/// regular bipartite multigraph leaves it regular, so Hall's condition keeps holding.
pub fn edge_color_regular(g: &RegularMultigraph) -> Result<Vec<PermutationMatching>> {
    let mut remaining = g.edge_multiplicity().clone();
    let mut out = Vec::with_capacity(g.degree() as usize);
    for k in 0..g.degree() {
        let support = remaining.map(|v| v > 0);
        let m = perfect_matching(&support)
            .ok_or_else(|| Error::Internal(format!("regular multigraph lost its matching at color {k}")))?;
        for (i, j) in m.edges() {
            remaining[(i, j)] -= 1;
        }
        out.push(m);
    }
    debug_assert_eq!(remaining.total(), 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::random_regular_digraph;
    use crate::matrix::SquareMatrix;

    fn union(ms: &[PermutationMatching], n: usize) -> SquareMatrix<u32> {
        ms.iter().fold(SquareMatrix::zeros(n), |acc, m| acc.add(&m.to_matrix()))
    }

    #[test]
    fn complete_with_loops() {
        let g = RegularMultigraph::new(SquareMatrix::filled(4, 1)).unwrap();
        let ms = edge_color_regular(&g).unwrap();
        assert_eq!(ms.len(), 4);
        assert_eq!(union(&ms, 4), *g.edge_multiplicity());
    }

    #[test]
    fn repeated_permutation() {
        let p = PermutationMatching::new(vec![2, 0, 1]).unwrap();
        let g = RegularMultigraph::new(p.to_matrix().map(|v| v * 3)).unwrap();
        let ms = edge_color_regular(&g).unwrap();
        assert_eq!(ms, vec![p.clone(), p.clone(), p]);
    }

    #[test]
    fn random_eight_regular() {
        for seed in 0..10 {
            let g = random_regular_digraph(8, 8, seed, true).unwrap();
            let ms = edge_color_regular(&g).unwrap();
            assert_eq!(ms.len(), 8);
            assert_eq!(union(&ms, 8), *g.edge_multiplicity());
        }
    }
}
