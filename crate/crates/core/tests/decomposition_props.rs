use proptest::prelude::*;
use rdcn::decomposition::{bvn_decompose, edge_color_regular, random_regular_digraph};
use rdcn::matrix::SquareMatrix;

/// Sinkhorn balancing of a positive random matrix to doubly stochastic.
fn sinkhorn(n: usize, raw: &[f64]) -> SquareMatrix<f64> {
    let mut m = SquareMatrix::from_fn(n, |i, j| raw[i * n + j] + 0.01);
    for _ in 0..10_000 {
        for (i, s) in m.row_sums().into_iter().enumerate() {
            for j in 0..n {
                m[(i, j)] /= s;
            }
        }
        let cols = m.col_sums();
        for i in 0..n {
            for (j, s) in cols.iter().enumerate() {
                m[(i, j)] /= s;
            }
        }
        let err = m.row_sums().iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);
        if err < 1e-14 {
            break;
        }
    }
    m
}

fn doubly_stochastic() -> impl Strategy<Value = SquareMatrix<f64>> {
    (2usize..=8).prop_flat_map(|n| proptest::collection::vec(0.0f64..1.0, n * n).prop_map(move |raw| sinkhorn(n, &raw)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bvn_reconstructs_sinkhorn(m in doubly_stochastic()) {
        let n = m.n();
        let d = bvn_decompose(&m, 1e-9).unwrap();
        prop_assert!(d.reconstruct(n).max_abs_diff(&m) <= 1e-8);
        prop_assert!(d.len() <= n * n - 2 * n + 2);
        prop_assert!((d.coefficient_sum() - 1.0).abs() <= 1e-8);
        for t in &d.terms {
            prop_assert!(t.coefficient > 0.0);
        }
    }

    #[test]
    fn regular_digraph_colors_into_degree_matchings(
        n in 2usize..10, d in 1u32..6, seed in any::<u64>(), loops in any::<bool>()
    ) {
        let g = random_regular_digraph(n, d, seed, loops).unwrap();
        prop_assert!(g.edge_multiplicity().row_sums().iter().all(|&s| s == d));
        prop_assert!(g.edge_multiplicity().col_sums().iter().all(|&s| s == d));
        if !loops {
            prop_assert!((0..n).all(|i| g.edge_multiplicity().get(i, i) == 0));
        }
        let colors = edge_color_regular(&g).unwrap();
        prop_assert_eq!(colors.len(), d as usize);
        let mut union = SquareMatrix::zeros(n);
        for c in &colors {
            union = union.add(&c.to_matrix());
        }
        prop_assert_eq!(&union, g.edge_multiplicity());
    }
}

#[test]
fn bvn_works_in_f32() {
    let m: SquareMatrix<f32> = SquareMatrix::from_rows(vec![vec![0.25, 0.75], vec![0.75, 0.25]]).unwrap();
    let d = bvn_decompose(&m, 1e-6).unwrap();
    assert_eq!(d.len(), 2);
    assert!(d.reconstruct(2).max_abs_diff(&m) < 1e-6);
}
