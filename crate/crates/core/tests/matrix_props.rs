mod common;

use proptest::prelude::*;
use rdcn::matrix::{
    classify_uniform_residual, decompose_integer_residual, generate, normalize, saturate, validate_hose, DemandMatrix,
    GenParams, MatrixKind, SquareMatrix,
};
use rdcn::{Error, NetworkParams};

/// Random zero-diagonal matrix with row and column sums at most `cap`.
fn sub_hose(n: usize, cap: f64) -> impl Strategy<Value = DemandMatrix<f64>> {
    proptest::collection::vec(0.0f64..1.0, n * n).prop_map(move |raw| {
        let m = SquareMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { raw[i * n + j] });
        let peak = m.row_sums().into_iter().chain(m.col_sums()).fold(1e-12, f64::max);
        DemandMatrix::new(m.scaled(cap / peak * 0.999)).unwrap()
    })
}

/// Largest off-diagonal mass that fits the row and column slack of `m`.
fn fillable_slack(m: &DemandMatrix<f64>, target: f64) -> (f64, f64) {
    let n = m.n();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, sum) in m.row_sums().into_iter().enumerate() {
        a.push(cells.iter().map(|&(i, _)| f64::from(u8::from(i == k))).collect());
        b.push((target - sum).max(0.0));
    }
    for (k, sum) in m.col_sums().into_iter().enumerate() {
        a.push(cells.iter().map(|&(_, j)| f64::from(u8::from(j == k))).collect());
        b.push((target - sum).max(0.0));
    }
    let best = common::simplex_max(&vec![1.0; cells.len()], &a, &b).unwrap();
    (best, b[..n].iter().sum())
}

fn sized_sub_hose() -> impl Strategy<Value = DemandMatrix<f64>> {
    (3usize..=8).prop_flat_map(|n| sub_hose(n, 4.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn saturate_reaches_target_and_is_idempotent(m in sized_sub_hose()) {
        let (fits, slack) = fillable_slack(&m, 4.0);
        let s = match saturate(&m, 4.0) {
            Ok(s) => s,
            Err(Error::AugmentationFailed(_)) => {
                prop_assert!(fits < slack - 1e-6, "fill failed but {fits} of {slack} fits");
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(fits >= slack - 1e-6);
        for sum in s.row_sums().into_iter().chain(s.col_sums()) {
            prop_assert!((sum - 4.0).abs() <= 1e-8);
        }
        for (i, j, v) in m.cells() {
            prop_assert!(s.get(i, j) >= v - 1e-12);
            if i == j { prop_assert_eq!(s.get(i, j), 0.0); }
        }
        let again = saturate(&s, 4.0).unwrap();
        prop_assert!(again.max_abs_diff(&s) <= 1e-8);
    }

    #[test]
    fn residual_decomposition_reconstructs(m in sized_sub_hose(), k in 1.0f64..5.0) {
        let scaled = m.scaled(k);
        let d = decompose_integer_residual(scaled.as_matrix()).unwrap();
        prop_assert!(d.reconstruct().max_abs_diff(scaled.as_matrix()) <= 1e-9);
        for (_, _, r) in d.res_part.cells() {
            prop_assert!((0.0..1.0).contains(&r));
        }
    }

    #[test]
    fn residual_class_invariant_under_relabeling(m in sized_sub_hose(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let n = m.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let a = classify_uniform_residual(&decompose_integer_residual(m.as_matrix()).unwrap());
        let b = classify_uniform_residual(&decompose_integer_residual(&m.permuted(&perm)).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn generated_matrices_fill_node_capacity() {
    for u in [4, 8, 12, 16] {
        let p = NetworkParams::new(16, u, 25e9).unwrap();
        let gp = GenParams::default();
        for kind in [
            MatrixKind::Uniform,
            MatrixKind::Permutation,
            MatrixKind::Chessboard,
            MatrixKind::Mix,
            MatrixKind::RandomSaturated,
        ] {
            let m: DemandMatrix<f64> = generate(kind, &p, &gp).unwrap();
            assert!(validate_hose(&m, &p).unwrap().is_valid());
            // The uniform part leaves its missing diagonal share unused.
            let expected = match kind {
                MatrixKind::Uniform => p.node_capacity() * 15.0 / 16.0,
                MatrixKind::Mix => p.node_capacity() * (1.0 - (1.0 - gp.alpha) / 16.0),
                _ => p.node_capacity(),
            };
            for s in m.row_sums().into_iter().chain(m.col_sums()) {
                assert!((s - expected).abs() <= 1e-6 * expected, "{kind} u={u}: {s}");
            }
            let n = normalize(&m, p.c).unwrap();
            assert!((0..16).all(|i| n.get(i, i) == 0.0));
        }
    }
}

#[test]
fn f32_generation_matches_f64() {
    let p = NetworkParams::new(8, 2, 1.0).unwrap();
    let a: DemandMatrix<f32> = generate(MatrixKind::Chessboard, &p, &GenParams::default()).unwrap();
    let b: DemandMatrix<f64> = generate(MatrixKind::Chessboard, &p, &GenParams::default()).unwrap();
    assert!(a.cast::<f64>().max_abs_diff(&b) < 1e-5);
}

#[test]
fn saturate_reports_uncompletable_slack() {
    let m = DemandMatrix::from_rows(vec![vec![0.0, 0.0, 2.2], vec![0.0, 0.0, 0.0], vec![3.996, 0.0, 0.0]]).unwrap();
    let (fits, slack) = fillable_slack(&m, 4.0);
    assert!(fits < slack - 1.0);
    assert!(matches!(saturate(&m, 4.0), Err(Error::AugmentationFailed(_))));
}
