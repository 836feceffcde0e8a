//! Sparse fraction-free elimination against the dense reference.

use fsslab_core::linalg::reference::{dense_rank, determinant};
use fsslab_core::linalg::{is_solvable, kernel_basis, rank, rat, GaussianRational as G, SparseMatrix};
use num_traits::Zero;
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = G> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| G::new(rat(a, b), rat(c, d)))
}

/// Entry is zero with probability about `1 - density`.
fn sparse_entry(density: u32) -> impl Strategy<Value = G> {
    (0u32..100, gaussian()).prop_map(move |(roll, g)| if roll < density { g } else { G::zero() })
}

fn dense(rows: usize, cols: usize, density: u32) -> impl Strategy<Value = Vec<Vec<G>>> {
    prop::collection::vec(prop::collection::vec(sparse_entry(density), cols), rows)
}

fn any_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<G>>> {
    (1..=max, 1..=max, 5u32..=60).prop_flat_map(|(r, c, d)| dense(r, c, d))
}

/// `A B` with inner dimension `k`, so the rank is at most `k`.
fn low_rank(max: usize) -> impl Strategy<Value = Vec<Vec<G>>> {
    (1..=max, 1..=max, 1..=6usize).prop_flat_map(|(r, c, k)| (dense(r, k, 50), dense(k, c, 50))).prop_map(|(a, b)| {
        a.iter().map(|row| (0..b[0].len()).map(|j| row.iter().zip(&b).fold(G::zero(), |s, (x, brow)| s + x * &brow[j])).collect()).collect()
    })
}

fn sparse(rows: &[Vec<G>]) -> SparseMatrix {
    SparseMatrix::from_dense(rows[0].len(), rows).expect("rectangular")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_matches_dense(rows in any_matrix(50)) {
        prop_assert_eq!(rank(&sparse(&rows)), dense_rank(&rows));
    }

    #[test]
    fn low_rank_matches_dense(rows in low_rank(30)) {
        let r = rank(&sparse(&rows));
        prop_assert_eq!(r, dense_rank(&rows));
        prop_assert!(r <= 6);
    }

    #[test]
    fn rank_of_transpose(rows in any_matrix(30)) {
        let m = sparse(&rows);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_is_annihilated_and_complete(rows in low_rank(20)) {
        let m = sparse(&rows);
        let ker = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        if !ker.is_empty() {
            prop_assert_eq!(dense_rank(&ker), ker.len());
        }
    }

    #[test]
    fn image_vectors_are_solvable(rows in any_matrix(15), x in prop::collection::vec(gaussian(), 15)) {
        let m = sparse(&rows);
        let b = m.mul_vec(&x[..m.cols()]).unwrap();
        prop_assert!(is_solvable(&m, &b).unwrap());
    }

    #[test]
    fn square_rank_and_determinant(n in 1usize..=6, seed in dense(6, 6, 70)) {
        let rows: Vec<Vec<G>> = seed[..n].iter().map(|r| r[..n].to_vec()).collect();
        prop_assert_eq!(rank(&sparse(&rows)) == n, !determinant(&rows).is_zero());
    }
}
