//! Metric predicates on randomly sampled positive Hermitian matrices.

mod common;

use fsslab_core::catalog::{dim3_c1neg_example, small_models};
use fsslab_core::hermitian::{c1_constant, is_balanced, is_kth_gauduchon, is_skt, parse_metric};
use fsslab_core::linalg::rat;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fundamental_form_is_real(seed in any::<u64>(), n in 1usize..=4) {
        let g = common::positive_hermitian(&mut common::rng(seed), n);
        let f = g.fundamental_form();
        prop_assert_eq!(&f.conj(), f);
        prop_assert!(!f.pow(n).is_zero());
    }

    #[test]
    fn metric_file_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let g = common::positive_hermitian(&mut common::rng(seed), n);
        let back = parse_metric(&g.to_metric_file()).unwrap();
        prop_assert_eq!(back.matrix(), g.matrix());
    }

    #[test]
    fn c1_scaling_law(seed in any::<u64>(), num in 1i64..=9, den in 1i64..=9) {
        let m = dim3_c1neg_example();
        let g = common::positive_hermitian(&mut common::rng(seed), 3);
        let lambda = rat(num, den);
        let c = c1_constant(&m, &g).unwrap();
        let scaled = c1_constant(&m, &g.scaled(&lambda).unwrap()).unwrap();
        prop_assert_eq!(scaled, c / lambda);
    }

    #[test]
    fn predicate_implications(k in 0..small_models().len(), seed in any::<u64>()) {
        let m = small_models().swap_remove(k);
        let n = m.dim();
        prop_assume!(n >= 2);
        let g = common::positive_hermitian(&mut common::rng(seed), n);
        let lambda = rat(7, 3);
        let scaled = g.scaled(&lambda).unwrap();
        let balanced = is_balanced(&m, &g).unwrap();
        prop_assert_eq!(balanced, is_balanced(&m, &scaled).unwrap());
        if balanced {
            prop_assert!(is_kth_gauduchon(&m, &g, n - 1).unwrap());
        }
        if is_skt(&m, &g).unwrap() {
            prop_assert!(is_kth_gauduchon(&m, &g, 1).unwrap());
        }
        prop_assert_eq!(is_kth_gauduchon(&m, &g, 1).unwrap(), c1_constant(&m, &g).unwrap() == rat(0, 1));
    }
}
