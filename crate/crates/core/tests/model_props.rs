//! Structural properties of models and page tables on random inputs.

use fsslab_core::catalog::{dim3_c1neg_example, iwasawa, small_models, torus, FamilyI, FamilyII, FamilyTuple};
use fsslab_core::exec::Exec;
use fsslab_core::exterior::Form;
use fsslab_core::fss::{dr_rank, page_dims, PageTable};
use fsslab_core::linalg::{rat, GaussianRational as G};
use fsslab_core::model::ComplexModel;
use fsslab_core::products::{kunneth_page, product_model};
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = G> {
    (-3i64..=3, 1i64..=2, -3i64..=3, 1i64..=2).prop_map(|(a, b, c, d)| G::new(rat(a, b), rat(c, d)))
}

fn small_rational() -> impl Strategy<Value = fsslab_core::linalg::Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

fn family_tuple() -> impl Strategy<Value = FamilyTuple> {
    let one = (0u8..=1, 0u8..=1, small_rational(), small_rational(), prop_oneof![Just(1i8), Just(-1i8)])
        .prop_map(|(e, n, a, b, d)| FamilyTuple::I(FamilyI::new(e, n, a, b, d)));
    let two = (0u8..=1, 0u8..=1, 0u8..=1, small_rational(), small_rational())
        .prop_map(|(e, m, n, a, b)| FamilyTuple::II(FamilyII::new(e, m, n, a, b)));
    prop_oneof![one, two].prop_filter("tuple defines a Lie algebra", |t| t.model().is_ok())
}

fn catalog_index() -> impl Strategy<Value = usize> {
    0..small_models().len()
}

/// A random form on `m` with up to six terms.
fn form_on(n: usize) -> impl Strategy<Value = Form> {
    let mask = 0u64..(1u64 << (2 * n));
    prop::collection::vec((mask, gaussian()), 0..6).prop_map(move |terms| Form::from_terms(n, terms))
}

fn model_and_forms() -> impl Strategy<Value = (ComplexModel, u64, Form)> {
    catalog_index().prop_flat_map(|k| {
        let m = small_models().swap_remove(k);
        let n = m.dim();
        (Just(m), 0u64..(1u64 << (2 * n)), form_on(n))
    })
}

fn euler(t: &PageTable, r: usize) -> i64 {
    (0..=2 * t.n).map(|k| if k % 2 == 0 { t.total(r, k) as i64 } else { -(t.total(r, k) as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn differentials_square_to_zero((m, _, x) in model_and_forms()) {
        let (d, del, delbar) = m.differential(&x);
        prop_assert!(m.differential(&d).0.is_zero());
        prop_assert!(m.del(&del).is_zero());
        prop_assert!(m.delbar(&delbar).is_zero());
        prop_assert!(m.del(&delbar).add(&m.delbar(&del)).is_zero());
        prop_assert_eq!(d, del.add(&delbar));
    }

    #[test]
    fn conjugation_swaps_operators((m, _, x) in model_and_forms()) {
        prop_assert_eq!(m.del(&x).conj(), m.delbar(&x.conj()));
        prop_assert_eq!(m.differential(&x).0.conj(), m.differential(&x.conj()).0);
    }

    #[test]
    fn leibniz_rule((m, mask, y) in model_and_forms(), c in gaussian()) {
        let n = m.dim();
        let x = Form::monomial(n, mask, c);
        let sign = if mask.count_ones() % 2 == 0 { G::from_int(1) } else { G::from_int(-1) };
        let (dx, delx, delbarx) = m.differential(&x);
        let (dy, dely, delbary) = m.differential(&y);
        let xy = x.wedge(&y);
        let (dxy, delxy, delbarxy) = m.differential(&xy);
        prop_assert_eq!(dxy, dx.wedge(&y).add(&x.wedge(&dy).scale(&sign)));
        prop_assert_eq!(delxy, delx.wedge(&y).add(&x.wedge(&dely).scale(&sign)));
        prop_assert_eq!(delbarxy, delbarx.wedge(&y).add(&x.wedge(&delbary).scale(&sign)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn family_page_invariants(t in family_tuple()) {
        let m = t.model().unwrap();
        let n = m.dim();
        let table = page_dims(&m, n + 2, Exec::Parallel).unwrap();
        let betti = m.de_rham_betti(Exec::Parallel);
        let chi = euler(&table, 1);
        for r in 1..=n + 2 {
            prop_assert_eq!(euler(&table, r), chi);
            for p in 0..=n {
                for q in 0..=n {
                    prop_assert_eq!(table.get(r, p, q), table.get(r, n - p, n - q));
                    if r > 1 {
                        prop_assert!(table.get(r, p, q) <= table.get(r - 1, p, q));
                    }
                }
            }
        }
        for (k, b) in betti.iter().enumerate() {
            prop_assert_eq!(table.total(n + 1, k), *b);
        }
        for p in 0..=n {
            for q in 0..=n {
                prop_assert_eq!(table.get(n + 1, p, q), table.get(n + 2, p, q));
            }
        }
    }

    #[test]
    fn page_recurrence(t in family_tuple(), r in 1usize..=3, p in 0i64..=4, q in 0i64..=4) {
        let m = t.model().unwrap();
        let table = page_dims(&m, 4, Exec::Parallel).unwrap();
        let out = dr_rank(&m, r, p, q).unwrap();
        let incoming = dr_rank(&m, r, p - r as i64, q + r as i64 - 1).unwrap();
        let (pu, qu) = (p as usize, q as usize);
        prop_assert_eq!(table.get(r + 1, pu, qu) + out + incoming, table.get(r, pu, qu));
    }

    #[test]
    fn sequential_matches_parallel(t in family_tuple()) {
        let m = t.model().unwrap();
        let a = page_dims(&m, 4, Exec::Sequential).unwrap();
        let b = page_dims(&m, 4, Exec::Parallel).unwrap();
        for r in 1..=4 {
            prop_assert_eq!(a.page(r), b.page(r));
        }
    }
}

fn small_factor(k: usize) -> ComplexModel {
    match k {
        0 => torus(1).unwrap(),
        1 => torus(2).unwrap(),
        2 => iwasawa(),
        _ => dim3_c1neg_example(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn kunneth_on_small_pairs(a in 0usize..4, b in 0usize..4) {
        let (m1, m2) = (small_factor(a), small_factor(b));
        let r_max = m1.dim().min(m2.dim()) + 1;
        let t1 = page_dims(&m1, r_max, Exec::Parallel).unwrap();
        let t2 = page_dims(&m2, r_max, Exec::Parallel).unwrap();
        let prod = product_model(&m1, &m2).unwrap();
        let direct = page_dims(&prod, r_max, Exec::Parallel).unwrap();
        for r in 1..=r_max {
            prop_assert_eq!(kunneth_page(&t1, &t2, r).unwrap(), direct.page(r));
        }
    }
}
