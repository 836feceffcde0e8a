//! Expected `E_r^{0,2}` dimensions for both families, with rational sample
//! tuples for every row, the algebra each sample corresponds to, and the
//! balanced-metric witnesses.

use std::collections::BTreeMap;

use crate::hermitian::HermitianMetric;
use crate::linalg::{rat, GaussianRational as G, Rational};

use super::{FamilyI, FamilyII, FamilyTuple};

/// A sample tuple and, when it can be evaluated over the rationals, the
/// algebra and parameters it corresponds to.
#[derive(Clone, Debug)]
pub struct Sample {
    pub tuple: FamilyTuple,
    pub nla: Option<(&'static str, Vec<Rational>)>,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub table: u8,
    /// Row label as printed in the table.
    pub row: &'static str,
    pub ascending: &'static str,
    /// `(e_1, e_2, e_3)` at bidegree `(0,2)`.
    pub expected: [usize; 3],
    pub sequence: &'static str,
    /// Algebra column, symbolic.
    pub nla: &'static str,
    pub samples: Vec<Sample>,
}

fn i1(eps: u8, nu: u8, a: (i64, i64), b: (i64, i64), delta: i8) -> FamilyTuple {
    FamilyTuple::I(FamilyI::ints(eps, nu, a, b, delta))
}

fn i2(eps: u8, mu: u8, nu: u8, a: (i64, i64), b: (i64, i64)) -> FamilyTuple {
    FamilyTuple::II(FamilyII::ints(eps, mu, nu, a, b))
}

fn s(tuple: FamilyTuple, nla: &'static str, params: &[(i64, i64)]) -> Sample {
    Sample { tuple, nla: Some((nla, params.iter().map(|&(p, q)| rat(p, q)).collect())) }
}

fn s_none(tuple: FamilyTuple) -> Sample {
    Sample { tuple, nla: None }
}

const ONE: (i64, i64) = (1, 1);
const ZERO: (i64, i64) = (0, 1);

/// Family I rows, `J ≡ (ε, ν, a, b)`; samples are `(ε, ν, a, b, δ)`.
pub fn table1() -> Vec<TableRow> {
    let row = |row, ascending, expected, sequence, nla, samples| TableRow { table: 1, row, ascending, expected, sequence, nla, samples };
    const D12: &str = "E1 != E2 = Einf";
    const D1: &str = "E1 = Einf";
    const D23: &str = "E1 = E2 != E3 = Einf";
    vec![
        row(
            "(0,0,1,b), b in {0,1}",
            "(1,3,8)",
            [4, 2, 2],
            D12,
            "g1^b",
            vec![s(i1(0, 0, ONE, ZERO, 1), "g1", &[ZERO]), s(i1(0, 0, ONE, ONE, 1), "g1", &[ONE]), s(i1(0, 0, ONE, ONE, -1), "g1", &[ONE])],
        ),
        row(
            "(0,1,1,delta/2)",
            "(1,3,6,8)",
            [4, 3, 3],
            D12,
            "g2^(-4 delta b)",
            vec![s(i1(0, 1, ONE, (1, 2), 1), "g2", &[(-2, 1)]), s(i1(0, 1, ONE, (-1, 2), -1), "g2", &[(-2, 1)])],
        ),
        row(
            "(0,1,1,b), b != delta/2",
            "(1,3,6,8)",
            [4, 2, 2],
            D12,
            "g2^(-4 delta b)",
            vec![
                s(i1(0, 1, ONE, ONE, 1), "g2", &[(-4, 1)]),
                s(i1(0, 1, ONE, (-1, 2), 1), "g2", &[(2, 1)]),
                s(i1(0, 1, ONE, ZERO, 1), "g2", &[ZERO]),
                s(i1(0, 1, ONE, (3, 1), -1), "g2", &[(12, 1)]),
            ],
        ),
        row(
            "(1,1,a,0), a in (0,2)",
            "(1,3,6,8)",
            [4, 3, 3],
            D12,
            "g2^0",
            vec![s(i1(1, 1, ONE, ZERO, 1), "g2", &[ZERO]), s(i1(1, 1, (1, 2), ZERO, -1), "g2", &[ZERO])],
        ),
        row("(1,1,2,0)", "(1,3,6,8)", [4, 3, 3], D12, "g3^1", vec![s(i1(1, 1, (2, 1), ZERO, 1), "g3", &[ONE])]),
        row(
            "(1,1,a,0), a in (2,inf)",
            "(1,3,6,8)",
            [4, 3, 3],
            D12,
            "g3^0",
            vec![s(i1(1, 1, (3, 1), ZERO, 1), "g3", &[ZERO]), s(i1(1, 1, (5, 2), ZERO, -1), "g3", &[ZERO])],
        ),
        row("(1,0,1,0)", "(1,3,6,8)", [4, 3, 3], D12, "g3^0", vec![s(i1(1, 0, ONE, ZERO, 1), "g3", &[ZERO])]),
        row(
            "(1,0,1,1)",
            "(1,3,6,8)",
            [4, 4, 4],
            D1,
            "g4^(sa/b, |b-2 delta nu|/a)",
            vec![s(i1(1, 0, ONE, ONE, 1), "g4", &[ONE, ONE]), s(i1(1, 0, ONE, ONE, -1), "g4", &[ONE, ONE])],
        ),
        row(
            "(1,0,1,b), b in R+ - {1}",
            "(1,3,6,8)",
            [4, 4, 3],
            D23,
            "g4^(sa/b, |b-2 delta nu|/a)",
            vec![s(i1(1, 0, ONE, (1, 2), 1), "g4", &[(2, 1), (1, 2)]), s(i1(1, 0, ONE, (2, 1), -1), "g4", &[(1, 2), (2, 1)])],
        ),
        row(
            "(1,1,a,b), a > 0, b != 0, Theta = 0",
            "(1,3,6,8)",
            [4, 4, 4],
            D1,
            "g4^(sa/b, |b-2 delta nu|/a)",
            vec![
                // b = 2δν makes s = 0, outside the parameter range of g4.
                s_none(i1(1, 1, (4, 1), (2, 1), 1)),
                s(i1(1, 1, (3, 2), (1, 2), 1), "g4", &[(-3, 1), ONE]),
                s(i1(1, 1, (1, 2), (-1, 2), -1), "g4", &[(-1, 1), (3, 1)]),
            ],
        ),
        row(
            "(1,1,a,b), a > 0, b != 0, Theta != 0",
            "(1,3,6,8)",
            [4, 4, 3],
            D23,
            "g4^(sa/b, |b-2 delta nu|/a)",
            vec![
                s(i1(1, 1, ONE, ONE, 1), "g4", &[(-1, 1), ONE]),
                s(i1(1, 1, ONE, (-1, 1), 1), "g4", &[ONE, (3, 1)]),
                s(i1(1, 1, (2, 1), ONE, -1), "g4", &[(2, 1), (3, 2)]),
            ],
        ),
        row(
            "(1,1,0,2 delta)",
            "(1,4,8)",
            [4, 4, 4],
            D1,
            "g5",
            vec![s(i1(1, 1, ZERO, (2, 1), 1), "g5", &[]), s(i1(1, 1, ZERO, (-2, 1), -1), "g5", &[])],
        ),
        row(
            "(1,0,0,1)",
            "(1,4,6,8)",
            [4, 3, 3],
            D12,
            "g6",
            vec![s(i1(1, 0, ZERO, ONE, 1), "g6", &[]), s(i1(1, 0, ZERO, ONE, -1), "g6", &[])],
        ),
        row(
            "(1,1,0,b), b != 0, 2 delta",
            "(1,4,6,8)",
            [4, 3, 3],
            D12,
            "g6",
            vec![s(i1(1, 1, ZERO, ONE, 1), "g6", &[]), s(i1(1, 1, ZERO, (-1, 1), 1), "g6", &[]), s(i1(1, 1, ZERO, (2, 1), -1), "g6", &[])],
        ),
        row("(0,0,0,1)", "(1,5,8)", [4, 4, 4], D1, "g7", vec![s(i1(0, 0, ZERO, ONE, 1), "g7", &[]), s(i1(0, 0, ZERO, ONE, -1), "g7", &[])]),
        row(
            "(0,1,0,b), b in {-1,1}",
            "(1,5,6,8)",
            [4, 2, 2],
            D12,
            "g8",
            vec![s(i1(0, 1, ZERO, ONE, 1), "g8", &[]), s(i1(0, 1, ZERO, (-1, 1), 1), "g8", &[]), s(i1(0, 1, ZERO, ONE, -1), "g8", &[])],
        ),
    ]
}

/// Family II rows, `J ≡ (ε, μ, ν, a, b)`.
pub fn table2() -> Vec<TableRow> {
    let row = |row, ascending, expected, sequence, nla, samples| TableRow { table: 2, row, ascending, expected, sequence, nla, samples };
    const D1: &str = "E1 = Einf";
    const D23: &str = "E1 = E2 != E3 = Einf";
    vec![
        row("(0,1,0,0,0)", "(1,3,5,8)", [2, 2, 2], D1, "g9^0", vec![s(i2(0, 1, 0, ZERO, ZERO), "g9", &[ZERO])]),
        row("(0,1,0,1,0)", "(1,3,5,8)", [2, 2, 2], D1, "g9^1", vec![s(i2(0, 1, 0, ONE, ZERO), "g9", &[ONE])]),
        row(
            "(1,0,0,a,0), a in {0,1}",
            "(1,3,5,8)",
            [2, 2, 2],
            D1,
            "g10^0",
            vec![s(i2(1, 0, 0, ZERO, ZERO), "g10", &[ZERO]), s(i2(1, 0, 0, ONE, ZERO), "g10", &[ZERO])],
        ),
        row(
            "(1,0,0,a,b), a in {0,1}, b != 0",
            "(1,3,5,8)",
            [2, 2, 2],
            D1,
            "g10^1",
            vec![s(i2(1, 0, 0, ZERO, ONE), "g10", &[ONE]), s(i2(1, 0, 0, ONE, (-1, 2)), "g10", &[ONE])],
        ),
        row("(1,1,0,0,0)", "(1,3,5,8)", [2, 2, 1], D23, "g11^(0,0)", vec![s(i2(1, 1, 0, ZERO, ZERO), "g11", &[ZERO, ZERO])]),
        row(
            "(1,1,0,a,0), a != 0",
            "(1,3,5,8)",
            [2, 2, 1],
            D23,
            "g11^(1,0)",
            vec![s(i2(1, 1, 0, ONE, ZERO), "g11", &[ONE, ZERO]), s(i2(1, 1, 0, (-2, 1), ZERO), "g11", &[ONE, ZERO])],
        ),
        row(
            "(1,1,0,a,b), b != 0",
            "(1,3,5,8)",
            [2, 2, 1],
            D23,
            "g11^(2 sqrt3 |a|/|b|, 1)",
            vec![
                s(i2(1, 1, 0, ZERO, ONE), "g11", &[ZERO, ONE]),
                // 2√3|a|/|b| is irrational for these.
                s_none(i2(1, 1, 0, ONE, ONE)),
                s_none(i2(1, 1, 0, (1, 2), (-3, 1))),
            ],
        ),
        row(
            "(1,0,1,a,0)",
            "(1,3,5,6,8)",
            [2, 2, 2],
            D1,
            "g12^0",
            vec![s(i2(1, 0, 1, ZERO, ZERO), "g12", &[ZERO]), s(i2(1, 0, 1, ONE, ZERO), "g12", &[ZERO])],
        ),
        row(
            "(1,0,1,a,b), b != 0",
            "(1,3,5,6,8)",
            [2, 2, 2],
            D1,
            "g12^1",
            vec![s(i2(1, 0, 1, ZERO, ONE), "g12", &[ONE]), s(i2(1, 0, 1, ONE, (-1, 1)), "g12", &[ONE])],
        ),
    ]
}

pub fn table(k: u8) -> Option<Vec<TableRow>> {
    match k {
        1 => Some(table1()),
        2 => Some(table2()),
        _ => None,
    }
}

fn from_x(diag: [Rational; 4], off: &[((usize, usize), G)]) -> HermitianMetric {
    let off: BTreeMap<(usize, usize), G> = off.iter().cloned().collect();
    HermitianMetric::from_x(4, &diag, &off).expect("witness metrics are positive definite")
}

/// An explicit balanced metric for a tuple that admits one, or `None`.
pub fn balanced_witness(t: &FamilyTuple) -> Option<HermitianMetric> {
    let one = || rat(1, 1);
    match t {
        FamilyTuple::I(t) if t.eps == 0 && t.nu == 0 => {
            if t.b == rat(0, 1) {
                Some(from_x([one(), one(), one(), one()], &[]))
            } else {
                let delta = G::from_int(t.delta.into());
                Some(from_x(
                    [one(), rat(4, 1), one(), one()],
                    &[((1, 2), G::i()), ((2, 3), delta.scale(&rat(1, 2))), ((2, 4), G::i().scale(&t.a))],
                ))
            }
        }
        FamilyTuple::II(t) if t.nu == 0 && t.mu == 1 => {
            let x22 = &t.a * &t.a + rat(3, 4);
            Some(from_x([one(), x22, one(), one()], &[((1, 3), G::from_real(rat(1, 2))), ((2, 4), G::from_real(-t.a.clone()))]))
        }
        FamilyTuple::II(t) if t.eps == 1 && t.mu == 0 && t.nu == 0 && t.a == rat(0, 1) => Some(from_x([one(), one(), one(), one()], &[])),
        _ => None,
    }
}

/// Classified tuples that admit balanced metrics, one sample per class.
pub fn balanced_tuples() -> Vec<FamilyTuple> {
    vec![
        i1(0, 0, ZERO, ONE, 1),
        i1(0, 0, ZERO, ONE, -1),
        i1(0, 0, ONE, ZERO, 1),
        i1(0, 0, ONE, ONE, 1),
        i1(0, 0, ONE, ONE, -1),
        i2(1, 1, 0, ZERO, ZERO),
        i2(1, 1, 0, (2, 3), (-5, 2)),
        i2(1, 0, 0, ZERO, ZERO),
        i2(1, 0, 0, ZERO, (3, 1)),
        i2(0, 1, 0, ZERO, ZERO),
        i2(0, 1, 0, ONE, ZERO),
    ]
}

/// Classified tuples for which no metric is balanced: Family I with
/// `ε = 1` and Family II with `a = 1, μ = 0, ν = 0`.
pub fn non_balanced_tuples() -> Vec<FamilyTuple> {
    vec![
        i1(1, 0, ZERO, ONE, 1),
        i1(1, 0, ONE, (1, 2), -1),
        i1(1, 1, ONE, ONE, 1),
        i1(1, 1, (2, 1), ZERO, 1),
        i2(1, 0, 0, ONE, ZERO),
        i2(1, 0, 0, ONE, (-2, 1)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_sample_is_classified() {
        for row in table1().into_iter().chain(table2()) {
            assert!(!row.samples.is_empty(), "{}", row.row);
            for s in &row.samples {
                assert!(s.tuple.is_classified(), "{} in row {}", s.tuple, row.row);
            }
        }
        for t in balanced_tuples().into_iter().chain(non_balanced_tuples()) {
            assert!(t.is_classified(), "{t}");
        }
    }

    #[test]
    fn theta_rows_split_correctly() {
        for row in table1() {
            for s in &row.samples {
                let FamilyTuple::I(t) = &s.tuple else { unreachable!() };
                if row.row.contains("Theta = 0") {
                    assert_eq!(t.theta(), rat(0, 1));
                } else if row.row.contains("Theta != 0") {
                    assert_ne!(t.theta(), rat(0, 1));
                }
            }
        }
    }

    #[test]
    fn witnesses_reproduce_minors() {
        let t = FamilyI::ints(0, 0, ONE, ONE, 1);
        let m = balanced_witness(&FamilyTuple::I(t)).unwrap();
        assert_eq!(m.cofactor(1, 2).unwrap(), G::from_int(1));
        assert_eq!(m.cofactor(1, 3).unwrap(), G::from_ratios(0, 1, 1, 2));
        assert_eq!(m.cofactor(1, 4).unwrap(), G::from_int(-1));
        assert_eq!(m.cofactor(2, 2).unwrap(), G::from_int(1));
        let t2 = FamilyII::ints(1, 1, 0, (2, 1), ZERO);
        let m2 = balanced_witness(&FamilyTuple::II(t2)).unwrap();
        assert_eq!(m2.cofactor(1, 1).unwrap(), G::from_ratios(3, 4, 0, 1));
        assert_eq!(m2.cofactor(1, 3).unwrap(), G::from_ratios(0, 1, -3, 8));
        assert_eq!(m2.cofactor(2, 4).unwrap(), G::from_ratios(0, 1, 3 * 2, 4));
    }
}
