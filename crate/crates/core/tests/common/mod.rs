//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use fsslab_core::hermitian::HermitianMetric;
use fsslab_core::linalg::{rat, GaussianRational as G, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A positive rational with small numerator and denominator.
pub fn positive_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(1..=9), r.gen_range(1..=5))
}

pub fn small_gaussian(r: &mut ChaCha8Rng) -> G {
    G::new(rat(r.gen_range(-3..=3), r.gen_range(1..=3)), rat(r.gen_range(-3..=3), r.gen_range(1..=3)))
}

/// `H = A A* + I` for a random Gaussian-rational `A`.
pub fn positive_hermitian(r: &mut ChaCha8Rng, n: usize) -> HermitianMetric {
    let a: Vec<Vec<G>> = (0..n).map(|_| (0..n).map(|_| small_gaussian(r)).collect()).collect();
    let h: Vec<Vec<G>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|l| {
                    let s = (0..n).fold(G::from_int(0), |acc, j| acc + &a[k][j] * &a[l][j].conj());
                    if k == l {
                        s + G::from_int(1)
                    } else {
                        s
                    }
                })
                .collect()
        })
        .collect();
    HermitianMetric::from_h(h).expect("A A* + I is positive definite")
}

pub fn diagonal_metric(r: &mut ChaCha8Rng, n: usize) -> (Vec<Rational>, HermitianMetric) {
    let rho: Vec<Rational> = (0..n).map(|_| positive_rational(r)).collect();
    let m = HermitianMetric::diagonal(&rho).expect("positive weights");
    (rho, m)
}
