//! Random fixtures shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use amenact::abelian::{groups_up_to, AbelianGroup, FiniteSubset, GroupElement, Subgroup};
use amenact::entropy::{action_from_generators, congruent_ok, Action, Endomorphism};
use amenact::monoid::{MElement, MSubset, Monoid};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entry `(i,j)` is a multiple of `n_i / gcd(n_i, n_j)`.
pub fn random_endomorphism(factors: &[u64], rng: &mut ChaCha8Rng) -> Endomorphism {
    let k = factors.len();
    let m: Vec<Vec<i128>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let step = factors[i] / num_integer::gcd(factors[i], factors[j]);
                    (rng.gen_range(0..factors[i]) * step % factors[i]) as i128
                })
                .collect()
        })
        .collect();
    assert!(congruent_ok(&m, factors));
    Endomorphism::CongruentMatrix(m)
}

pub fn random_finite_group(rng: &mut ChaCha8Rng, max_order: u64) -> AbelianGroup {
    let all = groups_up_to(max_order);
    all[rng.gen_range(1..all.len())].clone()
}

pub fn factors(g: &AbelianGroup) -> &[u64] {
    match g {
        AbelianGroup::FiniteProduct { factors } => factors,
        _ => panic!("not a finite product"),
    }
}

/// An `ℕ`-action on a finite group, on `ℤ` by a scalar, or on `ℤ²` by a
/// small integer matrix.
pub fn random_action(rng: &mut ChaCha8Rng) -> Action {
    let n = Monoid::naturals(1);
    match rng.gen_range(0..3) {
        0 => {
            let g = random_finite_group(rng, 48);
            let phi = random_endomorphism(factors(&g), rng);
            action_from_generators(&n, &g, vec![phi]).unwrap()
        }
        1 => {
            let z = AbelianGroup::integers();
            let k = rng.gen_range(-3..=3);
            action_from_generators(&n, &z, vec![Endomorphism::scalar(&z, k)]).unwrap()
        }
        _ => {
            let g = AbelianGroup::FreeZ { rank: 2 };
            let m = (0..2).map(|_| (0..2).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            action_from_generators(&n, &g, vec![Endomorphism::IntegerMatrix(m)]).unwrap()
        }
    }
}

pub fn random_element(g: &AbelianGroup, rng: &mut ChaCha8Rng) -> GroupElement {
    match g {
        AbelianGroup::FiniteProduct { factors } => {
            GroupElement::dense(factors.iter().map(|&n| rng.gen_range(0..n) as i128).collect())
        }
        AbelianGroup::FreeZ { rank } => GroupElement::dense((0..*rank).map(|_| rng.gen_range(-3..=3)).collect()),
        AbelianGroup::DirectSum { base, .. } => {
            let k = rng.gen_range(0..4);
            GroupElement::unit(MElement(vec![k]), base.iter().map(|&n| rng.gen_range(0..n as i64)).collect())
        }
    }
}

pub fn random_set(g: &AbelianGroup, rng: &mut ChaCha8Rng, max: usize) -> FiniteSubset {
    let k = rng.gen_range(1..=max);
    FiniteSubset::new(g, (0..k).map(|_| random_element(g, rng))).unwrap()
}

pub fn random_subgroup(g: &AbelianGroup, rng: &mut ChaCha8Rng) -> Subgroup {
    let k = rng.gen_range(0..=2);
    Subgroup::generated(g, (0..k).map(|_| random_element(g, rng))).unwrap()
}

/// A nonempty subset of `[lo, hi)` in `ℕ` or `ℤ`.
pub fn random_interval_subset(m: &Monoid, rng: &mut ChaCha8Rng, lo: i64, hi: i64, max: usize) -> MSubset {
    let pool: Vec<i64> = (lo..hi).collect();
    let k = rng.gen_range(1..=max.min(pool.len()));
    MSubset::new(m, pool.choose_multiple(rng, k).map(|&x| MElement(vec![x]))).unwrap()
}
pub mod laws;
