//! Brute-force oracles written against plain integer vectors, compared with
//! the library on small cases.

mod common;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use rand::Rng;

use amenact::abelian::{groups_of_order, AbelianGroup, FiniteSubset, GroupElement, Subgroup};
use amenact::duality::{annihilator, cotrajectory, dual_action, OpenSubgroup, WindowedProfinite, DEFAULT_DUAL_BOUND};
use amenact::entropy::{action_from_generators, subgroup_trajectory, trajectory, Endomorphism, DEFAULT_ELEMENT_BUDGET};
use amenact::folner::semidirect_defect;
use amenact::monoid::{MElement, MSubset, Monoid};

use common::*;

type V = Vec<i128>;

fn vecs(g: &AbelianGroup) -> Vec<V> {
    g.elements(1 << 16)
        .unwrap()
        .into_iter()
        .map(|e| match e {
            GroupElement::Dense(v) => v,
            _ => unreachable!(),
        })
        .collect()
}

fn dense(e: &GroupElement) -> V {
    match e {
        GroupElement::Dense(v) => v.clone(),
        _ => unreachable!(),
    }
}

fn add(a: &V, b: &V, n: &[u64]) -> V {
    a.iter().zip(b).zip(n).map(|((x, y), &m)| (x + y).rem_euclid(m as i128)).collect()
}

fn closure(gens: &[V], n: &[u64]) -> HashSet<V> {
    let zero = vec![0i128; n.len()];
    let mut seen: HashSet<V> = HashSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = add(&x, g, n);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

/// `⟨x, χ⟩ = 0` iff `Σ x_i χ_i L/n_i ≡ 0 (mod L)`.
fn kills(x: &V, chi: &V, n: &[u64]) -> bool {
    let l = n.iter().fold(1u64, |a, &b| num_integer::lcm(a, b)) as i128;
    x.iter().zip(chi).zip(n).map(|((a, b), &m)| a * b % m as i128 * (l / m as i128)).sum::<i128>() % l == 0
}

fn sumset(a: &HashSet<V>, b: &HashSet<V>, n: &[u64]) -> HashSet<V> {
    a.iter().flat_map(|x| b.iter().map(move |y| add(x, y, n))).collect()
}

/// `x ↦ Mx` with reduction, independent of the library.
fn mat(m: &[Vec<i128>], x: &V, n: &[u64]) -> V {
    m.iter().zip(n).map(|(row, &k)| row.iter().zip(x).map(|(a, b)| a * b).sum::<i128>().rem_euclid(k as i128)).collect()
}

fn mat_pow_apply(m: &[Vec<i128>], k: i64, x: &V, n: &[u64]) -> V {
    (0..k).fold(x.clone(), |acc, _| mat(m, &acc, n))
}

#[test]
fn subgroup_orders_match_closures() {
    let mut r = rng(1);
    for _ in 0..300 {
        let g = random_finite_group(&mut r, 96);
        let n = factors(&g).to_vec();
        let k = r.gen_range(0..=3);
        let gens: Vec<GroupElement> = (0..k).map(|_| random_element(&g, &mut r)).collect();
        let b = Subgroup::generated(&g, gens.clone()).unwrap();
        let c = closure(&gens.iter().map(dense).collect::<Vec<_>>(), &n);
        assert_eq!(*b.order().finite().unwrap(), BigUint::from(c.len()), "{g} {gens:?}");
        for x in vecs(&g) {
            assert_eq!(b.contains(&GroupElement::dense(x.clone())), c.contains(&x));
        }
    }
}

#[test]
fn annihilators_match_character_enumeration() {
    let mut r = rng(2);
    for _ in 0..200 {
        let g = random_finite_group(&mut r, 64);
        let n = factors(&g).to_vec();
        let b = random_subgroup(&g, &mut r);
        let gens: Vec<V> = b.generators().unwrap().iter().map(dense).collect();
        let perp = annihilator(&b, DEFAULT_DUAL_BOUND).unwrap();
        let mut count = 0usize;
        for chi in vecs(&g) {
            let k = gens.iter().all(|x| kills(x, &chi, &n));
            count += usize::from(k);
            assert_eq!(perp.contains(&GroupElement::dense(chi.clone())), k, "{g} {b:?} χ={chi:?}");
        }
        assert_eq!(*perp.order().finite().unwrap(), BigUint::from(count));
    }
}

#[test]
fn trajectories_match_sumsets() {
    let mut r = rng(3);
    let nat = Monoid::naturals(1);
    for _ in 0..200 {
        let g = random_finite_group(&mut r, 64);
        let n = factors(&g).to_vec();
        let phi = random_endomorphism(&n, &mut r);
        let Endomorphism::CongruentMatrix(m) = &phi else { unreachable!() };
        let a = action_from_generators(&nat, &g, vec![phi.clone()]).unwrap();
        let f = random_interval_subset(&nat, &mut r, 0, 6, 4);
        let x = random_set(&g, &mut r, 3);
        let xs: Vec<V> = x.iter().map(|e| dense(&e)).collect();
        let mut acc: HashSet<V> = HashSet::from([vec![0; n.len()]]);
        for s in f.iter() {
            let img: HashSet<V> = xs.iter().map(|v| mat_pow_apply(m, s.0[0], v, &n)).collect();
            acc = sumset(&acc, &img, &n);
        }
        assert_eq!(trajectory(&a, &f, &x, DEFAULT_ELEMENT_BUDGET).unwrap().len(), acc.len() as u128);
    }
}

#[test]
fn cotrajectory_indices_match_character_counts() {
    let mut r = rng(4);
    let nat = Monoid::naturals(1);
    for _ in 0..200 {
        let g = random_finite_group(&mut r, 48);
        let n = factors(&g).to_vec();
        let phi = random_endomorphism(&n, &mut r);
        let Endomorphism::CongruentMatrix(m) = &phi else { unreachable!() };
        let a = action_from_generators(&nat, &g, vec![phi.clone()]).unwrap();
        let f = random_interval_subset(&nat, &mut r, 0, 5, 3);
        let b = random_subgroup(&g, &mut r);
        let gens: Vec<V> = b.generators().unwrap().iter().map(dense).collect();
        // χ ∈ C_F iff χ kills α(s)B for every s ∈ F.
        let moved: Vec<V> = f.iter().flat_map(|s| gens.iter().map(|x| mat_pow_apply(m, s.0[0], x, &n))).collect();
        let survivors = vecs(&g).into_iter().filter(|chi| moved.iter().all(|x| kills(x, chi, &n))).count();
        let order = g.order().unwrap();
        let gamma = dual_action(&a, None).unwrap();
        let u = OpenSubgroup::finite(annihilator(&b, DEFAULT_DUAL_BOUND).unwrap()).unwrap();
        let c = cotrajectory(&gamma, &f, &u).unwrap();
        assert_eq!(c.index(), order / BigUint::from(survivors), "{g} {phi:?} {b:?} {f:?}");
        let t = subgroup_trajectory(&a, &f, &b).unwrap();
        assert_eq!(*t.order().finite().unwrap(), c.index());
    }
}

#[test]
fn four_x_counts_match_integer_sumsets() {
    let z = AbelianGroup::integers();
    let nat = Monoid::naturals(1);
    let a = action_from_generators(&nat, &z, vec![Endomorphism::scalar(&z, 4)]).unwrap();
    for seed in [vec![0i128, 1], vec![0, 1, 4, 5], vec![0, 3, 7]] {
        let mut acc: BTreeSet<i128> = BTreeSet::from([0]);
        for k in 1..=9u32 {
            let p = 4i128.pow(k - 1);
            acc = acc.iter().flat_map(|x| seed.iter().map(move |y| x + p * y)).collect();
            let f = MSubset::interval(&nat, 0, k as i64).unwrap();
            let t = trajectory(&a, &f, &FiniteSubset::integers(seed.clone()), DEFAULT_ELEMENT_BUDGET).unwrap();
            assert_eq!(t.len(), acc.len() as u128, "seed {seed:?}, n={k}");
        }
    }
}

/// Group law `(v, c)(w, d) = (v + φ^c w, c + d)` with `φ(c)(w₁, w₂) = (w₁ + c w₂, w₂)`.
fn semidirect_mul(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] + b[0] + a[2] * b[1], a[1] + b[1], a[2] + b[2]]
}

#[test]
fn semidirect_defect_matches_direct_count() {
    let g = Monoid::heisenberg_like();
    for (n, m) in [(1, 1), (3, 5), (4, 4), (6, 9), (9, 6)] {
        for x in [[0, 1, 0], [1, 0, 0], [2, -1, 1], [0, 0, 1]] {
            let inside = |p: [i64; 3]| (0..m).contains(&p[0]) && (0..m).contains(&p[1]) && (0..n).contains(&p[2]);
            let mut out = 0u128;
            for a in 0..m {
                for b in 0..m {
                    for c in 0..n {
                        out += u128::from(!inside(semidirect_mul([a, b, c], x)));
                    }
                }
            }
            let d = semidirect_defect(&g, n as u64, m as u64, &MElement(x.to_vec()), 1 << 20).unwrap();
            assert_eq!(d, num_rational::Ratio::new(out, (m * m * n) as u128), "n={n} m={m} x={x:?}");
        }
    }
}

fn partitions(k: u32) -> usize {
    fn go(k: u32, max: u32) -> usize {
        if k == 0 {
            return 1;
        }
        (1..=max.min(k)).map(|p| go(k - p, p)).sum()
    }
    go(k, k)
}

#[test]
fn group_counts_are_products_of_partition_numbers() {
    for n in 1..=200u64 {
        let mut m = n;
        let mut expect = 1;
        let mut p = 2;
        while m > 1 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            expect *= partitions(e);
            p += 1;
        }
        assert_eq!(groups_of_order(n).len(), expect, "order {n}");
    }
}

#[test]
fn subgroup_lattices_match_closures_of_small_tuples() {
    let cases: Vec<AbelianGroup> = vec![
        AbelianGroup::finite(vec![6]).unwrap(),
        AbelianGroup::finite(vec![2, 4]).unwrap(),
        AbelianGroup::finite(vec![3, 9]).unwrap(),
        AbelianGroup::finite(vec![4, 4]).unwrap(),
        AbelianGroup::finite(vec![2, 2, 2]).unwrap(),
        AbelianGroup::finite(vec![2, 12]).unwrap(),
    ];
    for g in cases {
        let n = factors(&g).to_vec();
        let elems = vecs(&g);
        let mut brute: HashSet<BTreeSet<V>> = HashSet::new();
        for a in &elems {
            for b in &elems {
                if n.len() == 3 {
                    for c in &elems {
                        brute.insert(closure(&[a.clone(), b.clone(), c.clone()], &n).into_iter().collect());
                    }
                } else {
                    brute.insert(closure(&[a.clone(), b.clone()], &n).into_iter().collect());
                }
            }
        }
        assert_eq!(Subgroup::all(&g, 10_000).unwrap().len(), brute.len(), "{g}");
    }
}

#[test]
fn windowed_shift_indices_match_powers() {
    let mut r = rng(5);
    let nat = Monoid::naturals(1);
    for p in [2u64, 3, 5] {
        let g = AbelianGroup::direct_sum(vec![p], nat.clone()).unwrap();
        let a = action_from_generators(&nat, &g, vec![Endomorphism::shift(&g, vec![1]).unwrap()]).unwrap();
        let b = Subgroup::generated(&g, [GroupElement::unit(MElement(vec![0]), vec![1])]).unwrap();
        let w = WindowedProfinite::boxed(vec![p], &nat, &[0], &[12]).unwrap();
        let gamma = dual_action(&a, Some(w.clone())).unwrap();
        let u = w.annihilator(&b).unwrap();
        for _ in 0..30 {
            let f = random_interval_subset(&nat, &mut r, 0, 12, 6);
            let expect = BigUint::from(p).pow(f.len() as u32);
            assert_eq!(*subgroup_trajectory(&a, &f, &b).unwrap().order().finite().unwrap(), expect);
            assert_eq!(cotrajectory(&gamma, &f, &u).unwrap().index(), expect);
        }
    }
}
