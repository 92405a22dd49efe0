//! Lemma-level laws, each a function of an RNG seed so that the proptest
//! suite and the acceptance target draw from the same checks.

use num_rational::Ratio;
use rand::Rng;

use amenact::abelian::{AbelianGroup, FiniteSubset, GroupElement};
use amenact::duality::{annihilator, ct_check, DEFAULT_DUAL_BOUND};
use amenact::entropy::{
    action_from_generators, conjugate_action, f_x, trajectory, Endomorphism, MonoidIso, Seed, DEFAULT_ELEMENT_BUDGET,
};
use amenact::folner::FolnerNet;
use amenact::integral::{integral, sample_axioms};
use amenact::monoid::{CoordKind, MElement, MSubset, Monoid};

use super::*;

pub type Law = Result<(), String>;

macro_rules! ensure {
    ($c:expr) => {
        if !$c {
            return Err(format!("{}", stringify!($c)));
        }
    };
    ($c:expr, $($fmt:tt)+) => {
        if !$c {
            return Err(format!("{}", format!($($fmt)+)));
        }
    };
}

macro_rules! ensure_eq {
    ($a:expr, $b:expr) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{:?} != {:?}", a, b));
        }
    }};
}

const BUDGET: usize = DEFAULT_ELEMENT_BUDGET;

fn z() -> Monoid {
    Monoid::integers(1)
}

fn z2() -> Monoid {
    Monoid::integers(2)
}

fn ints(v: &[i64]) -> MSubset {
    MSubset::new(&z(), v.iter().map(|&x| MElement(vec![x]))).unwrap()
}

/// A set of `k` points in `[lo, lo+40)` and a copy with `j` of them moved.
fn perturbed(rng: &mut rand_chacha::ChaCha8Rng, base: &[i64], lo: i64, j: usize) -> Vec<i64> {
    let mut out = base.to_vec();
    for _ in 0..j {
        let free: Vec<i64> = (lo..lo + 40).filter(|x| !out.contains(x)).collect();
        let i = rng.gen_range(0..out.len());
        out[i] = free[rng.gen_range(0..free.len())];
    }
    out
}

fn distinct(rng: &mut rand_chacha::ChaCha8Rng, lo: i64, k: usize) -> Vec<i64> {
    let mut v: Vec<i64> = (lo..lo + 40).collect();
    for i in 0..k {
        let j = rng.gen_range(i..v.len());
        v.swap(i, j);
    }
    v.truncate(k);
    v
}

fn eps_of(a: &MSubset, b: &MSubset) -> Ratio<u64> {
    Ratio::new(a.sym_diff_len(b) as u64, a.len() as u64)
}

fn cartesian(f: &MSubset, e: &MSubset) -> MSubset {
    MSubset::new(&z2(), f.iter().flat_map(|a| e.iter().map(move |b| MElement(vec![a.0[0], b.0[0]])))).unwrap()
}

pub fn eps_relation_is_reflexive_symmetric_and_triangular(seed: u64) -> Law {
    let mut r = rng(seed);
    let k = r.gen_range(1..12);
    let f = distinct(&mut r, 0, k);
    let j1 = r.gen_range(0..=k);
    let f1 = perturbed(&mut r, &f, 0, j1);
    let j2 = r.gen_range(0..=k);
    let f2 = perturbed(&mut r, &f1, 0, j2);
    let (a, b, c) = (ints(&f), ints(&f1), ints(&f2));
    let (e1, e2) = (eps_of(&a, &b), eps_of(&b, &c));
    ensure!(a.eps_equiv_exact(&a, Ratio::new(0, 1)));
    ensure!(a.eps_equiv_exact(&b, e1) && b.eps_equiv_exact(&a, e1));
    ensure!(b.eps_equiv_exact(&c, e2));
    ensure!(a.eps_equiv_exact(&c, e1 + e2));
    Ok(())
}

pub fn eps_relation_under_unions_products_and_translation(seed: u64) -> Law {
    let mut r = rng(seed);
    let k = r.gen_range(1..10);
    let f = distinct(&mut r, 0, k);
    let j1 = r.gen_range(0..=k);
    let f1 = perturbed(&mut r, &f, 0, j1);
    let l = r.gen_range(1..10);
    let e = distinct(&mut r, 100, l);
    let j = r.gen_range(0..=l);
    let e1 = perturbed(&mut r, &e, 100, j);
    let (fa, fb, ea, eb) = (ints(&f), ints(&f1), ints(&e), ints(&e1));
    let eps = eps_of(&fa, &fb).max(eps_of(&ea, &eb));
    ensure!(fa.union(&ea).eps_equiv_exact(&fb.union(&eb), eps));
    ensure!(cartesian(&fa, &ea).eps_equiv_exact(&cartesian(&fb, &ea), eps));
    ensure!(cartesian(&fa, &ea).eps_equiv_exact(&cartesian(&fb, &eb), eps * 4));
    let s = MElement(vec![r.gen_range(-50..50)]);
    ensure!(fa.right_translate(&s).eps_equiv_exact(&fb.right_translate(&s), eps));
    Ok(())
}

pub fn translates_of_folner_sets(seed: u64) -> Law {
    let mut r = rng(seed);
    let kinds = match r.gen_range(0..3) {
        0 => vec![CoordKind::Int],
        1 => vec![CoordKind::Nat, CoordKind::Nat],
        _ => vec![CoordKind::Int, CoordKind::Nat],
    };
    let m = Monoid::commutative(kinds);
    let pool = m.window(2);
    let k = r.gen_range(1..=4);
    let e = MSubset::new(&m, (0..k).map(|_| pool[r.gen_range(0..pool.len())].clone())).unwrap();
    let n = r.gen_range(1..14);
    let f = FolnerNet::boxes(&m).unwrap().get(n).unwrap();
    let fe = f.product(&e).unwrap();
    let lhs = fe.sym_diff_len(&f);
    let rhs: usize = e.iter().map(|s| f.right_translate(s).sym_diff_len(&f)).sum();
    ensure!(lhs <= rhs);
    // F_n E lies in the box enlarged by the spread of E.
    let mut bound = 1usize;
    for i in 0..m.rank() {
        let fc: Vec<i64> = f.iter().map(|x| x.0[i]).collect();
        let ec: Vec<i64> = e.iter().map(|x| x.0[i]).collect();
        let len = fc.iter().max().unwrap() - fc.iter().min().unwrap() + 1;
        let spread = ec.iter().max().unwrap() - ec.iter().min().unwrap();
        bound *= (len + spread) as usize;
    }
    ensure!(fe.len() >= f.len() && fe.len() <= bound);
    Ok(())
}

pub fn trajectory_length_lies_in_the_integrand_class(seed: u64) -> Law {
    let mut r = rng(seed);
    let a = random_action(&mut r);
    let x = random_set(a.group(), &mut r, 3);
    let f = f_x(&a, &Seed::Set(x), BUDGET).unwrap();
    let rep = sample_axioms(&f, 6, 4, 3, seed).unwrap();
    ensure!(rep.passed(), "{:?}", rep.violations);
    Ok(())
}

pub fn trajectories_of_products(seed: u64) -> Law {
    let mut r = rng(seed);
    let a = random_action(&mut r);
    let n = Monoid::naturals(1);
    let f = random_interval_subset(&n, &mut r, 0, 4, 3);
    let f1 = random_interval_subset(&n, &mut r, 0, 4, 3);
    let ff = f.product(&f1).unwrap();
    // Both inclusions pad repeated summands with 0, so the seed holds 0.
    let x = random_set(a.group(), &mut r, 3).union(&FiniteSubset::zero(a.group())).unwrap();
    let inner = trajectory(&a, &f, &trajectory(&a, &f1, &x, BUDGET).unwrap(), BUDGET).unwrap();
    let direct = trajectory(&a, &ff, &x, BUDGET).unwrap();
    let wide = trajectory(&a, &ff, &x.multiple_sum(f1.len(), None).unwrap(), BUDGET).unwrap();
    ensure!(direct.is_subset(&inner) && inner.is_subset(&wide));
    if a.group().is_finite() {
        let b = random_subgroup(a.group(), &mut r);
        let bs = FiniteSubset::from_subgroup(&b, 1 << 12).unwrap();
        let inner = trajectory(&a, &f, &trajectory(&a, &f1, &bs, BUDGET).unwrap(), BUDGET).unwrap();
        ensure_eq!(trajectory(&a, &ff, &bs, BUDGET).unwrap(), inner);
    }
    Ok(())
}

pub fn trajectories_commute_with_multiples(seed: u64) -> Law {
    let mut r = rng(seed);
    let a = random_action(&mut r);
    let f = random_interval_subset(&Monoid::naturals(1), &mut r, 0, 5, 3);
    let b = random_set(a.group(), &mut r, 3);
    let m = r.gen_range(1..=3);
    let lhs = trajectory(&a, &f, &b.multiple_sum(m, None).unwrap(), BUDGET).unwrap();
    let rhs = trajectory(&a, &f, &b, BUDGET).unwrap().multiple_sum(m, None).unwrap();
    ensure_eq!(lhs, rhs);
    Ok(())
}

pub fn trajectory_sizes_of_sums_and_negatives(seed: u64) -> Law {
    let mut r = rng(seed);
    let a = random_action(&mut r);
    let f = random_interval_subset(&Monoid::naturals(1), &mut r, 0, 5, 4);
    let b = random_set(a.group(), &mut r, 3);
    let c = random_set(a.group(), &mut r, 3);
    let t = |x: &FiniteSubset| trajectory(&a, &f, x, BUDGET).unwrap().len();
    ensure!(t(&b.minkowski_sum(&c, None).unwrap()) <= t(&b) * t(&c));
    ensure_eq!(t(&b.neg()), t(&b));
    let net = FolnerNet::boxes(a.monoid()).unwrap();
    let h = |x: FiniteSubset| integral(&f_x(&a, &Seed::Set(x), BUDGET).unwrap(), &net, 5).unwrap().tail();
    ensure!(h(b.minkowski_sum(&c, None).unwrap()) <= h(b.clone()) + h(c) + 1e-12);
    ensure!((h(b.neg()) - h(b)).abs() < 1e-12);
    Ok(())
}

pub fn conjugate_actions_have_equal_trajectory_sizes(seed: u64) -> Law {
    let mut r = rng(seed);
    let (a, xi, eta) = if r.gen_bool(0.5) {
        // ℤ acting on ℤ² by a unimodular matrix, η(n) = ±n.
        let g = AbelianGroup::FreeZ { rank: 2 };
        let m = unimodular(&mut r);
        let a = action_from_generators(&z(), &g, vec![Endomorphism::IntegerMatrix(m)]).unwrap();
        let sign = if r.gen_bool(0.5) { 1 } else { -1 };
        (a, Endomorphism::IntegerMatrix(unimodular(&mut r)), MonoidIso::new(&z(), &z(), vec![vec![sign]]).unwrap())
    } else {
        let g = random_finite_group(&mut r, 32);
        let phi = random_endomorphism(factors(&g), &mut r);
        let a = action_from_generators(&Monoid::naturals(1), &g, vec![phi]).unwrap();
        let xi = loop {
            let c = random_endomorphism(factors(&g), &mut r);
            if is_automorphism(&c, &g) {
                break c;
            }
        };
        let n = Monoid::naturals(1);
        (a, xi, MonoidIso::new(&n, &n, vec![vec![1]]).unwrap())
    };
    let beta = conjugate_action(&a, &xi, &eta).unwrap();
    let lo = if a.monoid().is_group() { -2 } else { 0 };
    let f = random_interval_subset(a.monoid(), &mut r, lo, lo + 4, 3);
    let x = random_set(a.group(), &mut r, 3);
    let g = a.group().clone();
    let xx = x.map(&g, |e| xi.apply(&g, e).unwrap());
    let lhs = trajectory(&beta, &eta.apply_set(&f).unwrap(), &xx, BUDGET).unwrap().len();
    ensure_eq!(lhs, trajectory(&a, &f, &x, BUDGET).unwrap().len());
    Ok(())
}

pub fn ratios_never_exceed_the_value_at_the_identity(seed: u64) -> Law {
    let mut r = rng(seed);
    let a = random_action(&mut r);
    let x = random_set(a.group(), &mut r, 4);
    let f = f_x(&a, &Seed::Set(x), BUDGET).unwrap();
    let f1 = f.eval(&MSubset::identity(a.monoid())).unwrap();
    let est = integral(&f, &FolnerNet::boxes(a.monoid()).unwrap(), 6).unwrap();
    ensure!(est.rows.iter().all(|row| row.ratio <= f1 + 1e-12));
    ensure!(est.tail() <= f1 + 1e-12);
    Ok(())
}

pub fn annihilator_laws_on_random_subgroups(seed: u64) -> Law {
    let mut r = rng(seed);
    let g = random_finite_group(&mut r, 512);
    let (b1, b2) = (random_subgroup(&g, &mut r), random_subgroup(&g, &mut r));
    let (p1, p2) = (annihilator(&b1, DEFAULT_DUAL_BOUND).unwrap(), annihilator(&b2, DEFAULT_DUAL_BOUND).unwrap());
    ensure_eq!(&annihilator(&p1, DEFAULT_DUAL_BOUND).unwrap(), &b1);
    ensure_eq!(annihilator(&b1.join(&b2).unwrap(), DEFAULT_DUAL_BOUND).unwrap(), p1.meet(&p2).unwrap());
    ensure_eq!(b1.order().finite().unwrap() * p1.order().finite().unwrap(), g.order().unwrap());
    Ok(())
}

pub fn cotrajectory_index_for_two_generator_actions(seed: u64) -> Law {
    let mut r = rng(seed);
    let g = random_finite_group(&mut r, 64);
    let phi = random_endomorphism(factors(&g), &mut r);
    let psi = phi.pow(2, &g).unwrap().compose(&random_power_series(&phi, &g, &mut r), &g).unwrap();
    let n2 = Monoid::naturals(2);
    let a = action_from_generators(&n2, &g, vec![phi, psi]).unwrap();
    let pool = n2.window(2);
    let k = r.gen_range(1..=5);
    let f = MSubset::new(&n2, (0..k).map(|_| pool[r.gen_range(0..pool.len())].clone())).unwrap();
    let b = random_subgroup(&g, &mut r);
    let rep = ct_check(&a, &b, &f, DEFAULT_DUAL_BOUND).unwrap();
    ensure!(rep.equal(), "{:?}", rep);
    Ok(())
}

/// `c₀ + c₁φ` for small `c_i`, which commutes with `φ`.
fn random_power_series(phi: &Endomorphism, g: &AbelianGroup, r: &mut rand_chacha::ChaCha8Rng) -> Endomorphism {
    let Endomorphism::CongruentMatrix(m) = phi else { unreachable!() };
    let (c0, c1) = (r.gen_range(0..3), r.gen_range(0..3));
    let n = factors(g);
    let out = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| (c1 * x + if i == j { c0 } else { 0 }).rem_euclid(n[i] as i128))
                .collect()
        })
        .collect();
    Endomorphism::CongruentMatrix(out)
}

fn unimodular(r: &mut rand_chacha::ChaCha8Rng) -> Vec<Vec<i128>> {
    let mut m = vec![vec![1i128, 0], vec![0, 1]];
    for _ in 0..r.gen_range(1..4) {
        let (i, k) = (r.gen_range(0..2), r.gen_range(-1..=1));
        // Row operation R_i += k R_(1-i).
        for c in 0..2 {
            m[i][c] += k * m[1 - i][c];
        }
    }
    m
}

fn is_automorphism(c: &Endomorphism, g: &AbelianGroup) -> bool {
    let elems = g.elements(1 << 12).unwrap();
    let image: std::collections::HashSet<GroupElement> = elems.iter().map(|e| c.apply(g, e).unwrap()).collect();
    image.len() == elems.len()
}


pub const LAWS: &[(&str, fn(u64) -> Law)] = &[
    ("eps_relation_is_reflexive_symmetric_and_triangular", eps_relation_is_reflexive_symmetric_and_triangular),
    ("eps_relation_under_unions_products_and_translation", eps_relation_under_unions_products_and_translation),
    ("translates_of_folner_sets", translates_of_folner_sets),
    ("trajectory_length_lies_in_the_integrand_class", trajectory_length_lies_in_the_integrand_class),
    ("trajectories_of_products", trajectories_of_products),
    ("trajectories_commute_with_multiples", trajectories_commute_with_multiples),
    ("trajectory_sizes_of_sums_and_negatives", trajectory_sizes_of_sums_and_negatives),
    ("conjugate_actions_have_equal_trajectory_sizes", conjugate_actions_have_equal_trajectory_sizes),
    ("ratios_never_exceed_the_value_at_the_identity", ratios_never_exceed_the_value_at_the_identity),
    ("annihilator_laws_on_random_subgroups", annihilator_laws_on_random_subgroups),
    ("cotrajectory_index_for_two_generator_actions", cotrajectory_index_for_two_generator_actions),
];
