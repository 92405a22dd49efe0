use std::fmt::Write as _;

use num_bigint::BigUint;

use super::windowed::{cotrajectory, dual_action, dual_rows, DualAction, OpenSubgroup, WindowedProfinite};
use super::{annihilator, check_bound, DualityError};
use crate::abelian::{ln_biguint, AbelianGroup, Order, Subgroup};
use crate::entropy::{subgroup_trajectory, Action, EntropyError};
use crate::folner::FolnerNet;
use crate::monoid::{MElement, MSubset, MonoidKind, CoordKind};

/// `|T_F(α, B)|` against `[Â : C_F(α̂, B^⊥)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtReport {
    pub trajectory: BigUint,
    pub index: BigUint,
}

impl CtReport {
    pub fn equal(&self) -> bool {
        self.trajectory == self.index
    }
}

fn finite_order(b: &Subgroup) -> Result<BigUint, DualityError> {
    match b.order() {
        Order::Finite(n) => Ok(n),
        Order::Infinite => Err(EntropyError::NonTorsion(format!("{b:?} is infinite")).into()),
    }
}

fn finite_setup(alpha: &Action, b: &Subgroup, bound: u64) -> Result<(DualAction, OpenSubgroup), DualityError> {
    check_bound(alpha.group(), bound)?;
    let gamma = dual_action(alpha, None)?;
    let u = OpenSubgroup::finite(annihilator(b, bound)?)?;
    Ok((gamma, u))
}

/// Compares both sides for a finite group and one `F`.
pub fn ct_check(alpha: &Action, b: &Subgroup, f: &MSubset, bound: u64) -> Result<CtReport, DualityError> {
    let (gamma, u) = finite_setup(alpha, b, bound)?;
    let t = subgroup_trajectory(alpha, f, b)?;
    let c = cotrajectory(&gamma, f, &u)?;
    Ok(CtReport { trajectory: finite_order(&t)?, index: c.index() })
}

/// `ct_check` for `F = [0, k)`, `k = 1..=kmax`, on `ℕ`, reusing the previous
/// step each time.
pub fn ct_check_prefixes(alpha: &Action, b: &Subgroup, kmax: usize, bound: u64) -> Result<Vec<CtReport>, DualityError> {
    match alpha.monoid().kind() {
        MonoidKind::Commutative(k) if k.as_slice() == [CoordKind::Nat] => {}
        _ => return Err(DualityError::Unsupported("prefix checks need S = ℕ".into())),
    }
    let (gamma, u) = finite_setup(alpha, b, bound)?;
    let mut t = Subgroup::trivial(alpha.group());
    let mut c: Option<OpenSubgroup> = None;
    let mut out = Vec::with_capacity(kmax);
    for k in 0..kmax {
        let s = MElement(vec![k as i64]);
        t = t.join(&alpha.image_subgroup(&s, b)?)?;
        let p = gamma.preimage(&s, &u)?;
        c = Some(match c {
            None => p,
            Some(c) => c.meet(&p)?,
        });
        out.push(CtReport { trajectory: finite_order(&t)?, index: c.as_ref().expect("set").index() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BridgeRow {
    pub index: usize,
    pub label: String,
    pub size: usize,
    pub ln_trajectory: f64,
    pub ln_index: f64,
}

impl BridgeRow {
    pub fn difference(&self) -> f64 {
        self.ln_trajectory - self.ln_index
    }
}

/// Both entropy tables for one seed, row by row.
#[derive(Clone, Debug, PartialEq)]
pub struct BridgeReport {
    pub seed: String,
    pub rows: Vec<BridgeRow>,
    pub window: Option<usize>,
}

impl BridgeReport {
    pub fn max_difference(&self) -> f64 {
        self.rows.iter().map(|r| r.difference().abs()).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,|F|,ℓ(T_F),log-index,difference\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{:.12},{:.12},{:.3e}", r.label, r.size, r.ln_trajectory, r.ln_index, r.difference());
        }
        out
    }
}

/// Smallest window holding the support of `B` and everything `α̂(s)` reads
/// there for `s ∈ F_1 ∪ … ∪ F_prefix`.
fn auto_window(alpha: &Action, b: &Subgroup, sets: &[std::sync::Arc<MSubset>]) -> Result<WindowedProfinite, DualityError> {
    let AbelianGroup::DirectSum { base, index } = alpha.group() else { unreachable!() };
    let mut p: Vec<MElement> = b.generators()?.iter().flat_map(|g| g.support()).collect();
    p.sort();
    p.dedup();
    if p.is_empty() {
        p.push(index.identity());
    }
    let mut coords = p.clone();
    let mut seen = std::collections::BTreeSet::new();
    for f in sets {
        for s in f.iter() {
            if !seen.insert(s.clone()) {
                continue;
            }
            let phi = alpha.alpha(s)?;
            for k in &p {
                coords.extend(dual_rows(&phi, k, index, base)?.into_iter().map(|(j, _)| j));
            }
        }
    }
    WindowedProfinite::new(base.clone(), index, coords)
}

/// For each seed `B`, tabulates `ℓ(T_{F_i}(α, B))` against
/// `log[K : C_{F_i}(α̂, B^⊥)]` along `net`. Direct sums get a window large
/// enough for the whole prefix.
pub fn bridge_check(alpha: &Action, seeds: &[Subgroup], net: &FolnerNet, prefix: usize, bound: u64) -> Result<Vec<BridgeReport>, DualityError> {
    if prefix == 0 {
        return Err(DualityError::Unsupported("prefix must be positive".into()));
    }
    let sets: Vec<_> = (1..=prefix).map(|i| net.get(i)).collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(seeds.len());
    for b in seeds {
        let (gamma, u, window) = match alpha.group() {
            AbelianGroup::FiniteProduct { .. } => {
                let (g, u) = finite_setup(alpha, b, bound)?;
                (g, u, None)
            }
            AbelianGroup::DirectSum { .. } => {
                let w = auto_window(alpha, b, &sets)?;
                let n = w.coords().len();
                let u = w.annihilator(b)?;
                (dual_action(alpha, Some(w))?, u, Some(n))
            }
            g => return Err(DualityError::Unsupported(format!("no dual for {g}"))),
        };
        let rows = crate::par_map(&(0..prefix).collect::<Vec<_>>(), |&i| -> Result<BridgeRow, DualityError> {
            let f = &sets[i];
            let t = finite_order(&subgroup_trajectory(alpha, f, b)?)?;
            let c = cotrajectory(&gamma, f, &u)?;
            Ok(BridgeRow {
                index: i + 1,
                label: net.label(i + 1),
                size: f.len(),
                ln_trajectory: ln_biguint(&t),
                ln_index: c.ln_index(),
            })
        });
        out.push(BridgeReport { seed: format!("{b:?}"), rows: rows.into_iter().collect::<Result<_, _>>()?, window });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::GroupElement;
    use crate::entropy::{action_from_generators, Endomorphism};
    use crate::monoid::Monoid;

    #[test]
    fn prefixes_agree_on_small_group() {
        let g = AbelianGroup::finite(vec![2, 4]).unwrap();
        let m = Endomorphism::CongruentMatrix(vec![vec![1, 1], vec![2, 3]]);
        let a = action_from_generators(&Monoid::naturals(1), &g, vec![m]).unwrap();
        for b in Subgroup::all(&g, 100).unwrap() {
            let reps = ct_check_prefixes(&a, &b, 4, 1 << 10).unwrap();
            assert!(reps.iter().all(CtReport::equal), "{b:?}: {reps:?}");
            let f = MSubset::interval(a.monoid(), 0, 3).unwrap();
            assert_eq!(ct_check(&a, &b, &f, 1 << 10).unwrap(), reps[2]);
        }
    }

    #[test]
    fn bridge_on_two_sided_shift() {
        let z = Monoid::integers(1);
        let g = AbelianGroup::direct_sum(vec![2, 4], z.clone()).unwrap();
        let a = action_from_generators(&z, &g, vec![Endomorphism::shift(&g, vec![1]).unwrap()]).unwrap();
        let b = Subgroup::generated(&g, [GroupElement::unit(MElement(vec![0]), vec![1, 2])]).unwrap();
        let reps = bridge_check(&a, &[b], &FolnerNet::boxes(&z).unwrap(), 5, 1 << 16).unwrap();
        assert!(reps[0].max_difference() < 1e-9);
        let last = reps[0].rows.last().unwrap();
        assert!((last.ln_trajectory - 11.0 * 2f64.ln()).abs() < 1e-9);
        assert!(reps[0].to_csv().starts_with("index,|F|,ℓ(T_F),log-index,difference\n"));
    }
}
