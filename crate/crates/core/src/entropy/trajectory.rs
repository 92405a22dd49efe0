use std::fmt::Write as _;

use num_bigint::BigUint;
use rustc_hash::FxHashSet;

use super::action::Action;
use super::EntropyError;
use crate::abelian::{ln_biguint, AbelianError, FiniteSubset, GroupElement, Order, Subgroup};
use crate::folner::FolnerNet;
use crate::integral::{IntegralError, IntegralEstimate, IntegralRow, Provenance, SetFunction, DEFAULT_TOLERANCE};
use crate::monoid::MSubset;

pub const DEFAULT_ELEMENT_BUDGET: usize = 10_000_000;

/// A finite seed: an arbitrary finite set or a finite subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    Set(FiniteSubset),
    Subgroup(Subgroup),
}

impl Seed {
    pub fn describe(&self) -> String {
        match self {
            Seed::Set(x) => format!("{x:?}"),
            Seed::Subgroup(b) => format!("{b:?}"),
        }
    }
}

fn budget_error(e: AbelianError, budget: usize) -> EntropyError {
    match e {
        AbelianError::BudgetExceeded { size, .. } => {
            EntropyError::BudgetExceeded { what: format!("trajectory reached {size} stored elements"), budget: budget as u64 }
        }
        e => e.into(),
    }
}

fn check_carrier(alpha: &Action, x: &FiniteSubset) -> Result<(), EntropyError> {
    if let Some(b) = alpha.carrier() {
        if let Some(e) = x.iter().find(|e| !b.contains(e)) {
            return Err(EntropyError::Unsupported(format!("seed element {e} lies outside {b:?}")));
        }
    }
    Ok(())
}

/// `T_F(α, X) = Σ_{s ∈ F} α(s)(X)`, summed exactly.
pub fn trajectory(alpha: &Action, f: &MSubset, x: &FiniteSubset, budget: usize) -> Result<FiniteSubset, EntropyError> {
    if x.is_empty() {
        return Err(EntropyError::Unsupported("trajectories need a nonempty seed".into()));
    }
    if f.monoid() != alpha.monoid() {
        return Err(EntropyError::Unsupported(format!("{:?} is not a subset of {}", f, alpha.monoid())));
    }
    check_carrier(alpha, x)?;
    let mut acc = FiniteSubset::zero(alpha.group());
    for s in f.iter() {
        let img = alpha.image_set(s, x)?;
        acc = acc.minkowski_sum(&img, Some(budget)).map_err(|e| budget_error(e, budget))?;
    }
    Ok(acc)
}

/// `T_F(α, B) = ⟨α(s)(B) : s ∈ F⟩`.
pub fn subgroup_trajectory(alpha: &Action, f: &MSubset, b: &Subgroup) -> Result<Subgroup, EntropyError> {
    if f.monoid() != alpha.monoid() {
        return Err(EntropyError::Unsupported(format!("{:?} is not a subset of {}", f, alpha.monoid())));
    }
    if b.is_per_coordinate() {
        let mut acc = Subgroup::trivial(alpha.group());
        for s in f.iter() {
            acc = acc.join(&alpha.image_subgroup(s, b)?)?;
        }
        return Ok(acc);
    }
    let gens = b.generators()?;
    let mut images: FxHashSet<GroupElement> = FxHashSet::default();
    for s in f.iter() {
        let a = alpha.alpha(s)?;
        for g in &gens {
            images.insert(a.apply(alpha.group(), g)?);
        }
    }
    let mut images: Vec<GroupElement> = images.into_iter().collect();
    images.sort();
    Ok(Subgroup::generated(alpha.group(), images)?)
}

/// `|T_F(α, X)|` for either kind of seed.
pub fn trajectory_size(alpha: &Action, f: &MSubset, seed: &Seed, budget: usize) -> Result<BigUint, EntropyError> {
    match seed {
        Seed::Set(x) => Ok(BigUint::from(trajectory(alpha, f, x, budget)?.len())),
        Seed::Subgroup(b) => match subgroup_trajectory(alpha, f, b)?.order() {
            Order::Finite(n) => Ok(n),
            Order::Infinite => Err(EntropyError::NonTorsion(format!("trajectory of {b:?} is infinite"))),
        },
    }
}

/// `f_X: F ↦ ℓ(T_F(α, X))` as a set function on `S`.
pub fn f_x(alpha: &Action, seed: &Seed, budget: usize) -> Result<SetFunction, EntropyError> {
    let a = alpha.clone();
    let seed = seed.clone();
    Ok(SetFunction::new(alpha.monoid(), Provenance::TrajectoryLength, move |f| {
        trajectory_size(&a, f, &seed, budget).map(|n| ln_biguint(&n)).map_err(|e| match e {
            EntropyError::BudgetExceeded { what, budget } => IntegralError::BudgetExceeded { what, budget },
            e => IntegralError::Evaluation { set: format!("{f:?}"), reason: e.to_string() },
        })
    })?)
}

/// Ratio table of `ℓ(T_{F_i}(α, X))/|F_i|` with exact trajectory sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyEstimate {
    pub integral: IntegralEstimate,
    pub counts: Vec<BigUint>,
    pub seed: String,
    pub net: String,
    /// Set when a later index ran out of budget; rows stop before it.
    pub truncated: Option<EntropyError>,
}

impl EntropyEstimate {
    pub fn tail(&self) -> f64 {
        self.integral.tail()
    }

    pub fn oscillation(&self) -> f64 {
        self.integral.oscillation()
    }

    pub fn converged(&self) -> bool {
        self.integral.converged()
    }

    pub fn rows(&self) -> &[IntegralRow] {
        &self.integral.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,|F|,|T_F(X)|,ratio\n");
        for (r, n) in self.integral.rows.iter().zip(&self.counts) {
            let _ = writeln!(out, "{},{},{},{:.12}", r.label, r.size, n, r.ratio);
        }
        out
    }
}

/// `H_alg(α, X)` read along `net`. A budget overrun at some index truncates
/// the table at the largest index before it; an overrun at the first index
/// is an error.
pub fn h_alg_estimate(
    alpha: &Action,
    seed: &Seed,
    net: &FolnerNet,
    prefix: usize,
    budget: usize,
) -> Result<EntropyEstimate, EntropyError> {
    if net.monoid() != alpha.monoid() {
        return Err(EntropyError::Unsupported(format!("net of {} for an action of {}", net.monoid(), alpha.monoid())));
    }
    if prefix == 0 {
        return Err(EntropyError::Unsupported("prefix must be positive".into()));
    }
    let indices: Vec<usize> = (1..=prefix).collect();
    let results = crate::par_map(&indices, |&i| -> Result<(IntegralRow, BigUint), EntropyError> {
        let set = net.get(i)?;
        let n = trajectory_size(alpha, &set, seed, budget)?;
        let value = ln_biguint(&n);
        let row = IntegralRow { index: i, label: net.label(i), size: set.len(), value, ratio: value / set.len() as f64 };
        Ok((row, n))
    });
    let mut rows = Vec::new();
    let mut counts = Vec::new();
    let mut truncated = None;
    for r in results {
        match r {
            Ok((row, n)) => {
                rows.push(row);
                counts.push(n);
            }
            Err(e @ EntropyError::BudgetExceeded { .. }) if !rows.is_empty() => {
                truncated = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EntropyEstimate {
        integral: IntegralEstimate { rows, tol: DEFAULT_TOLERANCE },
        counts,
        seed: seed.describe(),
        net: net.describe(),
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::entropy::{action_from_generators, Endomorphism};
    use crate::monoid::{MElement, Monoid};

    fn times4() -> Action {
        let z = AbelianGroup::integers();
        action_from_generators(&Monoid::naturals(1), &z, vec![Endomorphism::scalar(&z, 4)]).unwrap()
    }

    #[test]
    fn four_x_counts() {
        let a = times4();
        let n = Monoid::naturals(1);
        for k in 1..=8i64 {
            let f = MSubset::interval(&n, 0, k).unwrap();
            let t = trajectory(&a, &f, &FiniteSubset::integers([0, 1]), DEFAULT_ELEMENT_BUDGET).unwrap();
            assert_eq!(t.len(), 1 << k);
            let t2 = trajectory(&a, &f, &FiniteSubset::integers([0, 1, 4, 5]), DEFAULT_ELEMENT_BUDGET).unwrap();
            assert_eq!(t2.len(), 4 * 3u128.pow(k as u32 - 1));
        }
        let id = MSubset::identity(&n);
        let x = FiniteSubset::integers([2, 7]);
        assert_eq!(trajectory(&a, &id, &x, 10).unwrap(), x);
    }

    #[test]
    fn shift_subgroup_orders() {
        let g = AbelianGroup::direct_sum(vec![2], Monoid::integers(1)).unwrap();
        let z = Monoid::integers(1);
        let a = action_from_generators(&z, &g, vec![Endomorphism::shift(&g, vec![1]).unwrap()]).unwrap();
        let b = Subgroup::generated(&g, [GroupElement::unit(MElement(vec![0]), vec![1])]).unwrap();
        for n in 1..6 {
            let f = MSubset::interval(&z, 0, n).unwrap();
            assert_eq!(subgroup_trajectory(&a, &f, &b).unwrap().order(), Order::Finite(BigUint::from(1u32 << n)));
        }
        let est = h_alg_estimate(&a, &Seed::Subgroup(b), &FolnerNet::boxes(&z).unwrap(), 6, 1000).unwrap();
        assert!(est.rows().iter().all(|r| (r.ratio - 2f64.ln()).abs() < 1e-12));
    }

    #[test]
    fn budget_truncates() {
        let a = times4();
        let net = FolnerNet::boxes(&Monoid::naturals(1)).unwrap();
        let est = h_alg_estimate(&a, &Seed::Set(FiniteSubset::integers([0, 1])), &net, 12, 100).unwrap();
        assert!(est.truncated.is_some());
        assert_eq!(est.rows().len(), 7);
        assert!(est.to_csv().starts_with("index,|F|,|T_F(X)|,ratio\n1,1,2,"));
    }
}
