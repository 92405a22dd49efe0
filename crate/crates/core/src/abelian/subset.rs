use std::fmt;

use rustc_hash::FxHashSet;

use super::group::{AbelianGroup, GroupElement};
use super::subgroup::Subgroup;
use super::AbelianError;

#[derive(Clone)]
enum Repr {
    Hash(FxHashSet<GroupElement>),
    /// Sorted, disjoint, non-adjacent half-open intervals of `ℤ`.
    Runs(Vec<(i128, i128)>),
}

/// A finite subset of an abelian group. Subsets of `ℤ` are stored as runs of
/// consecutive integers, so sets such as `[0, 2^70)` are cheap.
#[derive(Clone)]
pub struct FiniteSubset {
    group: AbelianGroup,
    repr: Repr,
}

fn uses_runs(group: &AbelianGroup) -> bool {
    matches!(group, AbelianGroup::FreeZ { rank: 1 })
}

fn merge_runs(mut runs: Vec<(i128, i128)>) -> Vec<(i128, i128)> {
    runs.retain(|(a, b)| a < b);
    runs.sort_unstable();
    let mut out: Vec<(i128, i128)> = Vec::with_capacity(runs.len());
    for (a, b) in runs {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

impl FiniteSubset {
    pub fn new<I: IntoIterator<Item = GroupElement>>(group: &AbelianGroup, elems: I) -> Result<Self, AbelianError> {
        let mut set = FxHashSet::default();
        for e in elems {
            group.check(&e)?;
            set.insert(e);
        }
        Ok(Self::from_hash(group, set))
    }

    fn from_hash(group: &AbelianGroup, set: FxHashSet<GroupElement>) -> Self {
        if uses_runs(group) {
            let runs = set
                .iter()
                .map(|e| match e {
                    GroupElement::Dense(v) => (v[0], v[0] + 1),
                    GroupElement::Sparse(_) => unreachable!(),
                })
                .collect();
            return FiniteSubset { group: group.clone(), repr: Repr::Runs(merge_runs(runs)) };
        }
        FiniteSubset { group: group.clone(), repr: Repr::Hash(set) }
    }

    /// Subset of `ℤ` from integers.
    pub fn integers<I: IntoIterator<Item = i128>>(values: I) -> Self {
        let runs = values.into_iter().map(|x| (x, x + 1)).collect();
        FiniteSubset { group: AbelianGroup::integers(), repr: Repr::Runs(merge_runs(runs)) }
    }

    /// `[lo, hi)` in `ℤ`.
    pub fn integer_interval(lo: i128, hi: i128) -> Self {
        FiniteSubset { group: AbelianGroup::integers(), repr: Repr::Runs(merge_runs(vec![(lo, hi)])) }
    }

    pub fn zero(group: &AbelianGroup) -> Self {
        Self::from_hash(group, [group.zero()].into_iter().collect())
    }

    pub fn empty(group: &AbelianGroup) -> Self {
        Self::from_hash(group, FxHashSet::default())
    }

    /// All elements of a finite subgroup.
    pub fn from_subgroup(b: &Subgroup, limit: u64) -> Result<Self, AbelianError> {
        let elems = b.elements(limit)?;
        Ok(Self::from_hash(b.group(), elems.into_iter().collect()))
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn len(&self) -> u128 {
        match &self.repr {
            Repr::Hash(s) => s.len() as u128,
            Repr::Runs(r) => r.iter().map(|(a, b)| (b - a) as u128).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Size of the internal representation (elements or runs).
    pub fn storage(&self) -> usize {
        match &self.repr {
            Repr::Hash(s) => s.len(),
            Repr::Runs(r) => r.len(),
        }
    }

    /// `ℓ(X) = log |X|`.
    pub fn ell(&self) -> f64 {
        (self.len() as f64).ln()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match (&self.repr, x) {
            (Repr::Hash(s), _) => s.contains(x),
            (Repr::Runs(r), GroupElement::Dense(v)) if v.len() == 1 => {
                let p = r.partition_point(|&(a, _)| a <= v[0]);
                p > 0 && v[0] < r[p - 1].1
            }
            _ => false,
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&self.group.zero())
    }

    pub fn runs(&self) -> Option<&[(i128, i128)]> {
        match &self.repr {
            Repr::Runs(r) => Some(r),
            Repr::Hash(_) => None,
        }
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = GroupElement> + '_> {
        match &self.repr {
            Repr::Hash(s) => Box::new(s.iter().cloned()),
            Repr::Runs(r) => Box::new(r.iter().flat_map(|&(a, b)| (a..b).map(GroupElement::scalar))),
        }
    }

    /// Elements in ascending order, for deterministic output.
    pub fn sorted(&self) -> Vec<GroupElement> {
        let mut v: Vec<GroupElement> = self.iter().collect();
        v.sort();
        v
    }

    fn same_group(&self, other: &FiniteSubset) -> Result<(), AbelianError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(AbelianError::GroupMismatch(self.group.to_string(), other.group.to_string()))
        }
    }

    /// `X + Y`. `budget` bounds the stored size of the result.
    pub fn minkowski_sum(&self, other: &FiniteSubset, budget: Option<usize>) -> Result<FiniteSubset, AbelianError> {
        self.same_group(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Runs(a), Repr::Runs(b)) => {
                let mut runs = Vec::with_capacity(a.len() * b.len());
                for &(p, q) in a {
                    for &(r, s) in b {
                        let lo = p.checked_add(r).ok_or(AbelianError::Overflow)?;
                        let hi = (q - 1).checked_add(s).ok_or(AbelianError::Overflow)?;
                        runs.push((lo, hi));
                    }
                }
                let runs = merge_runs(runs);
                if let Some(limit) = budget {
                    if runs.len() > limit {
                        return Err(AbelianError::BudgetExceeded { size: runs.len() as u128, budget: limit });
                    }
                }
                Ok(FiniteSubset { group: self.group.clone(), repr: Repr::Runs(runs) })
            }
            (Repr::Hash(a), Repr::Hash(b)) => {
                let mut out = FxHashSet::default();
                out.reserve(a.len().max(b.len()));
                for x in a {
                    for y in b {
                        out.insert(self.group.add(x, y));
                    }
                    if let Some(limit) = budget {
                        if out.len() > limit {
                            return Err(AbelianError::BudgetExceeded { size: out.len() as u128, budget: limit });
                        }
                    }
                }
                Ok(FiniteSubset { group: self.group.clone(), repr: Repr::Hash(out) })
            }
            _ => unreachable!("representation is determined by the group"),
        }
    }

    pub fn union(&self, other: &FiniteSubset) -> Result<FiniteSubset, AbelianError> {
        self.same_group(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Runs(a), Repr::Runs(b)) => {
                let mut r = a.clone();
                r.extend_from_slice(b);
                FiniteSubset { group: self.group.clone(), repr: Repr::Runs(merge_runs(r)) }
            }
            (Repr::Hash(a), Repr::Hash(b)) => {
                FiniteSubset { group: self.group.clone(), repr: Repr::Hash(a.union(b).cloned().collect()) }
            }
            _ => unreachable!(),
        })
    }

    pub fn is_subset(&self, other: &FiniteSubset) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Runs(a), Repr::Runs(_)) => a.iter().all(|&(p, q)| {
                let r = other.runs().unwrap();
                let i = r.partition_point(|&(x, _)| x <= p);
                i > 0 && q <= r[i - 1].1
            }),
            _ => self.iter().all(|x| other.contains(&x)),
        }
    }

    /// Image under a map into `target`.
    pub fn map<G: Fn(&GroupElement) -> GroupElement>(&self, target: &AbelianGroup, g: G) -> FiniteSubset {
        FiniteSubset::from_hash(target, self.iter().map(|x| g(&x)).collect())
    }

    /// `X_m = X + … + X` (`m` summands, `X_0 = {0}`).
    pub fn multiple_sum(&self, m: usize, budget: Option<usize>) -> Result<FiniteSubset, AbelianError> {
        // Binary doubling; every partial sum is no larger than X_m.
        let mut acc = FiniteSubset::zero(&self.group);
        let mut power = self.clone();
        let mut k = m;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.minkowski_sum(&power, budget)?;
            }
            k >>= 1;
            if k > 0 {
                power = power.minkowski_sum(&power, budget)?;
            }
        }
        Ok(acc)
    }

    pub fn neg(&self) -> FiniteSubset {
        match &self.repr {
            Repr::Runs(r) => FiniteSubset {
                group: self.group.clone(),
                repr: Repr::Runs(merge_runs(r.iter().map(|&(a, b)| (1 - b, 1 - a)).collect())),
            },
            Repr::Hash(_) => self.map(&self.group.clone(), |x| self.group.neg(x)),
        }
    }

    /// Number of distinct cosets `y + B`.
    pub fn coset_count(&self, b: &Subgroup) -> Result<u128, AbelianError> {
        if b.group() != &self.group {
            return Err(AbelianError::GroupMismatch(self.group.to_string(), b.group().to_string()));
        }
        if let Repr::Runs(r) = &self.repr {
            // B = dℤ: residues of the runs modulo d.
            let d = b.integer_generator().ok_or(AbelianError::Unsupported("subgroup of ℤ".into()))?;
            if d == 0 {
                return Ok(self.len());
            }
            if r.iter().any(|&(a, c)| c - a >= d) {
                return Ok(d as u128);
            }
            let mut res: Vec<(i128, i128)> = Vec::new();
            for &(a, c) in r {
                let lo = a.rem_euclid(d);
                let hi = lo + (c - a);
                if hi <= d {
                    res.push((lo, hi));
                } else {
                    res.push((lo, d));
                    res.push((0, hi - d));
                }
            }
            return Ok(merge_runs(res).iter().map(|(a, c)| (c - a) as u128).sum());
        }
        let reducer = b.reducer_for(self.iter().collect::<Vec<_>>().iter())?;
        let reps: FxHashSet<Vec<i128>> = self.iter().map(|y| reducer.reduce(&y)).collect();
        Ok(reps.len() as u128)
    }

    /// `ℓ(Y, B) = log |{y + B : y ∈ Y}|`.
    pub fn rel_ell(&self, b: &Subgroup) -> Result<f64, AbelianError> {
        Ok((self.coset_count(b)? as f64).ln())
    }
}

impl PartialEq for FiniteSubset {
    fn eq(&self, other: &Self) -> bool {
        if self.group != other.group {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Runs(a), Repr::Runs(b)) => a == b,
            (Repr::Hash(a), Repr::Hash(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FiniteSubset {}

impl fmt::Debug for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Runs(r) => {
                write!(f, "{{")?;
                for (i, (a, b)) in r.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    if b - a == 1 {
                        write!(f, "{a}")?;
                    } else {
                        write!(f, "[{a},{b})")?;
                    }
                }
                write!(f, "}}")
            }
            Repr::Hash(_) => f.debug_set().entries(self.sorted()).finish(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_of_integers() {
        let x = FiniteSubset::integers([0, 1]);
        let y = FiniteSubset::integers([0, 4]);
        let s = x.minkowski_sum(&y, None).unwrap();
        assert_eq!(s, FiniteSubset::integers([0, 1, 4, 5]));
        assert_eq!(s.len(), 4);
        assert_eq!(x.minkowski_sum(&FiniteSubset::zero(&AbelianGroup::integers()), None).unwrap(), x);
        let w3 = x.multiple_sum(3, None).unwrap();
        assert_eq!(w3, FiniteSubset::integer_interval(0, 4));
    }

    #[test]
    fn huge_intervals_are_cheap() {
        let x = FiniteSubset::integer_interval(0, 1 << 70);
        let y = x.minkowski_sum(&x, None).unwrap();
        assert_eq!(y.len(), (1u128 << 71) - 1);
        assert_eq!(y.storage(), 1);
    }

    #[test]
    fn ell_values() {
        assert_eq!(FiniteSubset::integers([0]).ell(), 0.0);
        let g = AbelianGroup::cyclic(8);
        let all = FiniteSubset::new(&g, g.elements(100).unwrap()).unwrap();
        assert!((all.ell() - 8f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn runs_membership() {
        let x = FiniteSubset::integers([0, 1, 2, 7, 9]);
        assert!(x.contains(&GroupElement::scalar(2)));
        assert!(!x.contains(&GroupElement::scalar(3)));
        assert!(x.contains(&GroupElement::scalar(9)));
        assert!(FiniteSubset::integers([1, 7]).is_subset(&x));
        assert_eq!(x.neg(), FiniteSubset::integers([0, -1, -2, -7, -9]));
    }
}
