use rustc_hash::FxHashSet;

use super::group::AbelianGroup;
use super::subgroup::Subgroup;
use super::AbelianError;

/// Every abelian group of order `n`, as invariant factors `d_1 | d_2 | …`.
pub fn groups_of_order(n: u64) -> Vec<AbelianGroup> {
    // Chains built from the largest factor down, each factor dividing the previous.
    fn go(rest: u64, last: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.iter().rev().copied().collect());
            return;
        }
        for d in 2..=rest.min(last) {
            if rest.is_multiple_of(d) && last.is_multiple_of(d) {
                acc.push(d);
                go(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter().map(|factors| AbelianGroup::FiniteProduct { factors }).collect()
}

/// Every abelian group of order at most `n`.
pub fn groups_up_to(n: u64) -> Vec<AbelianGroup> {
    (1..=n).flat_map(groups_of_order).collect()
}

impl Subgroup {
    /// Every subgroup of a finite group, or an error once more than `cap`
    /// have been found.
    pub fn all(group: &AbelianGroup, cap: usize) -> Result<Vec<Subgroup>, AbelianError> {
        let elems = group.elements(1 << 20)?;
        let cyclic: Vec<Subgroup> = {
            let mut seen = FxHashSet::default();
            for g in &elems {
                seen.insert(Subgroup::generated(group, [g.clone()])?);
            }
            let mut v: Vec<Subgroup> = seen.into_iter().collect();
            v.sort_by_key(|s| format!("{s:?}"));
            v
        };
        let trivial = Subgroup::trivial(group);
        let mut seen: FxHashSet<Subgroup> = FxHashSet::default();
        seen.insert(trivial.clone());
        let mut order = vec![trivial];
        let mut i = 0;
        while i < order.len() {
            let cur = order[i].clone();
            for c in &cyclic {
                let j = cur.join(c)?;
                if !seen.contains(&j) {
                    if seen.len() >= cap {
                        return Err(AbelianError::BoundExceeded { what: "subgroup count", bound: cap as u64 });
                    }
                    seen.insert(j.clone());
                    order.push(j);
                }
            }
            i += 1;
        }
        Ok(order)
    }

    /// Cyclic subgroups `⟨g⟩`, one per subgroup.
    pub fn cyclic_subgroups(group: &AbelianGroup) -> Result<Vec<Subgroup>, AbelianError> {
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        for g in group.elements(1 << 20)? {
            let s = Subgroup::generated(group, [g])?;
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
        Ok(out)
    }
}
