use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rustc_hash::FxHashSet;

use super::group::{AbelianGroup, GroupElement, Layout};
use super::lattice::ModLattice;
use super::AbelianError;

/// Order of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    /// `log |B|`, infinite for infinite subgroups.
    pub fn ln(&self) -> f64 {
        match self {
            Order::Finite(n) => ln_biguint(n),
            Order::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "∞"),
        }
    }
}

/// Natural log of a big integer without overflow.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug)]
enum Repr {
    /// Generated by the rows of a lattice over a finite coordinate layout.
    Lattice { layout: Layout, lattice: ModLattice },
    /// `⊕_s B₀` inside a direct sum.
    PerCoordinate { base: ModLattice },
}

/// A subgroup with an exact canonical form.
#[derive(Clone)]
pub struct Subgroup {
    group: AbelianGroup,
    repr: Repr,
}

/// Canonical coset representatives modulo a subgroup, over a fixed layout.
pub struct Reducer {
    layout: Layout,
    lattice: ModLattice,
    per_coordinate: bool,
    base_len: usize,
}

impl Reducer {
    pub fn reduce(&self, x: &GroupElement) -> Vec<i128> {
        if self.per_coordinate {
            // Reduce each base block independently.
            let GroupElement::Sparse(m) = x else { unreachable!() };
            let mut out = Vec::with_capacity(m.len() * (self.base_len + 1));
            for (k, v) in m {
                let w: Vec<i128> = v.iter().map(|&e| e as i128).collect();
                let r = self.lattice.reduce(&w);
                if r.iter().any(|&e| e != 0) {
                    out.extend(k.0.iter().map(|&c| c as i128));
                    out.extend(r);
                }
            }
            return out;
        }
        let v = self.layout.to_vec(x).expect("reducer layout covers the element");
        self.lattice.reduce(&v)
    }
}

impl Subgroup {
    pub fn generated<I: IntoIterator<Item = GroupElement>>(group: &AbelianGroup, gens: I) -> Result<Self, AbelianError> {
        let gens: Vec<GroupElement> = gens.into_iter().collect();
        for g in &gens {
            group.check(g)?;
        }
        let layout = Layout::covering(group, gens.iter());
        let mut lattice = ModLattice::new(layout.moduli());
        for g in &gens {
            lattice.insert(layout.to_vec(g).expect("layout covers generators"));
        }
        Ok(Subgroup { group: group.clone(), repr: Repr::Lattice { layout, lattice } })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Self::generated(group, []).expect("empty generator list")
    }

    /// The whole group, when it has a finite description as a subgroup.
    pub fn whole(group: &AbelianGroup) -> Self {
        match group {
            AbelianGroup::DirectSum { base, .. } => {
                let m: Vec<i128> = base.iter().map(|&n| n as i128).collect();
                let k = m.len();
                let rows = (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect());
                Subgroup { group: group.clone(), repr: Repr::PerCoordinate { base: ModLattice::from_rows(m, rows) } }
            }
            _ => {
                let k = group.coordinate_moduli().len();
                let gens = (0..k).map(|i| GroupElement::Dense((0..k).map(|j| i128::from(i == j)).collect()));
                Self::generated(group, gens).expect("unit vectors")
            }
        }
    }

    /// `⊕_s B₀` in a direct sum, where `B₀` is generated by `base_gens`.
    pub fn per_coordinate(group: &AbelianGroup, base_gens: &[Vec<i64>]) -> Result<Self, AbelianError> {
        let AbelianGroup::DirectSum { base, .. } = group else {
            return Err(AbelianError::Unsupported("per-coordinate subgroups live in direct sums".into()));
        };
        let m: Vec<i128> = base.iter().map(|&n| n as i128).collect();
        let mut lat = ModLattice::new(m);
        for g in base_gens {
            if g.len() != base.len() {
                return Err(AbelianError::InvalidDescriptor("base generator length".into()));
            }
            lat.insert(g.iter().map(|&e| e as i128).collect());
        }
        Ok(Subgroup { group: group.clone(), repr: Repr::PerCoordinate { base: lat } })
    }

    /// `kA`.
    pub fn multiple(group: &AbelianGroup, k: i64) -> Self {
        match group {
            AbelianGroup::DirectSum { base, .. } => {
                let gens: Vec<Vec<i64>> =
                    (0..base.len()).map(|i| (0..base.len()).map(|j| if i == j { k } else { 0 }).collect()).collect();
                Self::per_coordinate(group, &gens).expect("direct sum")
            }
            _ => {
                let n = group.coordinate_moduli().len();
                let gens = (0..n).map(|i| {
                    group.normalize(GroupElement::Dense((0..n).map(|j| if i == j { k as i128 } else { 0 }).collect()))
                });
                let gens: Vec<GroupElement> = gens.map(|g| g.expect("dense")).collect();
                Self::generated(group, gens).expect("dense")
            }
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn is_per_coordinate(&self) -> bool {
        matches!(self.repr, Repr::PerCoordinate { .. })
    }

    /// Generators of `B₀` for a per-coordinate subgroup.
    pub fn base_generators(&self) -> Option<Vec<Vec<i64>>> {
        match &self.repr {
            Repr::PerCoordinate { base } => {
                Some(base.basis().into_iter().map(|r| r.into_iter().map(|e| e as i64).collect()).collect())
            }
            Repr::Lattice { .. } => None,
        }
    }

    /// A canonical generating list (Hermite basis rows).
    pub fn generators(&self) -> Result<Vec<GroupElement>, AbelianError> {
        match &self.repr {
            Repr::Lattice { layout, lattice } => Ok(lattice.basis().iter().map(|r| layout.from_vec(r)).collect()),
            Repr::PerCoordinate { .. } => Err(AbelianError::Unsupported(
                "per-coordinate subgroups of infinite direct sums are not finitely generated".into(),
            )),
        }
    }

    pub fn order(&self) -> Order {
        match &self.repr {
            Repr::Lattice { lattice, .. } => match lattice.image_order() {
                Some(n) => Order::Finite(n),
                None => Order::Infinite,
            },
            Repr::PerCoordinate { base } => {
                let b = base.image_order().expect("finite base");
                if b.is_one() {
                    return Order::Finite(b);
                }
                let AbelianGroup::DirectSum { index, .. } = &self.group else { unreachable!() };
                match index.order() {
                    Some(k) => Order::Finite(b.pow(k as u32)),
                    None => Order::Infinite,
                }
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Order::Finite(BigUint::one())
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        if !self.group.contains(x) {
            return false;
        }
        match &self.repr {
            Repr::Lattice { layout, lattice } => match layout.to_vec(x) {
                Some(v) => lattice.contains(&v),
                None => false,
            },
            Repr::PerCoordinate { base } => match x {
                GroupElement::Sparse(m) => {
                    m.values().all(|v| base.contains(&v.iter().map(|&e| e as i128).collect::<Vec<_>>()))
                }
                GroupElement::Dense(_) => false,
            },
        }
    }

    /// Lattice re-expressed over a larger layout.
    fn lattice_over(&self, to: &Layout) -> ModLattice {
        let Repr::Lattice { layout, lattice } = &self.repr else { unreachable!() };
        if layout == to {
            return lattice.clone();
        }
        let rows = lattice.basis().into_iter().map(|r| layout.transfer(&r, to));
        ModLattice::from_rows(to.moduli(), rows)
    }

    fn check_same(&self, other: &Subgroup) -> Result<(), AbelianError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(AbelianError::GroupMismatch(self.group.to_string(), other.group.to_string()))
        }
    }

    /// `B + C`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup, AbelianError> {
        self.check_same(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Lattice { layout: la, .. }, Repr::Lattice { layout: lb, .. }) => {
                let layout = la.union(lb);
                let lattice = self.lattice_over(&layout).join(&other.lattice_over(&layout));
                Ok(Subgroup { group: self.group.clone(), repr: Repr::Lattice { layout, lattice } })
            }
            (Repr::PerCoordinate { base: a }, Repr::PerCoordinate { base: b }) => {
                Ok(Subgroup { group: self.group.clone(), repr: Repr::PerCoordinate { base: a.join(b) } })
            }
            _ => {
                let (pc, lat) = if self.is_per_coordinate() { (self, other) } else { (other, self) };
                if lat.generators()?.iter().all(|g| pc.contains(g)) {
                    Ok(pc.clone())
                } else {
                    Err(AbelianError::Unsupported(
                        "join of a per-coordinate subgroup with a subgroup outside it".into(),
                    ))
                }
            }
        }
    }

    /// `B ∩ C`.
    pub fn meet(&self, other: &Subgroup) -> Result<Subgroup, AbelianError> {
        self.check_same(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Lattice { layout: la, .. }, Repr::Lattice { layout: lb, .. }) => {
                let layout = la.union(lb);
                let lattice = self.lattice_over(&layout).meet(&other.lattice_over(&layout));
                Ok(Subgroup { group: self.group.clone(), repr: Repr::Lattice { layout, lattice } })
            }
            (Repr::PerCoordinate { base: a }, Repr::PerCoordinate { base: b }) => {
                Ok(Subgroup { group: self.group.clone(), repr: Repr::PerCoordinate { base: a.meet(b) } })
            }
            (Repr::PerCoordinate { base }, Repr::Lattice { layout, lattice })
            | (Repr::Lattice { layout, lattice }, Repr::PerCoordinate { base }) => {
                // Intersect blockwise: the per-coordinate lattice repeated over the support.
                let rows: Vec<Vec<i128>> = (0..layout.support().len())
                    .flat_map(|pos| {
                        let k = base.dim();
                        base.square_basis().into_iter().map(move |r| {
                            let mut w = vec![0; layout.dim()];
                            w[pos * k..pos * k + k].copy_from_slice(&r);
                            w
                        })
                    })
                    .collect();
                let blocks = ModLattice::from_rows(layout.moduli(), rows);
                let lattice = lattice.meet(&blocks);
                Ok(Subgroup { group: self.group.clone(), repr: Repr::Lattice { layout: layout.clone(), lattice } })
            }
        }
    }

    /// `B ⊆ C`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool, AbelianError> {
        match (&self.repr, &other.repr) {
            (Repr::PerCoordinate { base: a }, Repr::PerCoordinate { base: b }) => {
                Ok(a.basis().iter().all(|r| b.contains(r)))
            }
            (Repr::PerCoordinate { .. }, Repr::Lattice { .. }) => Ok(self.is_trivial()),
            _ => Ok(self.generators()?.iter().all(|g| other.contains(g))),
        }
    }

    /// A reducer covering the given elements.
    pub fn reducer_for<'a, I: Iterator<Item = &'a GroupElement>>(&self, elems: I) -> Result<Reducer, AbelianError> {
        match &self.repr {
            Repr::Lattice { layout, .. } => {
                let l2 = Layout::covering(&self.group, elems);
                let layout = layout.union(&l2);
                let lattice = self.lattice_over(&layout);
                Ok(Reducer { layout, lattice, per_coordinate: false, base_len: 0 })
            }
            Repr::PerCoordinate { base } => Ok(Reducer {
                layout: Layout::dense(&self.group),
                lattice: base.clone(),
                per_coordinate: true,
                base_len: base.dim(),
            }),
        }
    }

    /// The `d ≥ 0` with `B = dℤ`, for subgroups of `ℤ`.
    pub fn integer_generator(&self) -> Option<i128> {
        if !matches!(self.group, AbelianGroup::FreeZ { rank: 1 }) {
            return None;
        }
        let Repr::Lattice { lattice, .. } = &self.repr else { return None };
        Some(lattice.basis().first().map_or(0, |r| r[0].abs()))
    }

    /// Every element, for finite subgroups up to `limit` elements.
    pub fn elements(&self, limit: u64) -> Result<Vec<GroupElement>, AbelianError> {
        let order = self.order();
        let Order::Finite(n) = &order else { return Err(AbelianError::Infinite) };
        if *n > BigUint::from(limit) {
            return Err(AbelianError::BoundExceeded { what: "subgroup enumeration", bound: limit });
        }
        if let Repr::PerCoordinate { .. } = self.repr {
            // Only reachable for finite index monoids or a trivial base.
            let all = self.group.elements(limit.saturating_mul(1 << 10))?;
            return Ok(all.into_iter().filter(|x| self.contains(x)).collect());
        }
        let gens = self.generators()?;
        let zero = self.group.zero();
        let mut seen: FxHashSet<GroupElement> = FxHashSet::default();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.group.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut v: Vec<GroupElement> = seen.into_iter().collect();
        v.sort();
        Ok(v)
    }

    fn canonical_key(&self) -> (bool, Vec<crate::monoid::MElement>, Vec<Vec<i128>>) {
        match &self.repr {
            Repr::Lattice { layout, lattice } => {
                // Drop support points that carry no generator entries.
                let basis = lattice.basis();
                if !layout.is_sparse() {
                    return (false, vec![], basis);
                }
                let gens: Vec<GroupElement> = basis.iter().map(|r| layout.from_vec(r)).collect();
                let tight = Layout::covering(&self.group, gens.iter());
                let rows = ModLattice::from_rows(
                    tight.moduli(),
                    gens.iter().map(|g| tight.to_vec(g).unwrap()),
                )
                .basis();
                (false, tight.support().to_vec(), rows)
            }
            Repr::PerCoordinate { base } => (true, vec![], base.basis()),
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.canonical_key() == other.canonical_key()
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Lattice { .. } => {
                let gens = self.generators().unwrap_or_default();
                write!(f, "⟨")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "⟩ ≤ {}", self.group)
            }
            Repr::PerCoordinate { base } => write!(f, "⊕⟨{:?}⟩ ≤ {}", base.basis(), self.group),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{MElement, Monoid};

    fn d(v: &[i128]) -> GroupElement {
        GroupElement::dense(v.to_vec())
    }

    #[test]
    fn joins() {
        let g = AbelianGroup::finite(vec![2, 2]).unwrap();
        let a = Subgroup::generated(&g, [d(&[1, 0])]).unwrap();
        let b = Subgroup::generated(&g, [d(&[0, 1])]).unwrap();
        assert_eq!(a.join(&b).unwrap().order(), Order::Finite(4u32.into()));
        assert_eq!(a.join(&Subgroup::trivial(&g)).unwrap(), a);
        let z12 = AbelianGroup::cyclic(12);
        let two = Subgroup::generated(&z12, [d(&[2])]).unwrap();
        let three = Subgroup::generated(&z12, [d(&[3])]).unwrap();
        let j = two.join(&three).unwrap();
        assert_eq!(j.order(), Order::Finite(12u32.into()));
        assert_eq!(j, Subgroup::generated(&z12, [d(&[1])]).unwrap());
    }

    #[test]
    fn orders() {
        let z8 = AbelianGroup::cyclic(8);
        assert_eq!(Subgroup::generated(&z8, [d(&[2])]).unwrap().order(), Order::Finite(4u32.into()));
        assert!(Subgroup::trivial(&z8).is_trivial());
        let z2 = AbelianGroup::FreeZ { rank: 2 };
        assert_eq!(Subgroup::generated(&z2, [d(&[2, 0]), d(&[0, 2])]).unwrap().order(), Order::Infinite);
    }

    #[test]
    fn equality_is_canonical() {
        let g = AbelianGroup::finite(vec![4, 6]).unwrap();
        let a = Subgroup::generated(&g, [d(&[1, 2]), d(&[2, 0])]).unwrap();
        let b = Subgroup::generated(&g, [d(&[3, 4]), d(&[0, 2]), d(&[2, 4])]).unwrap();
        let ea: Vec<_> = a.elements(1000).unwrap();
        let eb: Vec<_> = b.elements(1000).unwrap();
        assert_eq!(ea == eb, a == b);
    }

    #[test]
    fn direct_sum_subgroups() {
        let g = AbelianGroup::direct_sum(vec![4], Monoid::integers(1)).unwrap();
        let e = |i: i64, v: i64| GroupElement::unit(MElement(vec![i]), vec![v]);
        let two_a = Subgroup::multiple(&g, 2);
        assert!(two_a.contains(&e(5, 2)));
        assert!(!two_a.contains(&e(5, 1)));
        assert_eq!(two_a.order(), Order::Infinite);
        let b = Subgroup::generated(&g, [e(0, 1), e(1, 2)]).unwrap();
        assert_eq!(b.order(), Order::Finite(8u32.into()));
        let c = Subgroup::generated(&g, [e(1, 1)]).unwrap();
        let m = b.meet(&c).unwrap();
        assert_eq!(m, Subgroup::generated(&g, [e(1, 2)]).unwrap());
        let m2 = b.meet(&two_a).unwrap();
        assert_eq!(m2, Subgroup::generated(&g, [e(0, 2), e(1, 2)]).unwrap());
        // Support that cancels out does not affect equality.
        let x = Subgroup::generated(&g, [g.add(&e(0, 1), &e(3, 1)), e(3, 1)]).unwrap();
        let y = Subgroup::generated(&g, [e(0, 1), e(3, 1)]).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn cosets_in_z8() {
        let z8 = AbelianGroup::cyclic(8);
        let y = crate::abelian::FiniteSubset::new(&z8, [d(&[0]), d(&[1]), d(&[4]), d(&[5])]).unwrap();
        let b = Subgroup::generated(&z8, [d(&[4])]).unwrap();
        assert_eq!(y.coset_count(&b).unwrap(), 2);
        let z = AbelianGroup::integers();
        let y = crate::abelian::FiniteSubset::integers([0, 1, 2, 3]);
        let b = Subgroup::generated(&z, [d(&[2])]).unwrap();
        assert_eq!(y.coset_count(&b).unwrap(), 2);
    }
}
