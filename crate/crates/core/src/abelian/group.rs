use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::AbelianError;
use crate::monoid::{MElement, Monoid};

/// A finitely described discrete abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AbelianGroup {
    /// `ℤ^rank`
    FreeZ { rank: usize },
    /// `ℤ/n_1 × … × ℤ/n_k`
    FiniteProduct { factors: Vec<u64> },
    /// `⊕_{s ∈ index} base`, finitely supported.
    DirectSum { base: Vec<u64>, index: Monoid },
}

/// An element of an `AbelianGroup`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Coordinates for `FreeZ` and `FiniteProduct`.
    Dense(Vec<i128>),
    /// Nonzero base values by index, for `DirectSum`.
    Sparse(BTreeMap<MElement, Vec<i64>>),
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Dense(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupElement::Dense(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Sparse(m) if m.is_empty() => write!(f, "0"),
            GroupElement::Sparse(m) => {
                for (i, (k, v)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    if v.len() == 1 {
                        write!(f, "{}e{k}", v[0])?;
                    } else {
                        write!(f, "{v:?}e{k}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl GroupElement {
    pub fn scalar(x: i128) -> Self {
        GroupElement::Dense(vec![x])
    }

    pub fn dense(v: Vec<i128>) -> Self {
        GroupElement::Dense(v)
    }

    /// `value · e_index` in a direct sum.
    pub fn unit(index: MElement, value: Vec<i64>) -> Self {
        let mut m = BTreeMap::new();
        if value.iter().any(|&x| x != 0) {
            m.insert(index, value);
        }
        GroupElement::Sparse(m)
    }

    pub fn sparse<I: IntoIterator<Item = (MElement, Vec<i64>)>>(entries: I) -> Self {
        GroupElement::Sparse(entries.into_iter().filter(|(_, v)| v.iter().any(|&x| x != 0)).collect())
    }

    pub fn support(&self) -> Vec<MElement> {
        match self {
            GroupElement::Dense(_) => vec![],
            GroupElement::Sparse(m) => m.keys().cloned().collect(),
        }
    }
}

impl AbelianGroup {
    pub fn integers() -> Self {
        AbelianGroup::FreeZ { rank: 1 }
    }

    pub fn cyclic(n: u64) -> Self {
        AbelianGroup::FiniteProduct { factors: vec![n] }
    }

    pub fn finite(factors: Vec<u64>) -> Result<Self, AbelianError> {
        if factors.contains(&0) {
            return Err(AbelianError::InvalidDescriptor("factors must be at least 1".into()));
        }
        Ok(AbelianGroup::FiniteProduct { factors })
    }

    pub fn direct_sum(base: Vec<u64>, index: Monoid) -> Result<Self, AbelianError> {
        if base.contains(&0) {
            return Err(AbelianError::InvalidDescriptor(
                "direct sums need a finite base (factors at least 1)".into(),
            ));
        }
        Ok(AbelianGroup::DirectSum { base, index })
    }

    pub fn is_finite(&self) -> bool {
        match self {
            AbelianGroup::FreeZ { rank } => *rank == 0,
            AbelianGroup::FiniteProduct { .. } => true,
            AbelianGroup::DirectSum { base, index } => index.is_finite() || base.iter().all(|&n| n == 1),
        }
    }

    /// Every element has finite order.
    pub fn is_torsion(&self) -> bool {
        !matches!(self, AbelianGroup::FreeZ { rank } if *rank > 0)
    }

    /// Exact order when finite.
    pub fn order(&self) -> Option<BigUint> {
        match self {
            AbelianGroup::FreeZ { rank: 0 } => Some(BigUint::one()),
            AbelianGroup::FreeZ { .. } => None,
            AbelianGroup::FiniteProduct { factors } => Some(factors.iter().map(|&n| BigUint::from(n)).product()),
            AbelianGroup::DirectSum { base, index } => {
                let b: BigUint = base.iter().map(|&n| BigUint::from(n)).product();
                if b.is_one() {
                    return Some(b);
                }
                let k = index.order()?;
                Some(b.pow(k.to_u32()?))
            }
        }
    }

    /// Moduli of the dense coordinates (0 for free coordinates), or the base
    /// moduli of a direct sum.
    pub fn coordinate_moduli(&self) -> Vec<i128> {
        match self {
            AbelianGroup::FreeZ { rank } => vec![0; *rank],
            AbelianGroup::FiniteProduct { factors } => factors.iter().map(|&n| n as i128).collect(),
            AbelianGroup::DirectSum { base, .. } => base.iter().map(|&n| n as i128).collect(),
        }
    }

    pub fn zero(&self) -> GroupElement {
        match self {
            AbelianGroup::FreeZ { rank } => GroupElement::Dense(vec![0; *rank]),
            AbelianGroup::FiniteProduct { factors } => GroupElement::Dense(vec![0; factors.len()]),
            AbelianGroup::DirectSum { .. } => GroupElement::Sparse(BTreeMap::new()),
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (AbelianGroup::FreeZ { rank }, GroupElement::Dense(v)) => v.len() == *rank,
            (AbelianGroup::FiniteProduct { factors }, GroupElement::Dense(v)) => {
                v.len() == factors.len() && v.iter().zip(factors).all(|(&x, &n)| x >= 0 && (x as u64) < n.max(1))
            }
            (AbelianGroup::DirectSum { base, index }, GroupElement::Sparse(m)) => m.iter().all(|(k, v)| {
                index.contains(k)
                    && v.len() == base.len()
                    && v.iter().any(|&x| x != 0)
                    && v.iter().zip(base).all(|(&x, &n)| x >= 0 && (x as u64) < n)
            }),
            _ => false,
        }
    }

    pub fn check(&self, x: &GroupElement) -> Result<(), AbelianError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AbelianError::NotAnElement(x.clone()))
        }
    }

    /// Reduces raw coordinates into canonical form.
    pub fn normalize(&self, x: GroupElement) -> Result<GroupElement, AbelianError> {
        match (self, x) {
            (AbelianGroup::FreeZ { rank }, GroupElement::Dense(v)) if v.len() == *rank => Ok(GroupElement::Dense(v)),
            (AbelianGroup::FiniteProduct { factors }, GroupElement::Dense(v)) if v.len() == factors.len() => {
                Ok(GroupElement::Dense(v.iter().zip(factors).map(|(&x, &n)| x.rem_euclid(n as i128)).collect()))
            }
            (AbelianGroup::DirectSum { base, index }, GroupElement::Sparse(m)) => {
                let mut out = BTreeMap::new();
                for (k, v) in m {
                    if !index.contains(&k) || v.len() != base.len() {
                        return Err(AbelianError::NotAnElement(GroupElement::unit(k, v)));
                    }
                    let r: Vec<i64> = v.iter().zip(base).map(|(&x, &n)| x.rem_euclid(n as i64)).collect();
                    if r.iter().any(|&x| x != 0) {
                        out.insert(k, r);
                    }
                }
                Ok(GroupElement::Sparse(out))
            }
            (_, x) => Err(AbelianError::NotAnElement(x)),
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (AbelianGroup::FreeZ { .. }, GroupElement::Dense(x), GroupElement::Dense(y)) => {
                GroupElement::Dense(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (AbelianGroup::FiniteProduct { factors }, GroupElement::Dense(x), GroupElement::Dense(y)) => {
                GroupElement::Dense(
                    x.iter().zip(y).zip(factors).map(|((p, q), &n)| (p + q).rem_euclid(n as i128)).collect(),
                )
            }
            (AbelianGroup::DirectSum { base, .. }, GroupElement::Sparse(x), GroupElement::Sparse(y)) => {
                let mut out = x.clone();
                for (k, v) in y {
                    let e = out.entry(k.clone()).or_insert_with(|| vec![0; base.len()]);
                    for ((a, b), &n) in e.iter_mut().zip(v).zip(base) {
                        *a = (*a + b).rem_euclid(n as i64);
                    }
                    if e.iter().all(|&x| x == 0) {
                        out.remove(k);
                    }
                }
                GroupElement::Sparse(out)
            }
            _ => panic!("element kind does not match group {self}"),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(-1, a)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i128, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (AbelianGroup::FreeZ { .. }, GroupElement::Dense(x)) => GroupElement::Dense(x.iter().map(|p| k * p).collect()),
            (AbelianGroup::FiniteProduct { factors }, GroupElement::Dense(x)) => GroupElement::Dense(
                x.iter().zip(factors).map(|(p, &n)| (k * p).rem_euclid(n as i128)).collect(),
            ),
            (AbelianGroup::DirectSum { base, .. }, GroupElement::Sparse(x)) => GroupElement::Sparse(
                x.iter()
                    .filter_map(|(i, v)| {
                        let r: Vec<i64> = v
                            .iter()
                            .zip(base)
                            .map(|(&p, &n)| ((k % n as i128) * p as i128).rem_euclid(n as i128) as i64)
                            .collect();
                        r.iter().any(|&x| x != 0).then(|| (i.clone(), r))
                    })
                    .collect(),
            ),
            _ => panic!("element kind does not match group {self}"),
        }
    }

    /// All elements, for finite groups below `limit` elements.
    pub fn elements(&self, limit: u64) -> Result<Vec<GroupElement>, AbelianError> {
        let order = self.order().ok_or(AbelianError::Infinite)?;
        if order > BigUint::from(limit) {
            return Err(AbelianError::BoundExceeded { what: "group enumeration", bound: limit });
        }
        match self {
            AbelianGroup::FreeZ { .. } => Ok(vec![self.zero()]),
            AbelianGroup::FiniteProduct { factors } => {
                let mut out = vec![Vec::new()];
                for &n in factors {
                    out = out
                        .into_iter()
                        .flat_map(|p: Vec<i128>| {
                            (0..n as i128).map(move |x| {
                                let mut q = p.clone();
                                q.push(x);
                                q
                            })
                        })
                        .collect();
                }
                Ok(out.into_iter().map(GroupElement::Dense).collect())
            }
            AbelianGroup::DirectSum { base, index } => {
                if base.iter().all(|&n| n == 1) {
                    return Ok(vec![self.zero()]);
                }
                let idx = index.window(0);
                let inner = AbelianGroup::FiniteProduct { factors: base.clone() }.elements(limit)?;
                let mut out = vec![BTreeMap::new()];
                for k in &idx {
                    let mut next = Vec::new();
                    for m in &out {
                        for v in &inner {
                            let GroupElement::Dense(v) = v else { unreachable!() };
                            let mut m2: BTreeMap<MElement, Vec<i64>> = m.clone();
                            if v.iter().any(|&x| x != 0) {
                                m2.insert(k.clone(), v.iter().map(|&x| x as i64).collect());
                            }
                            next.push(m2);
                        }
                    }
                    out = next;
                }
                Ok(out.into_iter().map(GroupElement::Sparse).collect())
            }
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianGroup::FreeZ { rank: 0 } => write!(f, "0"),
            AbelianGroup::FreeZ { rank: 1 } => write!(f, "ℤ"),
            AbelianGroup::FreeZ { rank } => write!(f, "ℤ^{rank}"),
            AbelianGroup::FiniteProduct { factors } if factors.is_empty() => write!(f, "0"),
            AbelianGroup::FiniteProduct { factors } => {
                for (i, n) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "×")?;
                    }
                    write!(f, "ℤ/{n}")?;
                }
                Ok(())
            }
            AbelianGroup::DirectSum { base, index } => {
                write!(f, "(")?;
                AbelianGroup::FiniteProduct { factors: base.clone() }.fmt(f)?;
                write!(f, ")^({index})")
            }
        }
    }
}

/// Coordinates of a group (or of the part of a direct sum supported on a
/// finite index set) as a vector space over `ℤ` with moduli.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    support: Vec<MElement>,
    base: Vec<i128>,
    sparse: bool,
}

impl Layout {
    pub fn dense(group: &AbelianGroup) -> Self {
        Layout { support: vec![], base: group.coordinate_moduli(), sparse: false }
    }

    pub fn sparse(group: &AbelianGroup, mut support: Vec<MElement>) -> Self {
        support.sort();
        support.dedup();
        Layout { support, base: group.coordinate_moduli(), sparse: true }
    }

    /// The layout that covers all the given elements.
    pub fn covering<'a, I: IntoIterator<Item = &'a GroupElement>>(group: &AbelianGroup, elems: I) -> Self {
        match group {
            AbelianGroup::DirectSum { .. } => {
                let support: Vec<MElement> = elems.into_iter().flat_map(|e| e.support()).collect();
                Self::sparse(group, support)
            }
            _ => Self::dense(group),
        }
    }

    pub fn support(&self) -> &[MElement] {
        &self.support
    }

    pub fn is_sparse(&self) -> bool {
        self.sparse
    }

    pub fn moduli(&self) -> Vec<i128> {
        if self.sparse {
            let mut out = Vec::with_capacity(self.support.len() * self.base.len());
            for _ in &self.support {
                out.extend_from_slice(&self.base);
            }
            out
        } else {
            self.base.clone()
        }
    }

    pub fn dim(&self) -> usize {
        if self.sparse {
            self.support.len() * self.base.len()
        } else {
            self.base.len()
        }
    }

    /// `None` when a direct-sum element has support outside the layout.
    pub fn to_vec(&self, x: &GroupElement) -> Option<Vec<i128>> {
        match x {
            GroupElement::Dense(v) => Some(v.clone()),
            GroupElement::Sparse(m) => {
                let k = self.base.len();
                let mut out = vec![0; self.dim()];
                for (i, v) in m {
                    let pos = self.support.binary_search(i).ok()?;
                    for (j, &e) in v.iter().enumerate() {
                        out[pos * k + j] = e as i128;
                    }
                }
                Some(out)
            }
        }
    }

    pub fn from_vec(&self, v: &[i128]) -> GroupElement {
        if !self.sparse {
            return GroupElement::Dense(
                v.iter()
                    .zip(&self.base)
                    .map(|(&x, &n)| if n > 0 { x.rem_euclid(n) } else { x })
                    .collect(),
            );
        }
        let k = self.base.len();
        let mut m = BTreeMap::new();
        for (pos, idx) in self.support.iter().enumerate() {
            let vals: Vec<i64> =
                (0..k).map(|j| v[pos * k + j].rem_euclid(self.base[j]) as i64).collect();
            if vals.iter().any(|&x| x != 0) {
                m.insert(idx.clone(), vals);
            }
        }
        GroupElement::Sparse(m)
    }

    /// Re-expresses a vector of `self` in a layout with larger support.
    pub fn transfer(&self, v: &[i128], to: &Layout) -> Vec<i128> {
        if !self.sparse {
            return v.to_vec();
        }
        to.to_vec(&self.from_vec(v)).expect("target layout must cover the source")
    }

    pub fn union(&self, other: &Layout) -> Layout {
        if !self.sparse {
            return self.clone();
        }
        let mut support = self.support.clone();
        support.extend(other.support.iter().cloned());
        support.sort();
        support.dedup();
        Layout { support, base: self.base.clone(), sparse: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_product_arithmetic() {
        let g = AbelianGroup::finite(vec![2, 4]).unwrap();
        let a = GroupElement::dense(vec![1, 3]);
        let b = GroupElement::dense(vec![1, 2]);
        assert_eq!(g.add(&a, &b), GroupElement::dense(vec![0, 1]));
        assert_eq!(g.neg(&a), GroupElement::dense(vec![1, 1]));
        assert_eq!(g.order().unwrap(), BigUint::from(8u32));
        assert_eq!(g.elements(100).unwrap().len(), 8);
    }

    #[test]
    fn direct_sum_cancels_support() {
        let g = AbelianGroup::direct_sum(vec![2], Monoid::integers(1)).unwrap();
        let e0 = GroupElement::unit(MElement(vec![0]), vec![1]);
        assert_eq!(g.add(&e0, &e0), g.zero());
        assert!(g.contains(&e0));
        assert!(!g.contains(&GroupElement::unit(MElement(vec![0, 1]), vec![1])));
        assert!(!g.is_finite());
        assert!(g.is_torsion());
    }

    #[test]
    fn layout_roundtrip() {
        let g = AbelianGroup::direct_sum(vec![4], Monoid::naturals(1)).unwrap();
        let x = GroupElement::sparse([(MElement(vec![3]), vec![2]), (MElement(vec![1]), vec![1])]);
        let l = Layout::covering(&g, [&x]);
        assert_eq!(l.support().len(), 2);
        let v = l.to_vec(&x).unwrap();
        assert_eq!(l.from_vec(&v), x);
    }
}
