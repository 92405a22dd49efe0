use std::collections::BTreeMap;
use std::fmt;

use super::EntropyError;
use crate::abelian::{AbelianGroup, GroupElement, Subgroup};
use crate::monoid::{CoordKind, MElement, Monoid, MonoidKind};

/// An endomorphism of one of the supported groups. Matrices act on column
/// vectors: `(φx)_i = Σ_j m_ij x_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Endomorphism {
    /// On `ℤ^r`.
    IntegerMatrix(Vec<Vec<i128>>),
    /// On `ℤ/n_1 × … × ℤ/n_k`; needs `n_i | m_ij n_j`.
    CongruentMatrix(Vec<Vec<i128>>),
    /// On `⊕_S base`: the value at index `k` moves to `k + offset` and is
    /// multiplied by `base`. Values pushed off an `ℕ` coordinate vanish.
    Shift { offset: Vec<i64>, base: Vec<Vec<i128>> },
    /// `φ_1 ∘ φ_2 ∘ …`, applied right to left.
    Composite(Vec<Endomorphism>),
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endomorphism::IntegerMatrix(m) => write!(f, "Z{m:?}"),
            Endomorphism::CongruentMatrix(m) => write!(f, "M{m:?}"),
            Endomorphism::Shift { offset, base } => write!(f, "shift{offset:?}·{base:?}"),
            Endomorphism::Composite(v) => write!(f, "∘{v:?}"),
        }
    }
}

fn identity_matrix(k: usize) -> Vec<Vec<i128>> {
    (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>], moduli: Option<&[i128]>) -> Result<Vec<Vec<i128>>, EntropyError> {
    let k = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; k]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for j in 0..k {
            let mut acc: i128 = 0;
            for (t, &x) in row.iter().enumerate() {
                let p = x.checked_mul(b[t][j]).ok_or(EntropyError::Overflow)?;
                acc = acc.checked_add(p).ok_or(EntropyError::Overflow)?;
            }
            out[i][j] = match moduli {
                Some(m) if m[i] > 0 => acc.rem_euclid(m[i]),
                _ => acc,
            };
        }
    }
    Ok(out)
}

fn mat_apply(m: &[Vec<i128>], x: &[i128], moduli: Option<&[i128]>) -> Result<Vec<i128>, EntropyError> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            let mut acc: i128 = 0;
            for (a, b) in row.iter().zip(x) {
                acc = acc.checked_add(a.checked_mul(*b).ok_or(EntropyError::Overflow)?).ok_or(EntropyError::Overflow)?;
            }
            Ok(match moduli {
                Some(m) if m[i] > 0 => acc.rem_euclid(m[i]),
                _ => acc,
            })
        })
        .collect()
}

/// Checks `n_i | m_ij n_j`, i.e. that `m` induces a map of `∏ ℤ/n_j`.
pub fn congruent_ok(m: &[Vec<i128>], moduli: &[u64]) -> bool {
    m.len() == moduli.len()
        && m.iter().enumerate().all(|(i, row)| {
            row.len() == moduli.len()
                && row.iter().enumerate().all(|(j, &x)| (x * moduli[j] as i128).rem_euclid(moduli[i] as i128) == 0)
        })
}

impl Endomorphism {
    pub fn identity(group: &AbelianGroup) -> Self {
        match group {
            AbelianGroup::FreeZ { rank } => Endomorphism::IntegerMatrix(identity_matrix(*rank)),
            AbelianGroup::FiniteProduct { factors } => Endomorphism::CongruentMatrix(identity_matrix(factors.len())),
            AbelianGroup::DirectSum { base, index } => {
                Endomorphism::Shift { offset: vec![0; index.rank()], base: identity_matrix(base.len()) }
            }
        }
    }

    /// Multiplication by `k`.
    pub fn scalar(group: &AbelianGroup, k: i128) -> Self {
        let scale = |n: usize| -> Vec<Vec<i128>> {
            (0..n).map(|i| (0..n).map(|j| if i == j { k } else { 0 }).collect()).collect()
        };
        match group {
            AbelianGroup::FreeZ { rank } => Endomorphism::IntegerMatrix(scale(*rank)),
            AbelianGroup::FiniteProduct { factors } => Endomorphism::CongruentMatrix(scale(factors.len())),
            AbelianGroup::DirectSum { base, index } => {
                Endomorphism::Shift { offset: vec![0; index.rank()], base: scale(base.len()) }
            }
        }
    }

    /// The index translation by `offset` on `⊕_S base`.
    pub fn shift(group: &AbelianGroup, offset: Vec<i64>) -> Result<Self, EntropyError> {
        let AbelianGroup::DirectSum { base, index } = group else {
            return Err(EntropyError::InvalidEndomorphism("shifts act on direct sums".into()));
        };
        if offset.len() != index.rank() {
            return Err(EntropyError::InvalidEndomorphism("offset rank".into()));
        }
        Ok(Endomorphism::Shift { offset, base: identity_matrix(base.len()) })
    }

    /// Checks that the endomorphism is well defined on `group`.
    pub fn validate(&self, group: &AbelianGroup) -> Result<(), EntropyError> {
        let bad = |s: &str| Err(EntropyError::InvalidEndomorphism(format!("{s} for {group}")));
        match (self, group) {
            (Endomorphism::IntegerMatrix(m), AbelianGroup::FreeZ { rank }) => {
                if m.len() != *rank || m.iter().any(|r| r.len() != *rank) {
                    return bad("matrix shape");
                }
                Ok(())
            }
            (Endomorphism::CongruentMatrix(m), AbelianGroup::FiniteProduct { factors }) => {
                if !congruent_ok(m, factors) {
                    return bad("matrix is not compatible with the moduli");
                }
                Ok(())
            }
            (Endomorphism::Shift { offset, base: b }, AbelianGroup::DirectSum { base, index }) => {
                if !matches!(index.kind(), MonoidKind::Commutative(_)) {
                    return bad("shifts need a commutative index monoid");
                }
                if offset.len() != index.rank() {
                    return bad("offset rank");
                }
                if !congruent_ok(b, base) {
                    return bad("base matrix is not compatible with the moduli");
                }
                Ok(())
            }
            (Endomorphism::Composite(v), g) => v.iter().try_for_each(|e| e.validate(g)),
            _ => bad("endomorphism kind"),
        }
    }

    fn moduli(group: &AbelianGroup) -> Option<Vec<i128>> {
        match group {
            AbelianGroup::FiniteProduct { factors } => Some(factors.iter().map(|&n| n as i128).collect()),
            _ => None,
        }
    }

    pub(crate) fn shift_index(index: &Monoid, k: &MElement, offset: &[i64]) -> Option<MElement> {
        let mut out = Vec::with_capacity(offset.len());
        for ((kind, &a), &o) in index.coord_kinds().iter().zip(&k.0).zip(offset) {
            let x = a + o;
            out.push(match kind {
                CoordKind::Nat if x < 0 => return None,
                CoordKind::Cyclic(n) => x.rem_euclid(*n as i64),
                _ => x,
            });
        }
        Some(MElement(out))
    }

    pub fn apply(&self, group: &AbelianGroup, x: &GroupElement) -> Result<GroupElement, EntropyError> {
        match (self, x) {
            (Endomorphism::IntegerMatrix(m), GroupElement::Dense(v)) => Ok(GroupElement::Dense(mat_apply(m, v, None)?)),
            (Endomorphism::CongruentMatrix(m), GroupElement::Dense(v)) => {
                let mods = Self::moduli(group);
                Ok(GroupElement::Dense(mat_apply(m, v, mods.as_deref())?))
            }
            (Endomorphism::Shift { offset, base }, GroupElement::Sparse(entries)) => {
                let AbelianGroup::DirectSum { base: moduli, index } = group else {
                    return Err(EntropyError::InvalidEndomorphism("shift outside a direct sum".into()));
                };
                let mods: Vec<i128> = moduli.iter().map(|&n| n as i128).collect();
                let mut out: BTreeMap<MElement, Vec<i64>> = BTreeMap::new();
                for (k, v) in entries {
                    let Some(k2) = Self::shift_index(index, k, offset) else { continue };
                    let w: Vec<i128> = v.iter().map(|&e| e as i128).collect();
                    let img = mat_apply(base, &w, Some(&mods))?;
                    let slot = out.entry(k2).or_insert_with(|| vec![0; mods.len()]);
                    for ((s, i), &n) in slot.iter_mut().zip(img).zip(&mods) {
                        *s = ((*s as i128 + i).rem_euclid(n)) as i64;
                    }
                }
                out.retain(|_, v| v.iter().any(|&e| e != 0));
                Ok(GroupElement::Sparse(out))
            }
            (Endomorphism::Composite(v), _) => {
                let mut acc = x.clone();
                for e in v.iter().rev() {
                    acc = e.apply(group, &acc)?;
                }
                Ok(acc)
            }
            _ => Err(EntropyError::InvalidEndomorphism(format!("{self:?} cannot act on {x}"))),
        }
    }

    /// `self ∘ other`, merged into one matrix or shift when that is exact.
    pub fn compose(&self, other: &Endomorphism, group: &AbelianGroup) -> Result<Endomorphism, EntropyError> {
        let mods = Self::moduli(group);
        match (self, other) {
            (Endomorphism::IntegerMatrix(a), Endomorphism::IntegerMatrix(b)) => {
                Ok(Endomorphism::IntegerMatrix(mat_mul(a, b, None)?))
            }
            (Endomorphism::CongruentMatrix(a), Endomorphism::CongruentMatrix(b)) => {
                Ok(Endomorphism::CongruentMatrix(mat_mul(a, b, mods.as_deref())?))
            }
            (Endomorphism::Shift { offset: o1, base: b1 }, Endomorphism::Shift { offset: o2, base: b2 }) => {
                let AbelianGroup::DirectSum { base, index } = group else {
                    return Err(EntropyError::InvalidEndomorphism("shift outside a direct sum".into()));
                };
                // Truncation makes shifts of opposite signs on an ℕ coordinate
                // order-dependent; keep those unmerged.
                let mergeable = index
                    .coord_kinds()
                    .iter()
                    .zip(o1.iter().zip(o2))
                    .all(|(k, (&a, &b))| *k != CoordKind::Nat || a.signum() * b.signum() >= 0);
                if !mergeable {
                    return Ok(Endomorphism::Composite(vec![self.clone(), other.clone()]));
                }
                let m: Vec<i128> = base.iter().map(|&n| n as i128).collect();
                Ok(Endomorphism::Shift {
                    offset: o1.iter().zip(o2).map(|(a, b)| a + b).collect(),
                    base: mat_mul(b1, b2, Some(&m))?,
                })
            }
            _ => {
                let mut parts = Vec::new();
                for e in [self, other] {
                    match e {
                        Endomorphism::Composite(v) => parts.extend(v.iter().cloned()),
                        e => parts.push(e.clone()),
                    }
                }
                Ok(Endomorphism::Composite(parts))
            }
        }
    }

    pub fn pow(&self, k: u64, group: &AbelianGroup) -> Result<Endomorphism, EntropyError> {
        let mut result = Endomorphism::identity(group);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base, group)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base, group)?;
            }
        }
        Ok(result)
    }

    /// Whether `φ(x) = x` on a spanning set.
    pub fn is_identity_on(&self, group: &AbelianGroup) -> Result<bool, EntropyError> {
        for g in spanning_elements(group) {
            if self.apply(group, &g)? != g {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Two-sided inverse, when it exists in the supported forms.
    pub fn inverse(&self, group: &AbelianGroup) -> Result<Endomorphism, EntropyError> {
        let not_inv = || EntropyError::NotInvertible(format!("{self:?}"));
        match self {
            Endomorphism::IntegerMatrix(m) => integer_inverse(m).map(Endomorphism::IntegerMatrix).ok_or_else(not_inv),
            Endomorphism::CongruentMatrix(_) => finite_order_inverse(self, group).ok_or_else(not_inv),
            Endomorphism::Shift { offset, base } => {
                let AbelianGroup::DirectSum { base: moduli, index } = group else { return Err(not_inv()) };
                if index.coord_kinds().iter().zip(offset).any(|(k, &o)| *k == CoordKind::Nat && o != 0) {
                    return Err(not_inv());
                }
                let bg = AbelianGroup::FiniteProduct { factors: moduli.clone() };
                let Endomorphism::CongruentMatrix(bi) = finite_order_inverse(&Endomorphism::CongruentMatrix(base.clone()), &bg)
                    .ok_or_else(not_inv)?
                else {
                    unreachable!()
                };
                Ok(Endomorphism::Shift { offset: offset.iter().map(|o| -o).collect(), base: bi })
            }
            Endomorphism::Composite(v) => {
                let mut parts = Vec::with_capacity(v.len());
                for e in v.iter().rev() {
                    parts.push(e.inverse(group)?);
                }
                Ok(Endomorphism::Composite(parts))
            }
        }
    }

    /// `φ(B)` for a subgroup given by generators.
    pub fn image_subgroup(&self, group: &AbelianGroup, b: &Subgroup) -> Result<Subgroup, EntropyError> {
        if let (Some(gens), Endomorphism::Shift { offset, base }) = (b.base_generators(), self) {
            let AbelianGroup::DirectSum { base: moduli, index } = group else { unreachable!() };
            let onto = index.coord_kinds().iter().zip(offset).all(|(k, &o)| *k != CoordKind::Nat || o == 0);
            if !onto {
                return Err(EntropyError::Unsupported("image of a per-coordinate subgroup under a truncating shift".into()));
            }
            let m: Vec<i128> = moduli.iter().map(|&n| n as i128).collect();
            let imgs: Result<Vec<Vec<i64>>, EntropyError> = gens
                .iter()
                .map(|g| {
                    let w: Vec<i128> = g.iter().map(|&e| e as i128).collect();
                    Ok(mat_apply(base, &w, Some(&m))?.into_iter().map(|e| e as i64).collect())
                })
                .collect();
            return Ok(Subgroup::per_coordinate(group, &imgs?)?);
        }
        let gens = b.generators()?;
        let imgs: Result<Vec<GroupElement>, EntropyError> = gens.iter().map(|g| self.apply(group, g)).collect();
        Ok(Subgroup::generated(group, imgs?)?)
    }

    /// `φ(B) ⊆ C`, decided on generators.
    pub fn maps_into(&self, group: &AbelianGroup, b: &Subgroup, c: &Subgroup) -> Result<Option<GroupElement>, EntropyError> {
        if let (Some(gens), Endomorphism::Shift { base, .. }) = (b.base_generators(), self) {
            let AbelianGroup::DirectSum { base: moduli, .. } = group else { unreachable!() };
            let m: Vec<i128> = moduli.iter().map(|&n| n as i128).collect();
            let Some(cg) = c.base_generators() else {
                return Err(EntropyError::Unsupported("per-coordinate subgroup into a finitely generated one".into()));
            };
            let bg = AbelianGroup::FiniteProduct { factors: moduli.clone() };
            let c0 = Subgroup::generated(&bg, cg.iter().map(|r| GroupElement::Dense(r.iter().map(|&e| e as i128).collect())))?;
            for g in gens {
                let w: Vec<i128> = g.iter().map(|&e| e as i128).collect();
                let img = GroupElement::Dense(mat_apply(base, &w, Some(&m))?);
                if !c0.contains(&img) {
                    return Ok(Some(GroupElement::unit(MElement(vec![0; group_index_rank(group)]), g)));
                }
            }
            return Ok(None);
        }
        for g in b.generators()? {
            let img = self.apply(group, &g)?;
            if !c.contains(&img) {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

fn group_index_rank(group: &AbelianGroup) -> usize {
    match group {
        AbelianGroup::DirectSum { index, .. } => index.rank(),
        _ => 0,
    }
}

/// Unit vectors (at index `0` for direct sums).
pub fn spanning_elements(group: &AbelianGroup) -> Vec<GroupElement> {
    match group {
        AbelianGroup::FreeZ { rank } => (0..*rank).map(|i| GroupElement::Dense(identity_matrix(*rank)[i].clone())).collect(),
        AbelianGroup::FiniteProduct { factors } => (0..factors.len())
            .map(|i| group.normalize(GroupElement::Dense(identity_matrix(factors.len())[i].clone())).expect("unit"))
            .collect(),
        AbelianGroup::DirectSum { base, index } => (0..base.len())
            .map(|i| {
                let mut v = vec![0i64; base.len()];
                v[i] = 1;
                group.normalize(GroupElement::unit(index.identity(), v)).expect("unit")
            })
            .collect(),
    }
}

fn integer_inverse(m: &[Vec<i128>]) -> Option<Vec<Vec<i128>>> {
    use num_rational::Ratio;
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Ratio<i128>> = r.iter().map(|&x| Ratio::from_integer(x)).collect();
            row.extend((0..n).map(|j| Ratio::from_integer(i128::from(i == j))));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != Ratio::from_integer(0))?;
        a.swap(col, p);
        let piv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter()
        .map(|r| r[n..].iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

/// For an automorphism of a finite group, `φ^{k-1}` where `φ^k = id`.
fn finite_order_inverse(phi: &Endomorphism, group: &AbelianGroup) -> Option<Endomorphism> {
    const LIMIT: usize = 1 << 16;
    let mut prev = Endomorphism::identity(group);
    let mut cur = phi.clone();
    for _ in 0..LIMIT {
        if cur.is_identity_on(group).ok()? {
            return Some(prev);
        }
        prev = cur.clone();
        cur = cur.compose(phi, group).ok()?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_and_shift_application() {
        let z = AbelianGroup::integers();
        let m4 = Endomorphism::scalar(&z, 4);
        assert_eq!(m4.apply(&z, &GroupElement::scalar(3)).unwrap(), GroupElement::scalar(12));
        assert_eq!(m4.pow(3, &z).unwrap(), Endomorphism::scalar(&z, 64));
        let g = AbelianGroup::direct_sum(vec![2], Monoid::naturals(1)).unwrap();
        let left = Endomorphism::shift(&g, vec![-1]).unwrap();
        let x = GroupElement::sparse([(MElement(vec![0]), vec![1]), (MElement(vec![3]), vec![1])]);
        assert_eq!(left.apply(&g, &x).unwrap(), GroupElement::unit(MElement(vec![2]), vec![1]));
        assert!(left.inverse(&g).is_err());
    }

    #[test]
    fn congruence_condition() {
        let g = AbelianGroup::finite(vec![2, 4]).unwrap();
        assert!(Endomorphism::CongruentMatrix(vec![vec![1, 0], vec![2, 1]]).validate(&g).is_ok());
        assert!(Endomorphism::CongruentMatrix(vec![vec![1, 0], vec![1, 1]]).validate(&g).is_err());
    }

    #[test]
    fn inverses() {
        let g = AbelianGroup::finite(vec![7]).unwrap();
        let m3 = Endomorphism::scalar(&g, 3);
        let inv = m3.inverse(&g).unwrap();
        assert!(m3.compose(&inv, &g).unwrap().is_identity_on(&g).unwrap());
        let z2 = AbelianGroup::FreeZ { rank: 2 };
        let u = Endomorphism::IntegerMatrix(vec![vec![2, 1], vec![1, 1]]);
        assert!(u.compose(&u.inverse(&z2).unwrap(), &z2).unwrap().is_identity_on(&z2).unwrap());
        assert!(Endomorphism::scalar(&z2, 2).inverse(&z2).is_err());
    }
}
