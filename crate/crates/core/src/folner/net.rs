use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::canonical::CanonicalNet;
use super::split::SplitExtension;
use super::FolnerError;
use crate::monoid::{CoordKind, MElement, MSubset, Monoid, MonoidHom, MonoidKind};

#[derive(Clone, Debug)]
pub(crate) enum NetKind {
    /// `[0,n)` on `ℕ` coordinates, `[-n,n]` on `ℤ` coordinates, full cyclic ones.
    Boxes,
    Constant(MSubset),
    Explicit(Vec<MSubset>),
    Translated { inner: FolnerNet, e: MSubset },
    Reinterpreted { inner: FolnerNet },
    /// Doubly indexed product, linearized by `max(i, j)` then lexicographically.
    Product { first: FolnerNet, second: FolnerNet },
    /// The chain `k ↦ F_(E, k)` of a canonically indexed net.
    Canonical { net: CanonicalNet, e: MSubset },
    Split(Box<SplitExtension>),
    /// `G_{m,n} = [0,m)² × [0,n)` in `ℤ²⋊ℤ` with `m = factor · n^power`.
    SemidirectBoxes { factor: u64, power: u32 },
    /// Image of a net under a homomorphism, kept for empirical inspection.
    Image { inner: FolnerNet, hom: MonoidHom },
}

/// A right Følner net presented as a sequence `i = 1, 2, …`, memoized.
#[derive(Clone)]
pub struct FolnerNet {
    monoid: Monoid,
    kind: Arc<NetKind>,
    cache: Arc<Mutex<HashMap<usize, Arc<MSubset>>>>,
}

impl fmt::Debug for FolnerNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FolnerNet({}, {})", self.monoid, self.describe())
    }
}

/// Position `k ≥ 1` in the diagonal order on `ℕ₊ × ℕ₊`.
pub fn diagonal_pair(k: usize) -> (usize, usize) {
    assert!(k >= 1);
    let mut level = (k as f64).sqrt().ceil() as usize;
    while level * level < k {
        level += 1;
    }
    while level > 1 && (level - 1) * (level - 1) >= k {
        level -= 1;
    }
    let offset = k - (level - 1) * (level - 1) - 1;
    if offset < level - 1 {
        (offset + 1, level)
    } else {
        (level, offset - (level - 1) + 1)
    }
}

impl FolnerNet {
    pub(crate) fn from_kind(monoid: &Monoid, kind: NetKind) -> Self {
        FolnerNet { monoid: monoid.clone(), kind: Arc::new(kind), cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    /// Boxes on products of `ℕ`, `ℤ` and cyclic coordinates; the constant net
    /// on a finite monoid.
    pub fn boxes(monoid: &Monoid) -> Result<Self, FolnerError> {
        match monoid.kind() {
            MonoidKind::Commutative(_) if monoid.is_finite() => {
                let all = MSubset::new(monoid, monoid.window(0))?;
                Ok(Self::from_kind(monoid, NetKind::Constant(all)))
            }
            MonoidKind::Commutative(_) => Ok(Self::from_kind(monoid, NetKind::Boxes)),
            MonoidKind::Semidirect { .. } => Err(FolnerError::Unsupported(
                "box nets of ℤ²⋊ℤ are not Følner; use split_extension or semidirect_boxes".into(),
            )),
        }
    }

    pub fn constant(set: MSubset) -> Self {
        let m = set.monoid().clone();
        Self::from_kind(&m, NetKind::Constant(set))
    }

    pub fn explicit(monoid: &Monoid, sets: Vec<MSubset>) -> Result<Self, FolnerError> {
        if sets.iter().any(|s| s.is_empty() || s.monoid() != monoid) {
            return Err(FolnerError::Unsupported("explicit nets need nonempty sets of the same monoid".into()));
        }
        Ok(Self::from_kind(monoid, NetKind::Explicit(sets)))
    }

    /// `(F_i E)_i`.
    pub fn translated(&self, e: &MSubset) -> Result<Self, FolnerError> {
        if e.monoid() != &self.monoid || e.is_empty() {
            return Err(FolnerError::Unsupported("translation set must be a nonempty subset of the same monoid".into()));
        }
        Ok(Self::from_kind(&self.monoid, NetKind::Translated { inner: self.clone(), e: e.clone() }))
    }

    /// The same sets read in a monoid with identical coordinates
    /// (e.g. `ℕ` boxes inside `ℤ`).
    pub fn reinterpreted(&self, target: &Monoid) -> Result<Self, FolnerError> {
        if target.rank() != self.monoid.rank() {
            return Err(FolnerError::Unsupported("rank mismatch".into()));
        }
        Ok(Self::from_kind(target, NetKind::Reinterpreted { inner: self.clone() }))
    }

    /// Product net on `H × K`.
    pub fn product(first: &FolnerNet, second: &FolnerNet) -> Result<Self, FolnerError> {
        let (MonoidKind::Commutative(a), MonoidKind::Commutative(b)) = (first.monoid.kind(), second.monoid.kind())
        else {
            return Err(FolnerError::Unsupported("product nets need commutative factors".into()));
        };
        let mut coords = a.clone();
        coords.extend_from_slice(b);
        let m = Monoid::commutative(coords);
        Ok(Self::from_kind(&m, NetKind::Product { first: first.clone(), second: second.clone() }))
    }

    /// `G_{m,n}` for `m = factor · n^power`.
    pub fn semidirect_boxes(monoid: &Monoid, factor: u64, power: u32) -> Result<Self, FolnerError> {
        if !matches!(monoid.kind(), MonoidKind::Semidirect { .. }) {
            return Err(FolnerError::Unsupported("semidirect boxes need ℤ²⋊ℤ".into()));
        }
        Ok(Self::from_kind(monoid, NetKind::SemidirectBoxes { factor, power }))
    }

    /// `(π(F_i))_i` in the target of `π`.
    pub fn image(&self, hom: &MonoidHom) -> Result<Self, FolnerError> {
        let target = hom
            .target()
            .as_monoid()
            .ok_or_else(|| FolnerError::Unsupported("image nets need a monoid target".into()))?
            .clone();
        Ok(Self::from_kind(&target, NetKind::Image { inner: self.clone(), hom: hom.clone() }))
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    /// The finite length of an explicit net, if any.
    pub fn len_hint(&self) -> Option<usize> {
        match &*self.kind {
            NetKind::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &*self.kind {
            NetKind::Boxes => "boxes".into(),
            NetKind::Constant(_) => "constant".into(),
            NetKind::Explicit(v) => format!("explicit[{}]", v.len()),
            NetKind::Translated { inner, .. } => format!("translated({})", inner.describe()),
            NetKind::Reinterpreted { inner } => format!("reinterpreted({})", inner.describe()),
            NetKind::Product { first, second } => format!("product({}, {})", first.describe(), second.describe()),
            NetKind::Canonical { .. } => "canonical".into(),
            NetKind::Split(_) => "split-extension".into(),
            NetKind::SemidirectBoxes { factor, power } => format!("semidirect-boxes(m={factor}·n^{power})"),
            NetKind::Image { inner, .. } => format!("image({})", inner.describe()),
        }
    }

    /// Human-readable index, e.g. `7` or `(2,3)`.
    pub fn label(&self, i: usize) -> String {
        match &*self.kind {
            NetKind::Product { .. } => {
                let (a, b) = diagonal_pair(i);
                format!("({a};{b})")
            }
            _ => i.to_string(),
        }
    }

    /// `F_i` for `i ≥ 1`.
    pub fn get(&self, i: usize) -> Result<Arc<MSubset>, FolnerError> {
        if i == 0 {
            return Err(FolnerError::IndexOutOfRange(0));
        }
        if let Some(s) = self.cache.lock().expect("net cache poisoned").get(&i) {
            return Ok(s.clone());
        }
        let set = Arc::new(self.compute(i)?);
        self.cache.lock().expect("net cache poisoned").insert(i, set.clone());
        Ok(set)
    }

    fn compute(&self, i: usize) -> Result<MSubset, FolnerError> {
        let n = i as i64;
        match &*self.kind {
            NetKind::Boxes => {
                let kinds = self.monoid.coord_kinds();
                let lo: Vec<i64> = kinds
                    .iter()
                    .map(|k| match k {
                        CoordKind::Int => -n,
                        _ => 0,
                    })
                    .collect();
                let hi: Vec<i64> = kinds
                    .iter()
                    .map(|k| match k {
                        CoordKind::Nat => n,
                        CoordKind::Int => n + 1,
                        CoordKind::Cyclic(m) => *m as i64,
                    })
                    .collect();
                Ok(MSubset::boxed(&self.monoid, &lo, &hi)?)
            }
            NetKind::Constant(s) => Ok(s.clone()),
            NetKind::Explicit(v) => v.get(i - 1).cloned().ok_or(FolnerError::IndexOutOfRange(i)),
            NetKind::Translated { inner, e } => Ok(inner.get(i)?.product(e)?),
            NetKind::Reinterpreted { inner } => Ok(inner.get(i)?.reinterpret(&self.monoid)?),
            NetKind::Product { first, second } => {
                let (a, b) = diagonal_pair(i);
                let fa = first.get(a)?;
                let fb = second.get(b)?;
                let mut elems = Vec::with_capacity(fa.len() * fb.len());
                for x in fa.iter() {
                    for y in fb.iter() {
                        let mut c = x.0.clone();
                        c.extend_from_slice(&y.0);
                        elems.push(MElement(c));
                    }
                }
                Ok(MSubset::new(&self.monoid, elems)?)
            }
            NetKind::Canonical { net, e } => net.get(e, i as u64),
            NetKind::Split(s) => s.get_chain(i as u64),
            NetKind::SemidirectBoxes { factor, power } => {
                let m = (*factor as i64).checked_mul(n.checked_pow(*power).ok_or(FolnerError::Overflow)?);
                let m = m.ok_or(FolnerError::Overflow)?;
                Ok(MSubset::boxed(&self.monoid, &[0, 0, 0], &[m, m, n])?)
            }
            NetKind::Image { inner, hom } => {
                let f = inner.get(i)?;
                Ok(MSubset::new(&self.monoid, hom.image(&f))?)
            }
        }
    }
}
