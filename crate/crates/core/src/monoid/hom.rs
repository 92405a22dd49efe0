//! Surjective homomorphisms `π: S → C`, their kernels `N = π⁻¹(1)`, sections,
//! and the goodness test `Nσ(c) = π⁻¹(c) = σ(c)N`.

use std::collections::BTreeSet;

use super::monoid::{CoordKind, MElement, Monoid, MonoidError, MonoidKind};
use super::msubset::MSubset;

/// What happens to one coordinate of a commutative monoid under `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordMap {
    Keep,
    Drop,
    /// Reduce modulo `n` onto `ℤ/n`.
    Reduce(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomKind {
    Identity,
    Coordinatewise(Vec<CoordMap>),
    /// `ℤ²⋊ℤ → ℤ`, `(v, c) ↦ c`.
    SemidirectQuotient,
    /// `ℕ → ({0,…,cap}, min(cap, x + y))`. The target is not cancellative,
    /// so it is carried as a bare codomain rather than a `Monoid`.
    Truncation { cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Codomain {
    Monoid(Monoid),
    Truncated { cap: u64 },
}

impl Codomain {
    pub fn identity(&self) -> MElement {
        match self {
            Codomain::Monoid(m) => m.identity(),
            Codomain::Truncated { .. } => MElement(vec![0]),
        }
    }

    pub fn mul(&self, a: &MElement, b: &MElement) -> MElement {
        match self {
            Codomain::Monoid(m) => m.mul(a, b),
            Codomain::Truncated { cap } => MElement(vec![(a.0[0] + b.0[0]).min(*cap as i64)]),
        }
    }

    pub fn contains(&self, c: &MElement) -> bool {
        match self {
            Codomain::Monoid(m) => m.contains(c),
            Codomain::Truncated { cap } => c.0.len() == 1 && c.0[0] >= 0 && c.0[0] as u64 <= *cap,
        }
    }

    pub fn as_monoid(&self) -> Option<&Monoid> {
        match self {
            Codomain::Monoid(m) => Some(m),
            Codomain::Truncated { .. } => None,
        }
    }

    /// Elements in the canonical window of radius `r`.
    pub fn window(&self, r: i64) -> Vec<MElement> {
        match self {
            Codomain::Monoid(m) => m.window(r),
            Codomain::Truncated { cap } => (0..=*cap as i64).map(|x| MElement(vec![x])).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidHom {
    source: Monoid,
    kind: HomKind,
    target: Codomain,
}

impl MonoidHom {
    pub fn identity(source: &Monoid) -> Self {
        MonoidHom { source: source.clone(), kind: HomKind::Identity, target: Codomain::Monoid(source.clone()) }
    }

    pub fn coordinatewise(source: &Monoid, maps: Vec<CoordMap>) -> Result<Self, MonoidError> {
        let MonoidKind::Commutative(kinds) = source.kind() else {
            return Err(MonoidError::Unsupported("coordinatewise maps need a commutative source".into()));
        };
        if source.is_opposite() && !source.is_commutative() {
            return Err(MonoidError::Unsupported("opposite source".into()));
        }
        if maps.len() != kinds.len() {
            return Err(MonoidError::Unsupported(format!(
                "expected {} coordinate maps, got {}",
                kinds.len(),
                maps.len()
            )));
        }
        let mut target = Vec::new();
        for (k, m) in kinds.iter().zip(&maps) {
            match (m, k) {
                (CoordMap::Keep, _) => target.push(*k),
                (CoordMap::Drop, _) => {}
                (CoordMap::Reduce(0), _) => {
                    return Err(MonoidError::Unsupported("reduction modulo 0".into()));
                }
                (CoordMap::Reduce(n), CoordKind::Cyclic(m)) if m % n != 0 => {
                    return Err(MonoidError::Unsupported(format!("ℤ/{m} does not map onto ℤ/{n}")));
                }
                (CoordMap::Reduce(n), _) => target.push(CoordKind::Cyclic(*n)),
            }
        }
        Ok(MonoidHom {
            source: source.clone(),
            kind: HomKind::Coordinatewise(maps),
            target: Codomain::Monoid(Monoid::commutative(target)),
        })
    }

    /// Projection of a product onto its last `k` coordinates.
    pub fn project_last(source: &Monoid, k: usize) -> Result<Self, MonoidError> {
        let r = source.rank();
        let maps = (0..r).map(|i| if i + k >= r { CoordMap::Keep } else { CoordMap::Drop }).collect();
        Self::coordinatewise(source, maps)
    }

    /// Projection of a product onto its first `k` coordinates.
    pub fn project_first(source: &Monoid, k: usize) -> Result<Self, MonoidError> {
        let r = source.rank();
        let maps = (0..r).map(|i| if i < k { CoordMap::Keep } else { CoordMap::Drop }).collect();
        Self::coordinatewise(source, maps)
    }

    pub fn semidirect_quotient(source: &Monoid) -> Result<Self, MonoidError> {
        if !matches!(source.kind(), MonoidKind::Semidirect { .. }) || source.is_opposite() {
            return Err(MonoidError::Unsupported("source must be ℤ²⋊ℤ".into()));
        }
        Ok(MonoidHom {
            source: source.clone(),
            kind: HomKind::SemidirectQuotient,
            target: Codomain::Monoid(Monoid::integers(1)),
        })
    }

    pub fn truncation(cap: u64) -> Self {
        MonoidHom {
            source: Monoid::naturals(1),
            kind: HomKind::Truncation { cap },
            target: Codomain::Truncated { cap },
        }
    }

    pub fn source(&self) -> &Monoid {
        &self.source
    }
    pub fn target(&self) -> &Codomain {
        &self.target
    }
    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    pub fn apply(&self, s: &MElement) -> MElement {
        match &self.kind {
            HomKind::Identity => s.clone(),
            HomKind::Coordinatewise(maps) => MElement(
                maps.iter()
                    .zip(&s.0)
                    .filter_map(|(m, &x)| match m {
                        CoordMap::Keep => Some(x),
                        CoordMap::Drop => None,
                        CoordMap::Reduce(n) => Some(x.rem_euclid(*n as i64)),
                    })
                    .collect(),
            ),
            HomKind::SemidirectQuotient => MElement(vec![s.0[2]]),
            HomKind::Truncation { cap } => MElement(vec![s.0[0].min(*cap as i64)]),
        }
    }

    pub fn image(&self, f: &MSubset) -> BTreeSet<MElement> {
        f.iter().map(|s| self.apply(s)).collect()
    }

    /// The kernel `N = π⁻¹(1)` as a monoid, with its embedding into `S`.
    pub fn kernel(&self) -> Kernel {
        match &self.kind {
            HomKind::Identity => Kernel { monoid: Monoid::trivial(), scales: vec![], rank: self.source.rank() },
            HomKind::Coordinatewise(maps) => {
                let kinds = self.source.coord_kinds();
                let mut coords = Vec::new();
                let mut scales = Vec::new();
                for (i, (m, k)) in maps.iter().zip(&kinds).enumerate() {
                    match (m, k) {
                        (CoordMap::Keep, _) => {}
                        (CoordMap::Drop, _) => {
                            coords.push(*k);
                            scales.push((i, 1));
                        }
                        (CoordMap::Reduce(n), CoordKind::Cyclic(m)) => {
                            if m / n > 1 {
                                coords.push(CoordKind::Cyclic(m / n));
                                scales.push((i, *n as i64));
                            }
                        }
                        (CoordMap::Reduce(n), _) => {
                            coords.push(*k);
                            scales.push((i, *n as i64));
                        }
                    }
                }
                Kernel { monoid: Monoid::commutative(coords), scales, rank: self.source.rank() }
            }
            HomKind::SemidirectQuotient => {
                Kernel { monoid: Monoid::integers(2), scales: vec![(0, 1), (1, 1)], rank: 3 }
            }
            HomKind::Truncation { cap } => {
                if *cap == 0 {
                    Kernel { monoid: Monoid::naturals(1), scales: vec![(0, 1)], rank: 1 }
                } else {
                    Kernel { monoid: Monoid::trivial(), scales: vec![], rank: 1 }
                }
            }
        }
    }

    /// `π⁻¹(c)` intersected with the canonical window: `ℕ` coordinates in
    /// `[0, bound)`, `ℤ` coordinates in `[-bound, bound]`.
    pub fn fiber(&self, c: &MElement, bound: i64) -> Result<MSubset, MonoidError> {
        if !self.target.contains(c) {
            return Err(MonoidError::NotAnElement(c.clone()));
        }
        let range = |k: &CoordKind| -> Vec<i64> {
            match k {
                CoordKind::Nat => (0..bound).collect(),
                CoordKind::Int => (-bound..=bound).collect(),
                CoordKind::Cyclic(n) => (0..*n as i64).collect(),
            }
        };
        let per_coord: Vec<Vec<i64>> = match &self.kind {
            HomKind::Identity => c.0.iter().map(|&x| vec![x]).collect(),
            HomKind::Coordinatewise(maps) => {
                let kinds = self.source.coord_kinds();
                let mut j = 0;
                let mut out = Vec::new();
                for (m, k) in maps.iter().zip(&kinds) {
                    match m {
                        CoordMap::Keep => {
                            out.push(vec![c.0[j]]);
                            j += 1;
                        }
                        CoordMap::Drop => out.push(range(k)),
                        CoordMap::Reduce(n) => {
                            let r = c.0[j];
                            j += 1;
                            out.push(range(k).into_iter().filter(|x| x.rem_euclid(*n as i64) == r).collect());
                        }
                    }
                }
                out
            }
            HomKind::SemidirectQuotient => {
                vec![range(&CoordKind::Int), range(&CoordKind::Int), vec![c.0[0]]]
            }
            HomKind::Truncation { cap } => {
                let c0 = c.0[0];
                if (c0 as u64) < *cap {
                    vec![vec![c0]]
                } else {
                    vec![(c0..bound.max(c0 + 1)).collect()]
                }
            }
        };
        let mut elems = vec![Vec::new()];
        for vals in &per_coord {
            let mut next = Vec::new();
            for p in &elems {
                for &v in vals {
                    let mut q: Vec<i64> = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            elems = next;
        }
        MSubset::new(&self.source, elems.into_iter().map(MElement))
    }

    /// Decides `Ns = [s] = sN` from the shape of `π`.
    pub fn is_good_element(&self, s: &MElement) -> Result<bool, MonoidError> {
        self.source.check(s)?;
        if self.source.is_group() {
            // Every fibre is a coset of the normal subgroup N.
            return Ok(true);
        }
        Ok(match &self.kind {
            HomKind::Identity => true,
            HomKind::SemidirectQuotient => true,
            HomKind::Coordinatewise(maps) => {
                let kinds = self.source.coord_kinds();
                maps.iter().zip(&kinds).zip(&s.0).all(|((m, k), &x)| match (m, k) {
                    (CoordMap::Keep, _) => true,
                    (CoordMap::Drop, CoordKind::Nat) => x == 0,
                    (CoordMap::Reduce(n), CoordKind::Nat) => (x as u64) < *n,
                    _ => true,
                })
            }
            HomKind::Truncation { cap } => {
                let x = s.0[0] as u64;
                if *cap == 0 {
                    x == 0
                } else {
                    x < *cap
                }
            }
        })
    }

    /// Searches a window for a witness against goodness of `s`. Returns a
    /// description of the first violation found.
    pub fn goodness_falsifier(&self, s: &MElement, window: usize) -> Option<String> {
        let kernel = self.kernel();
        let c = self.apply(s);
        // Grow the fibre window until it has about `window` elements.
        let mut bound = 1;
        let mut fib = self.fiber(&c, bound).ok()?;
        while fib.len() < window && bound < 1 << 20 {
            let next = self.fiber(&c, bound * 2).ok()?;
            if next.len() == fib.len() && bound > 64 {
                break;
            }
            fib = next;
            bound *= 2;
        }
        for f in fib.iter().take(window) {
            let left = self.solve_left(s, f);
            match left {
                Some(n) if kernel.contains_image(&n) && self.source.mul(&n, s) == *f => {}
                _ => return Some(format!("{f} ∈ [{s}] is not in N·{s}")),
            }
            let right = self.solve_right(s, f);
            match right {
                Some(n) if kernel.contains_image(&n) && self.source.mul(s, &n) == *f => {}
                _ => return Some(format!("{f} ∈ [{s}] is not in {s}·N")),
            }
        }
        None
    }

    // Candidate n with n·s = f, computed in the group completion.
    pub(crate) fn solve_left(&self, s: &MElement, f: &MElement) -> Option<MElement> {
        match self.source.kind() {
            MonoidKind::Semidirect { .. } => {
                let si = self.source.inverse(s).ok()?;
                Some(self.source.mul(f, &si))
            }
            MonoidKind::Commutative(_) => self.diff(f, s),
        }
    }

    pub(crate) fn solve_right(&self, s: &MElement, f: &MElement) -> Option<MElement> {
        match self.source.kind() {
            MonoidKind::Semidirect { .. } => {
                let si = self.source.inverse(s).ok()?;
                Some(self.source.mul(&si, f))
            }
            MonoidKind::Commutative(_) => self.diff(f, s),
        }
    }

    fn diff(&self, f: &MElement, s: &MElement) -> Option<MElement> {
        let kinds = self.source.coord_kinds();
        let d = MElement(
            kinds
                .iter()
                .zip(f.0.iter().zip(&s.0))
                .map(|(k, (&a, &b))| match k {
                    CoordKind::Cyclic(n) => (a - b).rem_euclid(*n as i64),
                    _ => a - b,
                })
                .collect(),
        );
        self.source.contains(&d).then_some(d)
    }

    /// A good section with `σ(1) = 1`, when one exists.
    pub fn find_good_section(&self) -> Option<Section> {
        let rule = match &self.kind {
            HomKind::Identity => SectionRule::Identity,
            HomKind::Coordinatewise(_) => SectionRule::MinimalRepresentatives,
            HomKind::SemidirectQuotient => SectionRule::SemidirectCanonical,
            HomKind::Truncation { cap } => {
                if *cap == 0 {
                    SectionRule::Table(vec![(MElement(vec![0]), MElement(vec![0]))])
                } else {
                    // The top element's fibre [cap, ∞) is never a single N-coset.
                    return None;
                }
            }
        };
        let section = Section { hom: self.clone(), rule };
        debug_assert!(section.is_good());
        Some(section)
    }

    /// `h_s(n)` with `n·s = s·h_s(n)`.
    pub fn fiber_conjugation(&self, s: &MElement, n: &MElement) -> Result<MElement, MonoidError> {
        let kernel = self.kernel();
        if !kernel.contains_image(n) {
            return Err(MonoidError::NotAnElement(n.clone()));
        }
        let ns = self.source.mul(n, s);
        let h = self
            .solve_right(s, &ns)
            .filter(|h| kernel.contains_image(h) && self.source.mul(s, h) == ns)
            .ok_or_else(|| MonoidError::Unsupported(format!("{s} is not semi-good")))?;
        Ok(h)
    }
}

/// `N = π⁻¹(1)` with an embedding `N → S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Kernel {
    monoid: Monoid,
    // For each kernel coordinate: (source coordinate, scale).
    scales: Vec<(usize, i64)>,
    rank: usize,
}

impl Kernel {
    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn embed(&self, n: &MElement) -> MElement {
        let mut out = vec![0; self.rank];
        for (&(i, k), &x) in self.scales.iter().zip(&n.0) {
            out[i] = k * x;
        }
        MElement(out)
    }

    pub fn embed_set(&self, f: &MSubset, source: &Monoid) -> MSubset {
        MSubset::from_trusted(source, f.iter().map(|n| self.embed(n)).collect())
    }

    /// Whether a source element lies in the image of the embedding.
    pub fn contains_image(&self, s: &MElement) -> bool {
        s.0.len() == self.rank && self.pull_back(s).is_some()
    }

    /// Inverse of `embed` on its image.
    pub fn pull_back(&self, s: &MElement) -> Option<MElement> {
        let mut out = Vec::with_capacity(self.scales.len());
        let mut used = vec![false; self.rank];
        for &(i, k) in &self.scales {
            used[i] = true;
            if s.0[i] % k != 0 {
                return None;
            }
            out.push(s.0[i] / k);
        }
        if s.0.iter().zip(&used).any(|(&x, &u)| !u && x != 0) {
            return None;
        }
        let n = MElement(out);
        self.monoid.contains(&n).then_some(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SectionRule {
    Identity,
    /// Least non-negative representative per coordinate, 0 on dropped ones.
    MinimalRepresentatives,
    /// `c ↦ (0, 0, c)`.
    SemidirectCanonical,
    Table(Vec<(MElement, MElement)>),
}

/// A map `σ: C → S` with `π ∘ σ = id`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Section {
    hom: MonoidHom,
    rule: SectionRule,
}

impl Section {
    pub fn new(hom: &MonoidHom, rule: SectionRule) -> Result<Self, MonoidError> {
        let s = Section { hom: hom.clone(), rule };
        for c in hom.target.window(3) {
            let x = s.apply(&c)?;
            if hom.apply(&x) != c {
                return Err(MonoidError::Unsupported(format!("π(σ({c})) ≠ {c}")));
            }
        }
        Ok(s)
    }

    pub fn hom(&self) -> &MonoidHom {
        &self.hom
    }

    pub fn rule(&self) -> &SectionRule {
        &self.rule
    }

    pub fn apply(&self, c: &MElement) -> Result<MElement, MonoidError> {
        if !self.hom.target.contains(c) {
            return Err(MonoidError::NotAnElement(c.clone()));
        }
        match (&self.rule, &self.hom.kind) {
            (SectionRule::Identity, _) => Ok(c.clone()),
            (SectionRule::MinimalRepresentatives, HomKind::Coordinatewise(maps)) => {
                let mut j = 0;
                let mut out = Vec::with_capacity(maps.len());
                for m in maps {
                    match m {
                        CoordMap::Drop => out.push(0),
                        _ => {
                            out.push(c.0[j]);
                            j += 1;
                        }
                    }
                }
                Ok(MElement(out))
            }
            (SectionRule::SemidirectCanonical, _) => Ok(MElement(vec![0, 0, c.0[0]])),
            (SectionRule::Table(t), _) => t
                .iter()
                .find(|(k, _)| k == c)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| MonoidError::NotAnElement(c.clone())),
            (rule, kind) => Err(MonoidError::Unsupported(format!("section rule {rule:?} for {kind:?}"))),
        }
    }

    pub fn apply_set(&self, y: &MSubset) -> Result<MSubset, MonoidError> {
        let elems: Result<BTreeSet<MElement>, MonoidError> = y.iter().map(|c| self.apply(c)).collect();
        Ok(MSubset::from_trusted(&self.hom.source, elems?))
    }

    /// Checks goodness of `σ(c)` for every `c` in a window of `C`.
    pub fn is_good(&self) -> bool {
        self.hom
            .target
            .window(4)
            .iter()
            .all(|c| self.apply(c).and_then(|s| self.hom.is_good_element(&s)).unwrap_or(false))
            && self.apply(&self.hom.target.identity()).ok() == Some(self.hom.source.identity())
    }
}
