use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{
    annihilate_vectors, check_bound, dense_generators, dual_endomorphism, dual_matrix, dual_preimage,
    lattice_to_subgroup, DualityError, DEFAULT_DUAL_BOUND,
};
use crate::abelian::lattice::ModLattice;
use crate::abelian::{ln_biguint, AbelianGroup, GroupElement, Subgroup};
use crate::entropy::{Action, Endomorphism};
use crate::folner::FolnerNet;
use crate::integral::{IntegralEstimate, IntegralRow, DEFAULT_TOLERANCE};
use crate::monoid::{MElement, MSubset, Monoid};

/// `K_W = ∏_{k ∈ W} base` for a finite window `W` of the index monoid,
/// standing in for the dual of `⊕_S base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedProfinite {
    base: Vec<u64>,
    index: Monoid,
    coords: Vec<MElement>,
}

impl WindowedProfinite {
    pub fn new<I: IntoIterator<Item = MElement>>(base: Vec<u64>, index: &Monoid, coords: I) -> Result<Self, DualityError> {
        let mut coords: Vec<MElement> = coords.into_iter().collect();
        for c in &coords {
            index.check(c)?;
        }
        coords.sort();
        coords.dedup();
        if coords.is_empty() {
            return Err(DualityError::Unsupported("empty window".into()));
        }
        Ok(WindowedProfinite { base, index: index.clone(), coords })
    }

    /// The window `∏ [lo_i, hi_i)`.
    pub fn boxed(base: Vec<u64>, index: &Monoid, lo: &[i64], hi: &[i64]) -> Result<Self, DualityError> {
        let b = MSubset::boxed(index, lo, hi)?;
        Self::new(base, index, b.iter().cloned())
    }

    pub fn coords(&self) -> &[MElement] {
        &self.coords
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn index_monoid(&self) -> &Monoid {
        &self.index
    }

    pub fn position(&self, k: &MElement) -> Option<usize> {
        self.coords.binary_search(k).ok()
    }

    /// `K_W` as a finite product, coordinate block `p` holding window point `p`.
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::FiniteProduct { factors: self.coords.iter().flat_map(|_| self.base.iter().copied()).collect() }
    }

    fn moduli(&self) -> Vec<i128> {
        self.group().coordinate_moduli()
    }

    /// `B^⊥` for a finitely generated `B ≤ ⊕ base` supported in the window.
    pub fn annihilator(&self, b: &Subgroup) -> Result<OpenSubgroup, DualityError> {
        let AbelianGroup::DirectSum { base, index } = b.group() else {
            return Err(DualityError::Unsupported("windowed annihilators need a direct sum".into()));
        };
        if *base != self.base || *index != self.index {
            return Err(DualityError::Unsupported("subgroup lives in another direct sum".into()));
        }
        let gens = b.generators()?;
        let mut support: Vec<MElement> = gens.iter().flat_map(GroupElement::support).collect();
        support.sort();
        support.dedup();
        for k in &support {
            if self.position(k).is_none() {
                return Err(DualityError::WindowEscape { element: self.index.identity(), coordinate: k.clone() });
            }
        }
        let bl = self.base.len();
        let vectors: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| {
                let GroupElement::Sparse(m) = g else { unreachable!() };
                let mut v = vec![0i128; support.len() * bl];
                for (k, val) in m {
                    let p = support.binary_search(k).expect("support");
                    for (t, &e) in val.iter().enumerate() {
                        v[p * bl + t] = e as i128;
                    }
                }
                v
            })
            .collect();
        let factors: Vec<u64> = support.iter().flat_map(|_| self.base.iter().copied()).collect();
        let u_p = annihilate_vectors(&factors, &vectors);
        self.cylinder(&support, &u_p.basis())
    }

    /// `{χ : χ|_P ∈ U_P}` where `U_P` is generated by `rows` over the
    /// coordinates `P`.
    pub fn cylinder(&self, support: &[MElement], rows: &[Vec<i128>]) -> Result<OpenSubgroup, DualityError> {
        let bl = self.base.len();
        let dim = self.coords.len() * bl;
        let mut gens: Vec<Vec<i128>> = Vec::new();
        let mut constrained = vec![false; self.coords.len()];
        let mut pos = Vec::with_capacity(support.len());
        for k in support {
            let p = self.position(k).ok_or_else(|| DualityError::WindowEscape {
                element: self.index.identity(),
                coordinate: k.clone(),
            })?;
            constrained[p] = true;
            pos.push(p);
        }
        for r in rows {
            let mut v = vec![0i128; dim];
            for (q, &p) in pos.iter().enumerate() {
                v[p * bl..p * bl + bl].copy_from_slice(&r[q * bl..q * bl + bl]);
            }
            gens.push(v);
        }
        for (p, &c) in constrained.iter().enumerate() {
            if !c {
                for t in 0..bl {
                    let mut v = vec![0i128; dim];
                    v[p * bl + t] = 1;
                    gens.push(v);
                }
            }
        }
        let group = self.group();
        let lat = ModLattice::from_rows(self.moduli(), gens);
        let mut support = support.to_vec();
        support.sort();
        Ok(OpenSubgroup { space: DualSpace::Windowed(self.clone()), sub: lattice_to_subgroup(&group, &lat)?, support })
    }

    /// `{χ : χ_k = 0 for k ∈ coords}`.
    pub fn vanishing(&self, coords: &[MElement]) -> Result<OpenSubgroup, DualityError> {
        self.cylinder(coords, &[])
    }
}

/// Where characters live: the full dual of a finite group, or a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualSpace {
    Finite(AbelianGroup),
    Windowed(WindowedProfinite),
}

impl DualSpace {
    pub fn group(&self) -> AbelianGroup {
        match self {
            DualSpace::Finite(g) => g.clone(),
            DualSpace::Windowed(w) => w.group(),
        }
    }
}

/// An open subgroup, of finite index by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSubgroup {
    pub space: DualSpace,
    pub sub: Subgroup,
    /// Window points the subgroup constrains (windowed case).
    pub support: Vec<MElement>,
}

impl OpenSubgroup {
    pub fn finite(sub: Subgroup) -> Result<Self, DualityError> {
        let g = sub.group().clone();
        if !matches!(g, AbelianGroup::FiniteProduct { .. }) {
            return Err(DualityError::Unsupported(format!("{g} is not a finite product")));
        }
        Ok(OpenSubgroup { space: DualSpace::Finite(g), sub, support: vec![] })
    }

    /// `[K : U]`.
    pub fn index(&self) -> BigUint {
        let whole = self.space.group().order().expect("finite");
        let part = self.sub.order().finite().expect("finite").clone();
        whole / part
    }

    pub fn ln_index(&self) -> f64 {
        ln_biguint(&self.index())
    }

    pub fn meet(&self, other: &OpenSubgroup) -> Result<OpenSubgroup, DualityError> {
        if self.space != other.space {
            return Err(DualityError::Unsupported("open subgroups of different spaces".into()));
        }
        let mut support = self.support.clone();
        support.extend(other.support.iter().cloned());
        support.sort();
        support.dedup();
        Ok(OpenSubgroup { space: self.space.clone(), sub: self.sub.meet(&other.sub)?, support })
    }
}

/// `α̂`, the dual action, on the full dual or a window of it.
#[derive(Clone, Debug)]
pub struct DualAction {
    alpha: Action,
    space: DualSpace,
    bound: u64,
}

/// The dual of `α`. Finite groups use their full dual; direct sums need a
/// window of matching base and index.
pub fn dual_action(alpha: &Action, window: Option<WindowedProfinite>) -> Result<DualAction, DualityError> {
    match (alpha.group(), window) {
        (g @ AbelianGroup::FiniteProduct { .. }, _) => {
            check_bound(g, DEFAULT_DUAL_BOUND)?;
            Ok(DualAction { alpha: alpha.clone(), space: DualSpace::Finite(g.clone()), bound: DEFAULT_DUAL_BOUND })
        }
        (AbelianGroup::DirectSum { base, index }, Some(w)) if *base == w.base && *index == w.index => {
            Ok(DualAction { alpha: alpha.clone(), space: DualSpace::Windowed(w), bound: DEFAULT_DUAL_BOUND })
        }
        (AbelianGroup::DirectSum { .. }, _) => {
            Err(DualityError::Unsupported("direct sums need a window with the same base and index".into()))
        }
        (g, _) => Err(DualityError::Unsupported(format!("no dual for {g}"))),
    }
}

type Block = Vec<Vec<i128>>;

fn block_mul(a: &Block, b: &Block, moduli: &[i128]) -> Block {
    let k = moduli.len();
    (0..k)
        .map(|i| (0..k).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<i128>().rem_euclid(moduli[i])).collect())
        .collect()
}

/// `(α̂χ)_k = Σ block · χ_j`, as a list of `(j, block)`.
pub(crate) fn dual_rows(phi: &Endomorphism, k: &MElement, index: &Monoid, base: &[u64]) -> Result<Vec<(MElement, Block)>, DualityError> {
    let moduli: Vec<i128> = base.iter().map(|&n| n as i128).collect();
    match phi {
        // α moves the value at j to j + o, so α̂ reads χ at k + o.
        Endomorphism::Shift { offset, base: m } => Ok(match Endomorphism::shift_index(index, k, offset) {
            Some(j) => vec![(j, dual_matrix(m, base))],
            None => vec![],
        }),
        Endomorphism::Composite(v) => {
            let id: Block = (0..base.len()).map(|i| (0..base.len()).map(|j| i128::from(i == j)).collect()).collect();
            let mut rows: BTreeMap<MElement, Block> = BTreeMap::from([(k.clone(), id)]);
            for e in v.iter().rev() {
                let mut next: BTreeMap<MElement, Block> = BTreeMap::new();
                for (j, b) in &rows {
                    for (j2, b2) in dual_rows(e, j, index, base)? {
                        let prod = block_mul(b, &b2, &moduli);
                        match next.get_mut(&j2) {
                            Some(acc) => {
                                for (r, pr) in acc.iter_mut().zip(prod) {
                                    for ((x, y), &n) in r.iter_mut().zip(pr).zip(&moduli) {
                                        *x = (*x + y).rem_euclid(n);
                                    }
                                }
                            }
                            None => {
                                next.insert(j2, prod);
                            }
                        }
                    }
                }
                rows = next;
            }
            Ok(rows.into_iter().collect())
        }
        e => Err(DualityError::Unsupported(format!("windowed dual of {e:?}"))),
    }
}

impl DualAction {
    pub fn space(&self) -> &DualSpace {
        &self.space
    }

    pub fn action(&self) -> &Action {
        &self.alpha
    }

    /// Window points read by `α̂(s)` at the points of `support`.
    pub fn reads(&self, s: &MElement, support: &[MElement]) -> Result<Vec<MElement>, DualityError> {
        let AbelianGroup::DirectSum { base, index } = self.alpha.group() else {
            return Ok(vec![]);
        };
        let phi = self.alpha.alpha(s)?;
        let mut out = Vec::new();
        for k in support {
            out.extend(dual_rows(&phi, k, index, base)?.into_iter().map(|(j, _)| j));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `α̂(s)⁻¹(U)`.
    pub fn preimage(&self, s: &MElement, u: &OpenSubgroup) -> Result<OpenSubgroup, DualityError> {
        if u.space != self.space {
            return Err(DualityError::Unsupported("open subgroup of another space".into()));
        }
        let phi = self.alpha.alpha(s)?;
        match &self.space {
            DualSpace::Finite(g) => {
                let hat = dual_endomorphism(&phi, g, self.bound)?;
                Ok(OpenSubgroup { space: self.space.clone(), sub: dual_preimage(&hat, &u.sub)?, support: vec![] })
            }
            DualSpace::Windowed(w) => {
                let bl = w.base.len();
                let dim = w.coords.len() * bl;
                let mut images = vec![vec![0i128; dim]; dim];
                let mut support = Vec::new();
                for k in &u.support {
                    let out = w.position(k).expect("support lies in the window");
                    for (j, block) in dual_rows(&phi, k, &w.index, &w.base)? {
                        let inp = w.position(&j).ok_or_else(|| DualityError::WindowEscape {
                            element: s.clone(),
                            coordinate: j.clone(),
                        })?;
                        support.push(j);
                        for t in 0..bl {
                            for i in 0..bl {
                                let cell = &mut images[inp * bl + t][out * bl + i];
                                *cell = (*cell + block[i][t]).rem_euclid(w.base[i] as i128);
                            }
                        }
                    }
                }
                let moduli = w.moduli();
                let target = ModLattice::from_rows(moduli.clone(), dense_generators(&u.sub)?);
                let lat = target.preimage(&moduli, &images);
                support.sort();
                support.dedup();
                Ok(OpenSubgroup { space: self.space.clone(), sub: lattice_to_subgroup(&w.group(), &lat)?, support })
            }
        }
    }
}

/// `C_F(α̂, U) = ⋂_{s ∈ F} α̂(s)⁻¹(U)`.
pub fn cotrajectory(gamma: &DualAction, f: &MSubset, u: &OpenSubgroup) -> Result<OpenSubgroup, DualityError> {
    if f.monoid() != gamma.alpha.monoid() {
        return Err(DualityError::Unsupported("F lives in another monoid".into()));
    }
    let mut acc: Option<OpenSubgroup> = None;
    for s in f.iter() {
        let p = gamma.preimage(s, u)?;
        acc = Some(match acc {
            None => p,
            Some(a) => a.meet(&p)?,
        });
    }
    acc.ok_or_else(|| DualityError::Unsupported("F must be nonempty".into()))
}

/// Ratio table of `log[K : C_{F_i}(α̂, U)] / |F_i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct TopEstimate {
    pub integral: IntegralEstimate,
    pub indices: Vec<BigUint>,
    /// The window escape that stopped the table, if any.
    pub escaped: Option<DualityError>,
}

impl TopEstimate {
    pub fn tail(&self) -> f64 {
        self.integral.tail()
    }
}

pub fn h_top_estimate(gamma: &DualAction, u: &OpenSubgroup, net: &FolnerNet, prefix: usize) -> Result<TopEstimate, DualityError> {
    if prefix == 0 {
        return Err(DualityError::Unsupported("prefix must be positive".into()));
    }
    let idx: Vec<usize> = (1..=prefix).collect();
    let results = crate::par_map(&idx, |&i| -> Result<(IntegralRow, BigUint), DualityError> {
        let f = net.get(i)?;
        let c = cotrajectory(gamma, &f, u)?;
        let n = c.index();
        let value = ln_biguint(&n);
        Ok((IntegralRow { index: i, label: net.label(i), size: f.len(), value, ratio: value / f.len() as f64 }, n))
    });
    let (mut rows, mut indices, mut escaped) = (Vec::new(), Vec::new(), None);
    for r in results {
        match r {
            Ok((row, n)) => {
                rows.push(row);
                indices.push(n);
            }
            Err(e @ DualityError::WindowEscape { .. }) if !rows.is_empty() => {
                escaped = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(TopEstimate { integral: IntegralEstimate { rows, tol: DEFAULT_TOLERANCE }, indices, escaped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::action_from_generators;

    fn right_shift(p: u64) -> Action {
        let g = AbelianGroup::direct_sum(vec![p], Monoid::naturals(1)).unwrap();
        action_from_generators(&Monoid::naturals(1), &g, vec![Endomorphism::shift(&g, vec![1]).unwrap()]).unwrap()
    }

    #[test]
    fn one_sided_shift_cotrajectory() {
        let a = right_shift(3);
        let n = Monoid::naturals(1);
        let w = WindowedProfinite::boxed(vec![3], &n, &[0], &[8]).unwrap();
        let gamma = dual_action(&a, Some(w.clone())).unwrap();
        let u = w.vanishing(&[MElement(vec![0])]).unwrap();
        assert_eq!(u.index(), BigUint::from(3u32));
        for k in 1..=8i64 {
            let f = MSubset::interval(&n, 0, k).unwrap();
            let c = cotrajectory(&gamma, &f, &u).unwrap();
            assert_eq!(c.index(), BigUint::from(3u32).pow(k as u32));
            let expect = w.vanishing(&(0..k).map(|i| MElement(vec![i])).collect::<Vec<_>>()).unwrap();
            assert_eq!(c.sub, expect.sub);
        }
        let f = MSubset::interval(&n, 0, 9).unwrap();
        assert!(matches!(cotrajectory(&gamma, &f, &u), Err(DualityError::WindowEscape { .. })));
        let est = h_top_estimate(&gamma, &u, &FolnerNet::boxes(&n).unwrap(), 10).unwrap();
        assert_eq!(est.integral.rows.len(), 8);
        assert!(est.escaped.is_some());
        assert!(est.integral.rows.iter().all(|r| (r.ratio - 3f64.ln()).abs() < 1e-12));
    }

    #[test]
    fn identity_set_gives_u() {
        let g = AbelianGroup::finite(vec![2, 2]).unwrap();
        let swap = Endomorphism::CongruentMatrix(vec![vec![0, 1], vec![1, 0]]);
        let a = action_from_generators(&Monoid::naturals(1), &g, vec![swap]).unwrap();
        let gamma = dual_action(&a, None).unwrap();
        let u = OpenSubgroup::finite(Subgroup::generated(&g, [GroupElement::dense(vec![0, 1])]).unwrap()).unwrap();
        let c = cotrajectory(&gamma, &MSubset::identity(a.monoid()), &u).unwrap();
        assert_eq!(c.sub, u.sub);
    }
}
