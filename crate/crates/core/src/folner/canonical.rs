use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::Ratio;

use super::net::{FolnerNet, NetKind};
use super::FolnerError;
use crate::monoid::{CoordKind, MElement, MSubset, Monoid, MonoidKind};

pub const DEFAULT_BOX_BUDGET: u64 = 1 << 16;

/// The canonically indexed net `(E, n) ↦ F_(E,n)` of a commutative monoid:
/// the smallest box `[0,m)^d` (cyclic coordinates in full) with
/// `F s ~_{1/n} F` for every `s ∈ E`.
#[derive(Clone, Debug)]
pub struct CanonicalNet {
    monoid: Monoid,
    budget: u64,
    sizes: Arc<Mutex<HashMap<(Vec<MElement>, u64), u64>>>,
}

impl CanonicalNet {
    pub fn new(monoid: &Monoid) -> Result<Self, FolnerError> {
        Self::with_budget(monoid, DEFAULT_BOX_BUDGET)
    }

    pub fn with_budget(monoid: &Monoid, budget: u64) -> Result<Self, FolnerError> {
        if !matches!(monoid.kind(), MonoidKind::Commutative(_)) {
            return Err(FolnerError::Unsupported("canonical nets are built for commutative monoids".into()));
        }
        Ok(CanonicalNet { monoid: monoid.clone(), budget, sizes: Arc::new(Mutex::new(HashMap::new())) })
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    /// `|[0,m)^d ∩ [0,m)^d s|`, from the coordinate offsets of `s`.
    fn overlap(&self, m: u64, s: &MElement) -> Ratio<u64> {
        let mut size: u64 = 1;
        let mut common: u64 = 1;
        for (k, &x) in self.monoid.coord_kinds().iter().zip(&s.0) {
            match k {
                CoordKind::Cyclic(n) => {
                    size *= n;
                    common *= n;
                }
                _ => {
                    size = size.saturating_mul(m);
                    common = common.saturating_mul(m.saturating_sub(x.unsigned_abs()));
                }
            }
        }
        // |F s △ F| / |F| = 2 (|F| - |F ∩ F s|) / |F|
        Ratio::new(2 * (size - common), size)
    }

    /// Side length `m` of `F_(E,n)`.
    pub fn side(&self, e: &MSubset, n: u64) -> Result<u64, FolnerError> {
        if n == 0 {
            return Err(FolnerError::Unsupported("precision index must be positive".into()));
        }
        let key = (e.elements().iter().cloned().collect::<Vec<_>>(), n);
        if let Some(&m) = self.sizes.lock().expect("canonical cache poisoned").get(&key) {
            return Ok(m);
        }
        let eps = Ratio::new(1, n);
        let free = self.monoid.coord_kinds().iter().any(|k| !matches!(k, CoordKind::Cyclic(_)));
        let limit = if free { self.budget } else { 1 };
        let m = (1..=limit)
            .find(|&m| e.iter().all(|s| self.overlap(m, s) <= eps))
            .ok_or_else(|| FolnerError::BudgetExceeded { what: format!("a box for ({e:?}, {n})"), budget: self.budget })?;
        self.sizes.lock().expect("canonical cache poisoned").insert(key, m);
        Ok(m)
    }

    pub fn get(&self, e: &MSubset, n: u64) -> Result<MSubset, FolnerError> {
        let m = self.side(e, n)? as i64;
        let kinds = self.monoid.coord_kinds();
        let lo = vec![0; kinds.len()];
        let hi: Vec<i64> = kinds
            .iter()
            .map(|k| match k {
                CoordKind::Cyclic(c) => *c as i64,
                _ => m,
            })
            .collect();
        Ok(MSubset::boxed(&self.monoid, &lo, &hi)?)
    }

    /// The chain `k ↦ F_(E,k)` with `E` the generators together with `1`.
    pub fn chain(&self) -> FolnerNet {
        let mut e = self.monoid.generators();
        e.push(self.monoid.identity());
        let e = MSubset::new(&self.monoid, e).expect("generators lie in the monoid");
        FolnerNet::from_kind(&self.monoid, NetKind::Canonical { net: self.clone(), e })
    }

    /// The chain for a fixed `E`.
    pub fn chain_for(&self, e: &MSubset) -> Result<FolnerNet, FolnerError> {
        if e.monoid() != &self.monoid {
            return Err(FolnerError::Unsupported("E must be a subset of the net's monoid".into()));
        }
        Ok(FolnerNet::from_kind(&self.monoid, NetKind::Canonical { net: self.clone(), e: e.clone() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: &Monoid, v: &[&[i64]]) -> MSubset {
        MSubset::new(m, v.iter().map(|x| MElement(x.to_vec()))).unwrap()
    }

    #[test]
    fn scan_examples() {
        let z = Monoid::integers(1);
        let c = CanonicalNet::new(&z).unwrap();
        assert_eq!(c.side(&set(&z, &[&[0], &[1]]), 2).unwrap(), 4);
        assert_eq!(c.get(&set(&z, &[&[0]]), 7).unwrap().len(), 1);
        let z2 = Monoid::integers(2);
        let c2 = CanonicalNet::new(&z2).unwrap();
        assert_eq!(c2.side(&set(&z2, &[&[1, 0]]), 4).unwrap(), 8);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        let z2 = Monoid::integers(2);
        let c = CanonicalNet::new(&z2).unwrap();
        for m in 1..7i64 {
            let f = MSubset::boxed(&z2, &[0, 0], &[m, m]).unwrap();
            for s in z2.window(3) {
                assert_eq!(c.overlap(m as u64, &s), f.sym_diff_ratio_exact(&s).unwrap());
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let z = Monoid::integers(1);
        let c = CanonicalNet::with_budget(&z, 10).unwrap();
        assert!(matches!(c.side(&set(&z, &[&[1]]), 100), Err(FolnerError::BudgetExceeded { .. })));
    }
}
