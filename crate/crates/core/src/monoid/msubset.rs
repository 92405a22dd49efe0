use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use super::monoid::{MElement, Monoid, MonoidError};

/// A finite subset of a monoid, kept sorted for deterministic iteration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MSubset {
    monoid: Monoid,
    elems: BTreeSet<MElement>,
}

impl fmt::Debug for MSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

impl MSubset {
    pub fn new<I: IntoIterator<Item = MElement>>(monoid: &Monoid, elems: I) -> Result<Self, MonoidError> {
        let elems: BTreeSet<MElement> = elems.into_iter().collect();
        for e in &elems {
            monoid.check(e)?;
        }
        Ok(MSubset { monoid: monoid.clone(), elems })
    }

    pub(crate) fn from_trusted(monoid: &Monoid, elems: BTreeSet<MElement>) -> Self {
        MSubset { monoid: monoid.clone(), elems }
    }

    pub fn empty(monoid: &Monoid) -> Self {
        MSubset { monoid: monoid.clone(), elems: BTreeSet::new() }
    }

    pub fn singleton(monoid: &Monoid, s: MElement) -> Result<Self, MonoidError> {
        Self::new(monoid, [s])
    }

    pub fn identity(monoid: &Monoid) -> Self {
        Self::from_trusted(monoid, [monoid.identity()].into())
    }

    /// `∏ [lo_i, hi_i)` over the coordinates; cyclic coordinates are reduced.
    pub fn boxed(monoid: &Monoid, lo: &[i64], hi: &[i64]) -> Result<Self, MonoidError> {
        assert_eq!(lo.len(), monoid.rank());
        assert_eq!(hi.len(), monoid.rank());
        let ranges: Vec<(i64, i64)> = lo.iter().zip(hi).map(|(&a, &b)| (a, b)).collect();
        let raw = super::monoid::product_ranges(&ranges);
        let kinds = monoid.coord_kinds();
        let elems = raw.into_iter().map(|e| {
            MElement(
                e.0.iter()
                    .zip(&kinds)
                    .map(|(&x, k)| match k {
                        super::CoordKind::Cyclic(n) => x.rem_euclid(*n as i64),
                        _ => x,
                    })
                    .collect(),
            )
        });
        Self::new(monoid, elems)
    }

    /// `[lo, hi)` in a rank-one monoid.
    pub fn interval(monoid: &Monoid, lo: i64, hi: i64) -> Result<Self, MonoidError> {
        Self::boxed(monoid, &[lo], &[hi])
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub fn contains(&self, s: &MElement) -> bool {
        self.elems.contains(s)
    }
    pub fn contains_identity(&self) -> bool {
        self.elems.contains(&self.monoid.identity())
    }
    pub fn iter(&self) -> impl Iterator<Item = &MElement> + '_ {
        self.elems.iter()
    }
    pub fn elements(&self) -> &BTreeSet<MElement> {
        &self.elems
    }

    fn same_monoid(&self, other: &MSubset) -> Result<(), MonoidError> {
        if self.monoid == other.monoid {
            Ok(())
        } else {
            Err(MonoidError::Unsupported(format!(
                "monoid mismatch: {} vs {}",
                self.monoid, other.monoid
            )))
        }
    }

    /// `FE = {fe : f ∈ F, e ∈ E}`.
    pub fn product(&self, other: &MSubset) -> Result<MSubset, MonoidError> {
        self.same_monoid(other)?;
        let mut out = BTreeSet::new();
        for a in &self.elems {
            for b in &other.elems {
                out.insert(self.monoid.try_mul(a, b)?);
            }
        }
        Ok(Self::from_trusted(&self.monoid, out))
    }

    /// `F s`.
    pub fn right_translate(&self, s: &MElement) -> MSubset {
        let out = self.elems.iter().map(|a| self.monoid.mul(a, s)).collect();
        Self::from_trusted(&self.monoid, out)
    }

    /// `s F`.
    pub fn left_translate(&self, s: &MElement) -> MSubset {
        let out = self.elems.iter().map(|a| self.monoid.mul(s, a)).collect();
        Self::from_trusted(&self.monoid, out)
    }

    pub fn union(&self, other: &MSubset) -> MSubset {
        Self::from_trusted(&self.monoid, self.elems.union(&other.elems).cloned().collect())
    }

    pub fn difference(&self, other: &MSubset) -> MSubset {
        Self::from_trusted(&self.monoid, self.elems.difference(&other.elems).cloned().collect())
    }

    pub fn intersection(&self, other: &MSubset) -> MSubset {
        Self::from_trusted(&self.monoid, self.elems.intersection(&other.elems).cloned().collect())
    }

    pub fn sym_diff_len(&self, other: &MSubset) -> usize {
        self.elems.symmetric_difference(&other.elems).count()
    }

    pub fn is_subset(&self, other: &MSubset) -> bool {
        self.elems.is_subset(&other.elems)
    }

    /// `|Fs △ F| / |F|` as an exact rational.
    pub fn sym_diff_ratio_exact(&self, s: &MElement) -> Result<Ratio<u64>, MonoidError> {
        if self.is_empty() {
            return Err(MonoidError::EmptySubset);
        }
        let fs = self.right_translate(s);
        Ok(Ratio::new(self.sym_diff_len(&fs) as u64, self.len() as u64))
    }

    pub fn sym_diff_ratio(&self, s: &MElement) -> Result<f64, MonoidError> {
        let r = self.sym_diff_ratio_exact(s)?;
        Ok(*r.numer() as f64 / *r.denom() as f64)
    }

    /// `F ~_ε F'`: equal sizes and `|F △ F'| ≤ ε|F|`, with `ε = num/den`.
    pub fn eps_equiv_exact(&self, other: &MSubset, eps: Ratio<u64>) -> bool {
        self.len() == other.len()
            && Ratio::from_integer(self.sym_diff_len(other) as u64)
                <= eps * Ratio::from_integer(self.len() as u64)
    }

    pub fn eps_equiv(&self, other: &MSubset, eps: f64) -> bool {
        self.eps_equiv_exact(other, ratio_from_f64(eps))
    }

    /// `∂_E(D) = {s ∈ D : sE ⊄ D}`.
    pub fn boundary(&self, e: &MSubset) -> MSubset {
        let out = self
            .elems
            .iter()
            .filter(|s| e.elems.iter().any(|x| !self.elems.contains(&self.monoid.mul(s, x))))
            .cloned()
            .collect();
        Self::from_trusted(&self.monoid, out)
    }

    /// Reinterprets the elements in another monoid with the same coordinates
    /// (e.g. `ℕ` boxes as subsets of `ℤ`).
    pub fn reinterpret(&self, target: &Monoid) -> Result<MSubset, MonoidError> {
        MSubset::new(target, self.elems.iter().cloned())
    }

    /// Image under a map; the result lives in `target`.
    pub fn map<G: Fn(&MElement) -> MElement>(&self, target: &Monoid, g: G) -> Result<MSubset, MonoidError> {
        MSubset::new(target, self.elems.iter().map(g))
    }
}

/// Exact rational for a float given in decimal, e.g. 0.1 → 1/10. Uses the
/// shortest decimal expansion that round-trips.
pub fn ratio_from_f64(x: f64) -> Ratio<u64> {
    assert!(x.is_finite() && x >= 0.0, "tolerance must be finite and non-negative");
    let s = format!("{x}");
    let (int, frac) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s.as_str(), ""),
    };
    let frac = &frac[..frac.len().min(18)];
    let den = 10u64.pow(frac.len() as u32);
    let num = int.parse::<u64>().unwrap() * den + if frac.is_empty() { 0 } else { frac.parse::<u64>().unwrap() };
    Ratio::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Monoid {
        Monoid::integers(1)
    }

    #[test]
    fn product_of_intervals_in_n() {
        let n = Monoid::naturals(1);
        let f = MSubset::interval(&n, 0, 2).unwrap();
        assert_eq!(f.product(&f).unwrap(), MSubset::interval(&n, 0, 3).unwrap());
        assert_eq!(f.product(&MSubset::identity(&n)).unwrap(), f);
    }

    #[test]
    fn semidirect_set_product() {
        let g = Monoid::heisenberg_like();
        let f = MSubset::new(&g, [MElement(vec![0, 0, 0]), MElement(vec![0, 0, 1])]).unwrap();
        let e = MSubset::new(&g, [MElement(vec![1, 0, 0])]).unwrap();
        let p = f.product(&e).unwrap();
        // φ(1)(1,0) = (1,0) under (v1 + n v2, v2).
        let expected = MSubset::new(&g, [MElement(vec![1, 0, 0]), MElement(vec![1, 0, 1])]).unwrap();
        assert_eq!(p, expected);
        let e2 = MSubset::new(&g, [MElement(vec![0, 1, 0])]).unwrap();
        let p2 = f.product(&e2).unwrap();
        let expected2 = MSubset::new(&g, [MElement(vec![0, 1, 0]), MElement(vec![1, 1, 1])]).unwrap();
        assert_eq!(p2, expected2);
    }

    #[test]
    fn sym_diff_examples() {
        let f = MSubset::interval(&z(), 0, 10).unwrap();
        assert_eq!(f.sym_diff_ratio_exact(&MElement(vec![1])).unwrap(), Ratio::new(2, 10));
        assert_eq!(f.sym_diff_ratio(&MElement(vec![0])).unwrap(), 0.0);
        let z2 = Monoid::integers(2);
        let b = MSubset::boxed(&z2, &[0, 0], &[4, 4]).unwrap();
        assert_eq!(b.sym_diff_ratio_exact(&MElement(vec![1, 0])).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn eps_equiv_examples() {
        let a = MSubset::interval(&z(), 0, 10).unwrap();
        let b = MSubset::interval(&z(), 1, 11).unwrap();
        assert!(a.eps_equiv(&a, 0.0));
        assert!(a.eps_equiv(&b, 0.2));
        assert!(!a.eps_equiv(&b, 0.1));
    }

    #[test]
    fn boundary_examples() {
        let z2 = Monoid::integers(2);
        let d = MSubset::boxed(&z2, &[0, 0], &[5, 5]).unwrap();
        let e = MSubset::new(&z2, [MElement(vec![1, 0])]).unwrap();
        let bd = d.boundary(&e);
        assert_eq!(bd.len(), 5);
        assert!(bd.iter().all(|s| s.0[0] == 4));
        assert!(d.boundary(&MSubset::identity(&z2)).is_empty());
        let n = Monoid::naturals(1);
        let d = MSubset::interval(&n, 0, 7).unwrap();
        let one = MSubset::new(&n, [MElement(vec![1])]).unwrap();
        assert_eq!(d.boundary(&one), MSubset::new(&n, [MElement(vec![6])]).unwrap());
    }

    #[test]
    fn decimal_ratios() {
        assert_eq!(ratio_from_f64(0.1), Ratio::new(1, 10));
        assert_eq!(ratio_from_f64(0.15), Ratio::new(3, 20));
        assert_eq!(ratio_from_f64(1.0), Ratio::new(1, 1));
    }
}
