use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("element {0} does not belong to the monoid")]
    NotAnElement(MElement),
    #[error("monoid is not cancellative: {0}")]
    NotCancellative(String),
    #[error("monoid is not left amenable: {0}")]
    NotAmenable(String),
    #[error("element {0} has no inverse")]
    NotInvertible(MElement),
    #[error("subset is empty")]
    EmptySubset,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Unsupported(String),
}

/// An element of a concrete monoid, stored as its integer coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MElement(pub Vec<i64>);

impl MElement {
    pub fn new(c: Vec<i64>) -> Self {
        MElement(c)
    }
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for MElement {
    fn from(v: Vec<i64>) -> Self {
        MElement(v)
    }
}

/// One coordinate of a finitely generated commutative monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordKind {
    /// `ℕ`
    Nat,
    /// `ℤ`
    Int,
    /// `ℤ/n`
    Cyclic(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonoidKind {
    /// Product of `ℕ`, `ℤ` and `ℤ/n` coordinates under addition.
    Commutative(Vec<CoordKind>),
    /// `ℤ² ⋊ ℤ` with `φ(n) = M^n`; coordinates `(v1, v2, c)`.
    Semidirect { matrix: [[i64; 2]; 2], inverse: [[i64; 2]; 2] },
}

/// A concrete countable cancellative left amenable monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monoid {
    kind: MonoidKind,
    opposite: bool,
}

impl Monoid {
    pub fn commutative(coords: Vec<CoordKind>) -> Self {
        Monoid { kind: MonoidKind::Commutative(coords), opposite: false }
    }
    pub fn naturals(d: usize) -> Self {
        Self::commutative(vec![CoordKind::Nat; d])
    }
    pub fn integers(d: usize) -> Self {
        Self::commutative(vec![CoordKind::Int; d])
    }
    pub fn cyclic(n: u64) -> Self {
        Self::commutative(vec![CoordKind::Cyclic(n)])
    }
    pub fn trivial() -> Self {
        Self::commutative(vec![])
    }

    /// `ℤ² ⋊_φ ℤ` for an invertible integer matrix.
    pub fn semidirect(matrix: [[i64; 2]; 2]) -> Result<Self, MonoidError> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if det != 1 && det != -1 {
            return Err(MonoidError::Unsupported(format!(
                "semidirect matrix must have determinant ±1, got {det}"
            )));
        }
        let inverse = [
            [matrix[1][1] * det, -matrix[0][1] * det],
            [-matrix[1][0] * det, matrix[0][0] * det],
        ];
        Ok(Monoid { kind: MonoidKind::Semidirect { matrix, inverse }, opposite: false })
    }

    /// The standard example: `φ(n)(v1, v2) = (v1 + n v2, v2)`.
    pub fn heisenberg_like() -> Self {
        Self::semidirect([[1, 1], [0, 1]]).expect("unimodular")
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.kind
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn opposite(&self) -> Self {
        Monoid { kind: self.kind.clone(), opposite: !self.opposite }
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            MonoidKind::Commutative(c) => c.len(),
            MonoidKind::Semidirect { .. } => 3,
        }
    }

    pub fn coord_kinds(&self) -> Vec<CoordKind> {
        match &self.kind {
            MonoidKind::Commutative(c) => c.clone(),
            MonoidKind::Semidirect { .. } => vec![CoordKind::Int; 3],
        }
    }

    pub fn is_commutative(&self) -> bool {
        match &self.kind {
            MonoidKind::Commutative(_) => true,
            MonoidKind::Semidirect { matrix, .. } => *matrix == [[1, 0], [0, 1]],
        }
    }

    pub fn is_group(&self) -> bool {
        self.coord_kinds().iter().all(|k| *k != CoordKind::Nat)
    }

    pub fn is_finite(&self) -> bool {
        self.coord_kinds().iter().all(|k| matches!(k, CoordKind::Cyclic(_)))
    }

    /// Cardinality when finite.
    pub fn order(&self) -> Option<u64> {
        let mut acc = 1u64;
        for k in self.coord_kinds() {
            match k {
                CoordKind::Cyclic(n) => acc = acc.checked_mul(n)?,
                _ => return None,
            }
        }
        Some(acc)
    }

    pub fn identity(&self) -> MElement {
        MElement(vec![0; self.rank()])
    }

    pub fn contains(&self, s: &MElement) -> bool {
        s.0.len() == self.rank()
            && self.coord_kinds().iter().zip(&s.0).all(|(k, &x)| match k {
                CoordKind::Nat => x >= 0,
                CoordKind::Int => true,
                CoordKind::Cyclic(n) => x >= 0 && (x as u64) < *n,
            })
    }

    pub fn check(&self, s: &MElement) -> Result<(), MonoidError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(MonoidError::NotAnElement(s.clone()))
        }
    }

    /// The monoid operation `a · b` (in the opposite monoid, `b · a`).
    ///
    /// Panics on coefficient overflow, which only happens for semidirect
    /// products with expanding matrices far outside desk-scale windows.
    pub fn mul(&self, a: &MElement, b: &MElement) -> MElement {
        self.try_mul(a, b).expect("monoid coefficient overflow")
    }

    pub fn try_mul(&self, a: &MElement, b: &MElement) -> Result<MElement, MonoidError> {
        let (a, b) = if self.opposite { (b, a) } else { (a, b) };
        match &self.kind {
            MonoidKind::Commutative(coords) => {
                let mut out = Vec::with_capacity(coords.len());
                for ((k, &x), &y) in coords.iter().zip(&a.0).zip(&b.0) {
                    let s = x.checked_add(y).ok_or(MonoidError::Overflow("monoid product"))?;
                    out.push(match k {
                        CoordKind::Cyclic(n) => s.rem_euclid(*n as i64),
                        _ => s,
                    });
                }
                Ok(MElement(out))
            }
            MonoidKind::Semidirect { matrix, inverse } => {
                let p = mat_pow(matrix, inverse, a.0[2])?;
                let x = p[0][0]
                    .checked_mul(b.0[0])
                    .and_then(|u| p[0][1].checked_mul(b.0[1]).and_then(|w| u.checked_add(w)))
                    .and_then(|u| u.checked_add(a.0[0]))
                    .ok_or(MonoidError::Overflow("semidirect product"))?;
                let y = p[1][0]
                    .checked_mul(b.0[0])
                    .and_then(|u| p[1][1].checked_mul(b.0[1]).and_then(|w| u.checked_add(w)))
                    .and_then(|u| u.checked_add(a.0[1]))
                    .ok_or(MonoidError::Overflow("semidirect product"))?;
                let c = a.0[2].checked_add(b.0[2]).ok_or(MonoidError::Overflow("semidirect product"))?;
                Ok(MElement(vec![x, y, c]))
            }
        }
    }

    pub fn inverse(&self, s: &MElement) -> Result<MElement, MonoidError> {
        match &self.kind {
            MonoidKind::Commutative(coords) => {
                let mut out = Vec::with_capacity(coords.len());
                for (k, &x) in coords.iter().zip(&s.0) {
                    out.push(match k {
                        CoordKind::Nat if x != 0 => return Err(MonoidError::NotInvertible(s.clone())),
                        CoordKind::Nat => 0,
                        CoordKind::Int => -x,
                        CoordKind::Cyclic(n) => (-x).rem_euclid(*n as i64),
                    });
                }
                Ok(MElement(out))
            }
            MonoidKind::Semidirect { matrix, inverse } => {
                // (a, c)^{-1} = (-φ(-c) a, -c); the opposite monoid has the same inverses.
                let p = mat_pow(matrix, inverse, -s.0[2])?;
                let x = -(p[0][0] * s.0[0] + p[0][1] * s.0[1]);
                let y = -(p[1][0] * s.0[0] + p[1][1] * s.0[1]);
                Ok(MElement(vec![x, y, -s.0[2]]))
            }
        }
    }

    pub fn pow(&self, s: &MElement, k: u64) -> MElement {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(&acc, s);
        }
        acc
    }

    /// A finite generating set as a monoid (group inverses included).
    pub fn generators(&self) -> Vec<MElement> {
        let r = self.rank();
        let mut out = Vec::new();
        for (i, k) in self.coord_kinds().iter().enumerate() {
            let mut e = vec![0; r];
            match k {
                CoordKind::Cyclic(1) => continue,
                _ => e[i] = 1,
            }
            out.push(MElement(e.clone()));
            if *k == CoordKind::Int {
                e[i] = -1;
                out.push(MElement(e));
            }
        }
        out
    }

    /// Elements with every `ℕ` coordinate in `[0, r]`, every `ℤ` coordinate in
    /// `[-r, r]` and every cyclic coordinate arbitrary.
    pub fn window(&self, r: i64) -> Vec<MElement> {
        let ranges: Vec<(i64, i64)> = self
            .coord_kinds()
            .iter()
            .map(|k| match k {
                CoordKind::Nat => (0, r + 1),
                CoordKind::Int => (-r, r + 1),
                CoordKind::Cyclic(n) => (0, *n as i64),
            })
            .collect();
        product_ranges(&ranges)
    }

    /// Checks the defining properties on a finite window; counterexamples to
    /// cancellativity are reported.
    pub fn check_cancellative_on(&self, r: i64) -> Result<(), MonoidError> {
        let w = self.window(r);
        for a in &w {
            for b in &w {
                for c in &w {
                    if b != c && self.mul(a, b) == self.mul(a, c) {
                        return Err(MonoidError::NotCancellative(format!("{a}·{b} = {a}·{c}")));
                    }
                    if b != c && self.mul(b, a) == self.mul(c, a) {
                        return Err(MonoidError::NotCancellative(format!("{b}·{a} = {c}·{a}")));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MonoidKind::Commutative(coords) if coords.is_empty() => write!(f, "1")?,
            MonoidKind::Commutative(coords) => {
                for (i, k) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, "×")?;
                    }
                    match k {
                        CoordKind::Nat => write!(f, "ℕ")?,
                        CoordKind::Int => write!(f, "ℤ")?,
                        CoordKind::Cyclic(n) => write!(f, "ℤ/{n}")?,
                    }
                }
            }
            MonoidKind::Semidirect { matrix, .. } => write!(f, "ℤ²⋊ℤ{matrix:?}")?,
        }
        if self.opposite {
            write!(f, "ᵒᵖ")?;
        }
        Ok(())
    }
}

pub(crate) fn product_ranges(ranges: &[(i64, i64)]) -> Vec<MElement> {
    let mut out = vec![Vec::with_capacity(ranges.len())];
    for &(lo, hi) in ranges {
        let mut next = Vec::with_capacity(out.len() * (hi - lo).max(0) as usize);
        for prefix in &out {
            for x in lo..hi {
                let mut p: Vec<i64> = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(MElement).collect()
}

type Mat = [[i64; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat, MonoidError> {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0]
                .checked_mul(b[0][j])
                .and_then(|x| a[i][1].checked_mul(b[1][j]).and_then(|y| x.checked_add(y)))
                .ok_or(MonoidError::Overflow("matrix power"))?;
        }
    }
    Ok(out)
}

fn mat_pow(m: &Mat, inv: &Mat, e: i64) -> Result<Mat, MonoidError> {
    let mut base = if e < 0 { *inv } else { *m };
    let mut e = e.unsigned_abs();
    let mut acc = [[1, 0], [0, 1]];
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semidirect_product_rule() {
        let m = Monoid::heisenberg_like();
        let a = MElement(vec![1, 2, 3]);
        let b = MElement(vec![4, 5, 6]);
        // φ(3)(4,5) = (4 + 15, 5)
        assert_eq!(m.mul(&a, &b), MElement(vec![1 + 19, 7, 9]));
        let ai = m.inverse(&a).unwrap();
        assert_eq!(m.mul(&a, &ai), m.identity());
        assert_eq!(m.mul(&ai, &a), m.identity());
    }

    #[test]
    fn opposite_swaps() {
        let m = Monoid::heisenberg_like();
        let o = m.opposite();
        let a = MElement(vec![1, 2, 3]);
        let b = MElement(vec![4, 5, 6]);
        assert_eq!(o.mul(&a, &b), m.mul(&b, &a));
    }

    #[test]
    fn associativity_on_window() {
        let m = Monoid::heisenberg_like();
        let w = m.window(1);
        for a in w.iter().step_by(3) {
            for b in w.iter().step_by(2) {
                for c in w.iter().step_by(5) {
                    assert_eq!(m.mul(&m.mul(a, b), c), m.mul(a, &m.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn cyclic_wraps() {
        let m = Monoid::commutative(vec![CoordKind::Cyclic(5), CoordKind::Nat]);
        assert_eq!(m.mul(&MElement(vec![3, 1]), &MElement(vec![4, 2])), MElement(vec![2, 3]));
        assert!(m.inverse(&MElement(vec![1, 1])).is_err());
        assert!(m.check_cancellative_on(2).is_ok());
    }
}
