//! Integer lattices `L ⊆ ℤ^k` that contain the diagonal lattice `⊕ n_j ℤ e_j`.
//!
//! A subgroup of `ℤ^r × ℤ/n_1 × … × ℤ/n_m` is the image of such a lattice, with
//! modulus 0 standing for a free coordinate. The basis is kept upper triangular
//! with positive leading entries, so coset representatives, orders and indices
//! can be read off the diagonal.

use num_bigint::BigUint;
use num_traits::One;

/// Extended gcd on i128: returns `(g, x, y)` with `g = ax + by >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

#[derive(Clone, Debug)]
pub struct ModLattice {
    moduli: Vec<i128>,
    // rows[j], when present, is the basis row whose first nonzero column is j.
    rows: Vec<Option<Vec<i128>>>,
}

impl ModLattice {
    /// The diagonal lattice itself, i.e. the trivial subgroup.
    pub fn new(moduli: Vec<i128>) -> Self {
        assert!(moduli.iter().all(|&n| n >= 0), "moduli must be non-negative");
        let k = moduli.len();
        ModLattice { moduli, rows: vec![None; k] }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<i128>>>(moduli: Vec<i128>, rows: I) -> Self {
        let mut l = ModLattice::new(moduli);
        for r in rows {
            l.insert(r);
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[i128] {
        &self.moduli
    }

    fn reduce_entry(&self, j: usize, x: i128) -> i128 {
        let n = self.moduli[j];
        if n > 0 {
            x.rem_euclid(n)
        } else {
            x
        }
    }

    /// Adds `v` to the lattice.
    pub fn insert(&mut self, v: Vec<i128>) {
        assert_eq!(v.len(), self.dim(), "lattice dimension mismatch");
        let mut queue = vec![v];
        while let Some(mut v) = queue.pop() {
            let mut j = 0;
            while j < self.dim() {
                v[j] = self.reduce_entry(j, v[j]);
                if v[j] == 0 {
                    j += 1;
                    continue;
                }
                let n = self.moduli[j];
                let r = match self.rows[j].take() {
                    Some(r) => r,
                    None if n > 0 => {
                        // Combine against the implicit row n_j e_j.
                        let mut e = vec![0; self.dim()];
                        e[j] = n;
                        e
                    }
                    None => {
                        let mut row = v;
                        if row[j] < 0 {
                            for e in row.iter_mut() {
                                *e = -*e;
                            }
                        }
                        self.rows[j] = Some(row);
                        break;
                    }
                };
                let (g, x, y) = ext_gcd(r[j], v[j]);
                if g == r[j] {
                    // Lead already divides v_j; plain elimination.
                    let q = v[j] / r[j];
                    for t in j..self.dim() {
                        v[t] -= q * r[t];
                    }
                    self.rows[j] = Some(r);
                    j += 1;
                    continue;
                }
                let (a, b) = (r[j] / g, v[j] / g);
                let mut new_row: Vec<i128> = (0..self.dim()).map(|t| x * r[t] + y * v[t]).collect();
                let mut rest: Vec<i128> = (0..self.dim()).map(|t| b * r[t] - a * v[t]).collect();
                debug_assert_eq!(rest[j], 0);
                new_row[j] = g;
                self.push_torsion(j, &new_row, &mut queue);
                self.normalize_tail(&mut new_row, j);
                for e in rest.iter_mut().take(j + 1) {
                    *e = 0;
                }
                self.normalize_tail(&mut rest, j);
                self.rows[j] = Some(new_row);
                // The old row is a unimodular combination of the new row and `rest`.
                v = rest;
                j += 1;
            }
        }
    }

    // (n_j / lead) * row has zero in column j modulo n_j; it must be in the lattice.
    fn push_torsion(&self, j: usize, row: &[i128], queue: &mut Vec<Vec<i128>>) {
        let n = self.moduli[j];
        if n == 0 {
            return;
        }
        let m = n / row[j];
        let mut w: Vec<i128> = row.iter().map(|&e| e * m).collect();
        w[j] = 0;
        if w.iter().any(|&e| e != 0) {
            queue.push(w);
        }
    }

    fn normalize_tail(&self, row: &mut [i128], from: usize) {
        for t in from + 1..self.dim() {
            row[t] = self.reduce_entry(t, row[t]);
        }
    }

    /// Diagonal entry of column `j`: the lead if a row exists, else `n_j`
    /// (0 for a free column, meaning infinite index).
    pub fn diag(&self, j: usize) -> i128 {
        match &self.rows[j] {
            Some(r) => r[j],
            None => self.moduli[j],
        }
    }

    /// Canonical representative of `v + L`.
    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let mut v = v.to_vec();
        for j in 0..self.dim() {
            match &self.rows[j] {
                Some(r) => {
                    let q = v[j].div_euclid(r[j]);
                    if q != 0 {
                        for t in j..self.dim() {
                            v[t] -= q * r[t];
                        }
                    }
                }
                None => v[j] = self.reduce_entry(j, v[j]),
            }
        }
        v
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Basis rows that are not implied by the moduli, in Hermite normal form.
    pub fn basis(&self) -> Vec<Vec<i128>> {
        let mut rows: Vec<Vec<i128>> = Vec::new();
        let mut leads = Vec::new();
        for j in 0..self.dim() {
            if let Some(r) = &self.rows[j] {
                if self.moduli[j] > 0 && r[j] == self.moduli[j] {
                    // Equals n_j e_j plus a tail that is itself in the lattice.
                    continue;
                }
                rows.push(r.clone());
                leads.push(j);
            }
        }
        // Reduce entries above each lead.
        for (pos, &j) in leads.iter().enumerate() {
            let pivot = rows[pos].clone();
            for row in rows.iter_mut().take(pos) {
                let q = row[j].div_euclid(pivot[j]);
                if q != 0 {
                    for t in j..self.dim() {
                        row[t] -= q * pivot[t];
                    }
                }
            }
        }
        for row in rows.iter_mut() {
            for (t, e) in row.iter_mut().enumerate() {
                let n = self.moduli[t];
                if n > 0 && leads.iter().all(|&l| l != t) {
                    *e = e.rem_euclid(n);
                }
            }
        }
        rows
    }

    /// True when the image of `L` in `ℤ^k / diag` is finite.
    pub fn is_finite_image(&self) -> bool {
        self.rows.iter().flatten().all(|r| {
            r.iter().zip(&self.moduli).all(|(&e, &n)| n > 0 || e == 0)
        })
    }

    /// `|L / diag|`, or `None` if infinite.
    pub fn image_order(&self) -> Option<BigUint> {
        if !self.is_finite_image() {
            return None;
        }
        let mut acc = BigUint::one();
        for j in 0..self.dim() {
            let n = self.moduli[j];
            if n > 0 {
                acc *= BigUint::from((n / self.diag(j)) as u128);
            }
        }
        Some(acc)
    }

    /// `[ℤ^k : L]`, or `None` if infinite.
    pub fn index(&self) -> Option<BigUint> {
        let mut acc = BigUint::one();
        for j in 0..self.dim() {
            let d = self.diag(j);
            if d == 0 {
                return None;
            }
            acc *= BigUint::from(d as u128);
        }
        Some(acc)
    }

    pub fn join(&self, other: &ModLattice) -> ModLattice {
        assert_eq!(self.moduli, other.moduli);
        let mut out = self.clone();
        for r in other.rows.iter().flatten() {
            out.insert(r.clone());
        }
        out
    }

    pub fn meet(&self, other: &ModLattice) -> ModLattice {
        assert_eq!(self.moduli, other.moduli);
        let k = self.dim();
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&self.moduli);
        let mut big = ModLattice::new(moduli);
        for r in self.rows.iter().flatten() {
            let mut w = r.clone();
            w.extend_from_slice(r);
            big.insert(w);
        }
        for r in other.rows.iter().flatten() {
            let mut w = r.clone();
            w.extend(std::iter::repeat_n(0, k));
            big.insert(w);
        }
        let rows = big.rows[k..].iter().flatten().map(|r| r[k..].to_vec()).collect::<Vec<_>>();
        ModLattice::from_rows(self.moduli.clone(), rows)
    }

    /// `{x : φ(x) ∈ self}` where `images[i] = φ(e_i)` and `source_moduli`
    /// describes the domain. `φ` must respect the moduli.
    pub fn preimage(&self, source_moduli: &[i128], images: &[Vec<i128>]) -> ModLattice {
        let k = self.dim();
        let m = source_moduli.len();
        assert_eq!(images.len(), m);
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(source_moduli);
        let mut big = ModLattice::new(moduli);
        for (i, img) in images.iter().enumerate() {
            let mut w = img.clone();
            w.extend((0..m).map(|t| i128::from(t == i)));
            big.insert(w);
        }
        for r in self.rows.iter().flatten() {
            let mut w = r.clone();
            w.extend(std::iter::repeat_n(0, m));
            big.insert(w);
        }
        let rows = big.rows[k..].iter().flatten().map(|r| r[k..].to_vec()).collect::<Vec<_>>();
        ModLattice::from_rows(source_moduli.to_vec(), rows)
    }

    /// All rows of a square basis of `L`, implicit diagonal rows included.
    /// Free columns without a row get a zero row.
    pub fn square_basis(&self) -> Vec<Vec<i128>> {
        (0..self.dim())
            .map(|j| match &self.rows[j] {
                Some(r) => r.clone(),
                None => {
                    let mut e = vec![0; self.dim()];
                    e[j] = self.moduli[j];
                    e
                }
            })
            .collect()
    }
}
