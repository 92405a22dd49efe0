//! Smith normal form over i128, tracking column operations.

/// Result of `smith`: `U · M · V = diag(d)` for some unimodular `U`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Invariant factors, `d[i] | d[i+1]`; zeros trail.
    pub diag: Vec<i128>,
    /// Column transform, `cols × cols`.
    pub v: Vec<Vec<i128>>,
    /// Inverse of `v`.
    pub v_inv: Vec<Vec<i128>>,
}

/// Smith normal form of a `rows × cols` matrix.
pub fn smith(m: &[Vec<i128>], cols: usize) -> Smith {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut vi = v.clone();
    let r = rows.min(cols);
    for t in 0..r {
        // Pick the smallest nonzero entry in the remaining block as pivot.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, v, vi, rows, cols);
            };
            a.swap(t, pi);
            swap_cols(&mut a, &mut v, &mut vi, t, pj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        let d = q * a[t][j];
                        a[i][j] -= d;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    col_axpy(&mut a, &mut v, &mut vi, j, t, -q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block.
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[i][j] % p != 0 {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let x = a[i][j];
                        a[t][j] += x;
                    }
                }
                None => break,
            }
        }
    }
    finish(a, v, vi, rows, cols)
}

fn finish(a: Vec<Vec<i128>>, mut v: Vec<Vec<i128>>, mut vi: Vec<Vec<i128>>, rows: usize, cols: usize) -> Smith {
    let mut diag: Vec<i128> = (0..cols).map(|i| if i < rows { a[i][i] } else { 0 }).collect();
    for (i, d) in diag.iter_mut().enumerate() {
        if *d < 0 {
            *d = -*d;
            for row in v.iter_mut() {
                row[i] = -row[i];
            }
            for e in vi[i].iter_mut() {
                *e = -*e;
            }
        }
    }
    Smith { diag, v, v_inv: vi }
}

fn swap_cols(a: &mut [Vec<i128>], v: &mut [Vec<i128>], vi: &mut [Vec<i128>], x: usize, y: usize) {
    if x == y {
        return;
    }
    vi.swap(x, y);
    for row in a.iter_mut() {
        row.swap(x, y);
    }
    for row in v.iter_mut() {
        row.swap(x, y);
    }
}

// col_dst += k * col_src
fn col_axpy(a: &mut [Vec<i128>], v: &mut [Vec<i128>], vi: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    // V ← V·E with E = I + k e_src e_dstᵀ, so V⁻¹ ← E⁻¹·V⁻¹.
    let dst_row = vi[dst].clone();
    for (e, d) in vi[src].iter_mut().zip(&dst_row) {
        *e -= k * d;
    }
    for row in a.iter_mut() {
        row[dst] += k * row[src];
    }
    for row in v.iter_mut() {
        row[dst] += k * row[src];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b[0].len();
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn invariant_factors() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&m, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let id = mul(&s.v, &s.v_inv);
        for (i, row) in id.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert_eq!(e, i128::from(i == j));
            }
        }
    }

    #[test]
    fn columns_span_same_row_lattice() {
        // M·V must have the same row lattice as diag(d) up to row operations:
        // check the gcd of entries of each column of M·V after projecting.
        let m = vec![vec![4, 0], vec![0, 6]];
        let s = smith(&m, 2);
        assert_eq!(s.diag, vec![2, 12]);
        let mv = mul(&m, &s.v);
        let id = mul(&s.v, &s.v_inv);
        assert_eq!(id, vec![vec![1, 0], vec![0, 1]]);
        for row in &mv {
            for (j, &e) in row.iter().enumerate() {
                assert_eq!(e % s.diag[j], 0);
            }
        }
    }

    #[test]
    fn rank_deficient() {
        let m = vec![vec![2, 4], vec![1, 2]];
        let s = smith(&m, 2);
        assert_eq!(s.diag, vec![1, 0]);
    }
}
