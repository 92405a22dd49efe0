use num_rational::Ratio;

use super::FolnerError;
use crate::monoid::{MElement, Monoid, MonoidKind};

pub const DEFAULT_ELEMENT_BUDGET: u64 = 10_000_000;

fn in_box(g: &MElement, m: i64, n: i64) -> bool {
    (0..m).contains(&g.0[0]) && (0..m).contains(&g.0[1]) && (0..n).contains(&g.0[2])
}

/// `δ_{n,m}(x) = |G_{m,n} x ∖ G_{m,n}| / |G_{m,n}|` for
/// `G_{m,n} = [0,m)² × [0,n)` in `ℤ²⋊ℤ`, by enumerating `G_{m,n} x`.
pub fn semidirect_defect(
    monoid: &Monoid,
    n: u64,
    m: u64,
    x: &MElement,
    budget: u64,
) -> Result<Ratio<u128>, FolnerError> {
    if !matches!(monoid.kind(), MonoidKind::Semidirect { .. }) {
        return Err(FolnerError::Unsupported("semidirect_defect needs ℤ²⋊ℤ".into()));
    }
    monoid.check(x)?;
    if n == 0 || m == 0 {
        return Err(FolnerError::Unsupported("box sizes must be positive".into()));
    }
    let size = (m as u128) * (m as u128) * (n as u128);
    if size > budget as u128 {
        return Err(FolnerError::BudgetExceeded { what: format!("G_{{{m},{n}}}"), budget });
    }
    let (mi, ni) = (m as i64, n as i64);
    let cs: Vec<i64> = (0..ni).collect();
    let outside: Vec<u128> = crate::par_map(&cs, |&c| {
        let mut count = 0u128;
        for a in 0..mi {
            for b in 0..mi {
                let g = MElement(vec![a, b, c]);
                if !in_box(&monoid.mul(&g, x), mi, ni) {
                    count += 1;
                }
            }
        }
        count
    });
    Ok(Ratio::new(outside.iter().sum(), size))
}

/// `(1/n) Σ_{c<n} |A_m + φ(c)v ∖ A_m| / m²` for `x = (v, 0)`.
pub fn semidirect_defect_closed_form(monoid: &Monoid, n: u64, m: u64, x: &MElement) -> Result<Ratio<u128>, FolnerError> {
    if x.0.len() != 3 || x.0[2] != 0 {
        return Err(FolnerError::Unsupported("closed form covers x = (v, 0)".into()));
    }
    let m128 = m as u128;
    let mut total = 0u128;
    for c in 0..n as i64 {
        let t = monoid.mul(&MElement(vec![0, 0, c]), x);
        let keep = |d: i64| m128.saturating_sub(d.unsigned_abs() as u128);
        total += m128 * m128 - keep(t.0[0]) * keep(t.0[1]);
    }
    Ok(Ratio::new(total, m128 * m128 * n as u128))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_no_defect() {
        let g = Monoid::heisenberg_like();
        let d = semidirect_defect(&g, 4, 4, &g.identity(), DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(d, Ratio::from_integer(0));
    }

    #[test]
    fn enumeration_matches_closed_form() {
        let g = Monoid::heisenberg_like();
        let x = MElement(vec![0, 1, 0]);
        for n in 1..8 {
            for m in 1..12 {
                assert_eq!(
                    semidirect_defect(&g, n, m, &x, DEFAULT_ELEMENT_BUDGET).unwrap(),
                    semidirect_defect_closed_form(&g, n, m, &x).unwrap()
                );
            }
        }
    }

    #[test]
    fn budget_guard() {
        let g = Monoid::heisenberg_like();
        let x = MElement(vec![0, 1, 0]);
        assert!(semidirect_defect(&g, 10, 100, &x, 1000).is_err());
    }
}
