//! Cancellative monoids, their finite subsets, homomorphisms and sections.

mod hom;
#[allow(clippy::module_inception)]
mod monoid;
mod msubset;

pub use hom::{Codomain, CoordMap, HomKind, Kernel, MonoidHom, Section, SectionRule};
pub use monoid::{CoordKind, MElement, Monoid, MonoidError, MonoidKind};
pub use msubset::{ratio_from_f64, MSubset};

/// Builds a finite monoid from a multiplication table on `{0, …, n-1}` with
/// identity 0. Only cyclic groups are representable; tables that fail
/// associativity or cancellativity are rejected with a witness.
///
/// Returns the monoid together with the relabelling `table element → ℤ/n`.
pub fn monoid_from_table(table: &[Vec<usize>]) -> Result<(Monoid, Vec<i64>), MonoidError> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(MonoidError::Unsupported("table must be square with entries in range".into()));
    }
    for a in 0..n {
        if table[0][a] != a || table[a][0] != a {
            return Err(MonoidError::Unsupported("element 0 must be the identity".into()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(MonoidError::Unsupported(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in b + 1..n {
                if table[a][b] == table[a][c] {
                    return Err(MonoidError::NotCancellative(format!("{a}·{b} = {a}·{c}")));
                }
                if table[b][a] == table[c][a] {
                    return Err(MonoidError::NotCancellative(format!("{b}·{a} = {c}·{a}")));
                }
            }
        }
    }
    // A finite cancellative monoid is a group; accept it when cyclic.
    for g in 0..n {
        let mut label = vec![-1i64; n];
        let mut x = 0;
        for k in 0..n {
            if label[x] >= 0 {
                break;
            }
            label[x] = k as i64;
            x = table[x][g];
        }
        if label.iter().all(|&l| l >= 0) {
            return Ok((Monoid::cyclic(n as u64), label));
        }
    }
    Err(MonoidError::Unsupported("only cyclic finite tables are representable".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_cancellative_table() {
        // {1, 0} under multiplication of integers: 0·0 = 0·1.
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(monoid_from_table(&t), Err(MonoidError::NotCancellative(_))));
    }

    #[test]
    fn accepts_cyclic_table() {
        let t: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let (m, labels) = monoid_from_table(&t).unwrap();
        assert_eq!(m, Monoid::cyclic(4));
        assert_eq!(labels[0], 0);
    }
}
