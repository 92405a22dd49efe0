//! Right Følner nets, their defects, canonically indexed nets, split
//! extensions, ε-disjointness and ε-tilings.

mod canonical;
mod disjoint;
mod net;
mod semidirect;
mod split;
mod tiling;

use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::monoid::{MElement, MSubset, MonoidError};

pub use canonical::CanonicalNet;
pub use disjoint::{is_eps_disjoint, DisjointCertificate};
pub use net::{diagonal_pair, FolnerNet};
pub use semidirect::{semidirect_defect, semidirect_defect_closed_form, DEFAULT_ELEMENT_BUDGET};
pub use split::{split_extension_net, SplitExtension, SplitParts};
pub use tiling::{
    check_tiling, filling_hypotheses, greedy_tiler, remtil_check, FillingReport, TilingReport, TilingWitness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FolnerError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("net index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("search budget {budget} exceeded while looking for {what}")]
    BudgetExceeded { what: String, budget: u64 },
    #[error("section is not good: {0}")]
    NotGoodSection(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("integer overflow")]
    Overflow,
    #[error("{0}")]
    Unsupported(String),
}

/// One row of a defect table: `|F_i s △ F_i| / |F_i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectRow {
    pub index: usize,
    pub label: String,
    pub size: usize,
    /// The translating element, or `None` for the whole test set `E`.
    pub element: Option<MElement>,
    pub ratio: Ratio<u64>,
}

impl DefectRow {
    pub fn value(&self) -> f64 {
        *self.ratio.numer() as f64 / *self.ratio.denom() as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DefectReport {
    pub rows: Vec<DefectRow>,
    /// Maximum over the test elements (and over `E` itself) per index.
    pub max_per_index: Vec<(usize, Ratio<u64>)>,
    /// Whether the per-index maximum is non-increasing over the second half.
    pub tail_non_increasing: bool,
}

impl DefectReport {
    pub fn tail(&self) -> f64 {
        self.max_per_index.last().map(|(_, r)| *r.numer() as f64 / *r.denom() as f64).unwrap_or(0.0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,|F|,element,ratio\n");
        for r in &self.rows {
            let el = r.element.as_ref().map(|e| e.to_string()).unwrap_or_else(|| "E".into());
            let _ = writeln!(out, "{},{},\"{}\",{:.12}", r.label, r.size, el, r.value());
        }
        out
    }
}

/// Defect ratios of `F_1, …, F_prefix` against each `s ∈ test` and against
/// the whole set `E = test` (`|F_i E △ F_i| / |F_i|`).
pub fn verify_folner(net: &FolnerNet, test: &MSubset, prefix: usize) -> Result<DefectReport, FolnerError> {
    if prefix < 2 {
        return Err(FolnerError::Unsupported("prefix must be at least 2".into()));
    }
    let monoid = net.monoid().clone();
    let test = if test.monoid() == &monoid { test.clone() } else { test.reinterpret(&monoid)? };
    let indices: Vec<usize> = (1..=prefix).collect();
    let per_index = crate::par_map(&indices, |&i| -> Result<Vec<DefectRow>, FolnerError> {
        let f = net.get(i)?;
        let label = net.label(i);
        let mut rows = Vec::with_capacity(test.len() + 1);
        for s in test.iter() {
            rows.push(DefectRow {
                index: i,
                label: label.clone(),
                size: f.len(),
                element: Some(s.clone()),
                ratio: f.sym_diff_ratio_exact(s)?,
            });
        }
        let fe = f.product(&test)?;
        rows.push(DefectRow {
            index: i,
            label,
            size: f.len(),
            element: None,
            ratio: Ratio::new(fe.sym_diff_len(&f) as u64, f.len() as u64),
        });
        Ok(rows)
    });
    let mut rows = Vec::new();
    let mut max_per_index = Vec::new();
    for (i, r) in indices.iter().zip(per_index) {
        let r = r?;
        let m = r.iter().map(|x| x.ratio).max().unwrap_or_else(|| Ratio::from_integer(0));
        max_per_index.push((*i, m));
        rows.extend(r);
    }
    let half = &max_per_index[max_per_index.len() / 2..];
    let tail_non_increasing = half.windows(2).all(|w| w[1].1 <= w[0].1);
    Ok(DefectReport { rows, max_per_index, tail_non_increasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Monoid;

    #[test]
    fn integer_boxes_defect() {
        let z = Monoid::integers(1);
        let net = FolnerNet::boxes(&z).unwrap();
        let test = MSubset::new(&z, [MElement(vec![1]), MElement(vec![-1])]).unwrap();
        let rep = verify_folner(&net, &test, 20).unwrap();
        for row in rep.rows.iter().filter(|r| r.element.is_some()) {
            assert_eq!(row.ratio, Ratio::new(2, 2 * row.index as u64 + 1));
        }
        assert!(rep.tail_non_increasing);
        assert!(rep.tail() < 0.2);
    }

    #[test]
    fn naturals_inside_integers() {
        let n = Monoid::naturals(1);
        let z = Monoid::integers(1);
        let net = FolnerNet::boxes(&n).unwrap().reinterpreted(&z).unwrap();
        let test = MSubset::singleton(&z, MElement(vec![-1])).unwrap();
        let rep = verify_folner(&net, &test, 10).unwrap();
        let r = &rep.rows[2 * 9];
        assert_eq!(r.ratio, Ratio::new(2, 10));
    }

    #[test]
    fn constant_net_has_zero_defect() {
        let g = Monoid::cyclic(5);
        let net = FolnerNet::boxes(&g).unwrap();
        let test = MSubset::new(&g, g.window(0)).unwrap();
        let rep = verify_folner(&net, &test, 4).unwrap();
        assert!(rep.rows.iter().all(|r| r.ratio == Ratio::from_integer(0)));
    }
}
