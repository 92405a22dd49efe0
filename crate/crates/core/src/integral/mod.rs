//! The integral `H_S(f) = lim f(F_i)/|F_i|` of subadditive set functions
//! along Følner nets, its shifts, `Θ_σ`, and the Fubini comparison.

mod axioms;
mod function;

use std::fmt::Write as _;

use thiserror::Error;

use crate::folner::{FolnerError, FolnerNet};
use crate::monoid::{MSubset, MonoidError, MonoidHom, Section};

pub use axioms::{sample_axioms, AxiomReport, AxiomViolation};
pub use function::{card_pi, Provenance, SetFunction};

pub const DEFAULT_TOLERANCE: f64 = 1e-2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegralError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Folner(#[from] FolnerError),
    #[error("set function is negative on {set}: {value}")]
    Negative { set: String, value: f64 },
    #[error("set functions are evaluated on nonempty sets")]
    EmptySet,
    #[error("section is not good")]
    NotGoodSection,
    #[error("budget {budget} exceeded: {what}")]
    BudgetExceeded { what: String, budget: u64 },
    #[error("evaluation failed on {set}: {reason}")]
    Evaluation { set: String, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralRow {
    pub index: usize,
    pub label: String,
    pub size: usize,
    pub value: f64,
    pub ratio: f64,
}

/// The ratio table `f(F_i)/|F_i|` with its tail summary.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralEstimate {
    pub rows: Vec<IntegralRow>,
    pub tol: f64,
}

impl IntegralEstimate {
    /// The ratio at the largest evaluated index.
    pub fn tail(&self) -> f64 {
        self.rows.last().map(|r| r.ratio).unwrap_or(0.0)
    }

    /// `max - min` of the ratios over the last quarter of the table.
    pub fn oscillation(&self) -> f64 {
        let n = self.rows.len();
        if n == 0 {
            return 0.0;
        }
        let start = n - (n / 4).max(1);
        let tail = &self.rows[start..];
        let max = tail.iter().map(|r| r.ratio).fold(f64::MIN, f64::max);
        let min = tail.iter().map(|r| r.ratio).fold(f64::MAX, f64::min);
        max - min
    }

    pub fn converged(&self) -> bool {
        self.oscillation() < self.tol
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,|F|,f,ratio\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{:.12},{:.12}", r.label, r.size, r.value, r.ratio);
        }
        out
    }
}

/// Evaluates `f` on `F_1, …, F_prefix`. Indices may run in parallel; rows
/// come back in index order.
pub fn integral(f: &SetFunction, net: &FolnerNet, prefix: usize) -> Result<IntegralEstimate, IntegralError> {
    if prefix < 1 {
        return Err(IntegralError::Folner(FolnerError::Unsupported("prefix must be positive".into())));
    }
    if f.monoid() != net.monoid() {
        return Err(IntegralError::Monoid(MonoidError::Unsupported(format!(
            "function on {} evaluated along a net of {}",
            f.monoid(),
            net.monoid()
        ))));
    }
    let indices: Vec<usize> = (1..=prefix).collect();
    let rows = crate::par_map(&indices, |&i| -> Result<IntegralRow, IntegralError> {
        let set = net.get(i)?;
        let value = f.eval(&set)?;
        Ok(IntegralRow { index: i, label: net.label(i), size: set.len(), value, ratio: value / set.len() as f64 })
    });
    Ok(IntegralEstimate { rows: rows.into_iter().collect::<Result<_, _>>()?, tol: DEFAULT_TOLERANCE })
}

/// `Θ_σ(f)` as a set function on `C`: `Y ↦ H_N(f^{σ(Y)})`, read off at
/// the last index of `N`'s net.
pub fn theta(f: &SetFunction, section: &Section, n_net: &FolnerNet, prefix: usize) -> Result<SetFunction, IntegralError> {
    if !section.is_good() {
        return Err(IntegralError::NotGoodSection);
    }
    let hom = section.hom();
    let target = hom
        .target()
        .as_monoid()
        .ok_or_else(|| MonoidError::Unsupported("Θ needs a monoid target".into()))?
        .clone();
    let kernel = hom.kernel();
    if n_net.monoid() != kernel.monoid() {
        return Err(IntegralError::Monoid(MonoidError::Unsupported("N-net lives on another monoid".into())));
    }
    let f = f.clone();
    let section = section.clone();
    let n_net = n_net.clone();
    let source = hom.source().clone();
    SetFunction::new(&target, Provenance::Theta(Box::new(f.provenance().clone())), move |y| {
        let sy = section.apply_set(y)?;
        let inner = f.clone();
        let k = kernel.clone();
        let src = source.clone();
        let g = SetFunction::new(kernel.monoid(), Provenance::Shifted(Box::new(f.provenance().clone())), move |x| {
            inner.eval(&k.embed_set(x, &src).product(&sy)?)
        })?;
        // Only the tail is read, so only the last index is evaluated.
        let last = n_net.get(prefix)?;
        Ok(g.eval(&last)? / last.len() as f64)
    })
}

/// `Θ_σ(f)(Y)` for a single `Y`.
pub fn theta_at(
    f: &SetFunction,
    section: &Section,
    y: &MSubset,
    n_net: &FolnerNet,
    prefix: usize,
) -> Result<f64, IntegralError> {
    theta(f, section, n_net, prefix)?.eval(y)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FubiniReport {
    pub left: IntegralEstimate,
    pub right: IntegralEstimate,
}

impl FubiniReport {
    pub fn difference(&self) -> f64 {
        (self.left.tail() - self.right.tail()).abs()
    }
}

/// `H_S(f)` against `H_C(Θ_σ(f))`.
pub fn fubini_check(
    f: &SetFunction,
    section: &Section,
    s_net: &FolnerNet,
    c_net: &FolnerNet,
    n_net: &FolnerNet,
    prefix: usize,
) -> Result<FubiniReport, IntegralError> {
    let hom: &MonoidHom = section.hom();
    if hom.apply(&hom.source().identity()) != hom.target().identity()
        || section.apply(&hom.target().identity())? != hom.source().identity()
    {
        return Err(IntegralError::NotGoodSection);
    }
    let left = integral(f, s_net, prefix)?;
    let th = theta(f, section, n_net, prefix)?;
    let right = integral(&th, c_net, prefix)?;
    Ok(FubiniReport { left, right })
}
