//! Discrete abelian groups: elements, finite subsets, subgroups, quotients.

mod enumerate;
mod group;
pub mod lattice;
mod quotient;
pub mod snf;
mod subgroup;
mod subset;

use thiserror::Error;

pub use enumerate::{groups_of_order, groups_up_to};
pub use group::{AbelianGroup, GroupElement, Layout};
pub use quotient::Quotient;
pub use subgroup::{ln_biguint, Order, Reducer, Subgroup};
pub use subset::FiniteSubset;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AbelianError {
    #[error("{0} is not an element of the group")]
    NotAnElement(GroupElement),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("unsupported quotient: {0}")]
    UnsupportedQuotient(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{what} exceeds the bound {bound}")]
    BoundExceeded { what: &'static str, bound: u64 },
    #[error("set of size {size} exceeds the element budget {budget}")]
    BudgetExceeded { size: u128, budget: usize },
    #[error("group is infinite")]
    Infinite,
    #[error("integer overflow")]
    Overflow,
}

/// `ℓ(X + Y) ≤ ℓ(X) + ℓ(Y)` and friends are stated on natural logs.
pub fn ell(x: &FiniteSubset) -> f64 {
    x.ell()
}
