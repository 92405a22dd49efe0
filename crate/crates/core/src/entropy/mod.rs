//! Actions by endomorphisms, trajectories and algebraic entropy.

mod action;
mod derived;
mod endo;
mod trajectory;

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::folner::FolnerError;
use crate::integral::IntegralError;
use crate::monoid::MonoidError;

pub use action::{action_from_generators, Action};
pub use derived::{
    addition_check, conjugate_action, ent_estimate, locally_nilpotent_probe, quotient_and_sub_actions, restriction,
    trajectory_of, AdditionReport, AdditionRow, EntReport, MonoidIso, NilpotentReport,
};
pub use endo::{congruent_ok, spanning_elements, Endomorphism};
pub use trajectory::{
    f_x, h_alg_estimate, subgroup_trajectory, trajectory, trajectory_size, EntropyEstimate, Seed,
    DEFAULT_ELEMENT_BUDGET,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntropyError {
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Folner(#[from] FolnerError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error("budget {budget} exceeded: {what}")]
    BudgetExceeded { what: String, budget: u64 },
    #[error("generators {first} and {second} do not commute (at {witness})")]
    NonCommuting { first: usize, second: usize, witness: String },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("subgroup is not invariant under generator {generator}: {element} leaves it")]
    NotInvariant { generator: usize, element: String },
    #[error("invalid endomorphism: {0}")]
    InvalidEndomorphism(String),
    #[error("group is not torsion: {0}")]
    NonTorsion(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("inexpressible: {0}")]
    Inexpressible(String),
    #[error("integer overflow")]
    Overflow,
}
