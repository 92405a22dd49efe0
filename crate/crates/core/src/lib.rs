//! Exact arithmetic for entropy of amenable monoid actions on discrete
//! abelian groups.
//!
//! The crate is organised bottom-up: [`abelian`] and [`monoid`] hold the
//! algebra, [`folner`] builds and checks Følner nets and tilings,
//! [`integral`] evaluates the subadditive integral along a net, [`entropy`]
//! turns trajectories of actions into entropy estimates, and [`duality`]
//! checks the same numbers from the Pontryagin-dual side.

pub mod abelian;
pub mod monoid;
pub mod folner;
pub mod integral;
pub mod entropy;
pub mod duality;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order always follows input order.
#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}
