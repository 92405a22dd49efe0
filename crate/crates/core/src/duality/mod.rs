//! Pontryagin duality for finite groups and windowed duals of direct sums:
//! annihilators, dual endomorphisms, cotrajectories and the comparison of
//! algebraic with topological entropy.

mod bridge;
mod windowed;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::abelian::lattice::ModLattice;
use crate::abelian::{AbelianError, AbelianGroup, GroupElement, Subgroup};
use crate::entropy::{Endomorphism, EntropyError};
use crate::folner::FolnerError;
use crate::monoid::{MElement, MonoidError};

pub use bridge::{bridge_check, ct_check, ct_check_prefixes, BridgeReport, BridgeRow, CtReport};
pub use windowed::{cotrajectory, dual_action, h_top_estimate, DualAction, DualSpace, OpenSubgroup, TopEstimate, WindowedProfinite};

/// Largest group order for which the finite dual is computed.
pub const DEFAULT_DUAL_BOUND: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualityError {
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Folner(#[from] FolnerError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("group order exceeds the bound {bound}")]
    BoundExceeded { bound: u64 },
    #[error("α̂({element}) reads coordinate {coordinate} outside the window")]
    WindowEscape { element: MElement, coordinate: MElement },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn finite_factors(group: &AbelianGroup) -> Result<&[u64], DualityError> {
    match group {
        AbelianGroup::FiniteProduct { factors } => Ok(factors),
        g => Err(DualityError::Unsupported(format!("finite duals need a finite product, got {g}"))),
    }
}

fn check_bound(group: &AbelianGroup, bound: u64) -> Result<(), DualityError> {
    let n = group.order().ok_or(AbelianError::Infinite)?;
    if n > bound.into() {
        return Err(DualityError::BoundExceeded { bound });
    }
    Ok(())
}

/// `Â` for `A = ∏ ℤ/n_i`: the same factors, characters written as vectors.
pub fn dual_group(group: &AbelianGroup) -> Result<AbelianGroup, DualityError> {
    finite_factors(group)?;
    Ok(group.clone())
}

/// `⟨x, χ⟩ = Σ x_i χ_i / n_i mod 1`, as a fraction in `[0, 1)`.
pub fn pairing(group: &AbelianGroup, x: &GroupElement, chi: &GroupElement) -> Result<Ratio<i128>, DualityError> {
    let factors = finite_factors(group)?;
    let (GroupElement::Dense(a), GroupElement::Dense(b)) = (x, chi) else {
        return Err(DualityError::Unsupported("dense elements expected".into()));
    };
    let mut acc = Ratio::from_integer(0i128);
    for ((&p, &q), &n) in a.iter().zip(b).zip(factors) {
        acc += Ratio::new((p * q).rem_euclid(n as i128), n as i128);
    }
    Ok(acc - acc.floor())
}

/// Characters in `∏ ℤ/n_i` killing every vector of `gens`, unbounded.
pub(crate) fn annihilate_vectors(factors: &[u64], gens: &[Vec<i128>]) -> ModLattice {
    let moduli: Vec<i128> = factors.iter().map(|&n| n as i128).collect();
    let l = moduli.iter().fold(1i128, |a, &b| a.lcm(&b));
    // χ kills g iff Σ g_i χ_i (L/n_i) ≡ 0 mod L.
    let images: Vec<Vec<i128>> =
        (0..moduli.len()).map(|i| gens.iter().map(|g| (g[i] * (l / moduli[i])).rem_euclid(l)).collect()).collect();
    ModLattice::new(vec![l; gens.len()]).preimage(&moduli, &images)
}

pub(crate) fn lattice_to_subgroup(group: &AbelianGroup, lat: &ModLattice) -> Result<Subgroup, AbelianError> {
    Subgroup::generated(group, lat.basis().into_iter().map(|r| group.normalize(GroupElement::Dense(r)).expect("dense")))
}

pub(crate) fn dense_generators(b: &Subgroup) -> Result<Vec<Vec<i128>>, AbelianError> {
    Ok(b.generators()?
        .into_iter()
        .map(|g| match g {
            GroupElement::Dense(v) => v,
            GroupElement::Sparse(_) => unreachable!("finite products have dense elements"),
        })
        .collect())
}

/// `B^⊥ = {χ ∈ Â : χ(B) = 0}`.
pub fn annihilator(b: &Subgroup, bound: u64) -> Result<Subgroup, DualityError> {
    let group = b.group();
    let factors = finite_factors(group)?;
    check_bound(group, bound)?;
    let lat = annihilate_vectors(factors, &dense_generators(b)?);
    Ok(lattice_to_subgroup(group, &lat)?)
}

/// `φ̂ = χ ↦ χ ∘ φ`, the adjoint under the pairing:
/// `φ̂_{ji} = m_ij · n_j / n_i mod n_j`.
pub fn dual_endomorphism(phi: &Endomorphism, group: &AbelianGroup, bound: u64) -> Result<Endomorphism, DualityError> {
    let factors = finite_factors(group)?;
    check_bound(group, bound)?;
    phi.validate(group)?;
    match phi {
        Endomorphism::CongruentMatrix(m) => Ok(Endomorphism::CongruentMatrix(dual_matrix(m, factors))),
        Endomorphism::Composite(v) => Ok(Endomorphism::Composite(
            v.iter().rev().map(|e| dual_endomorphism(e, group, bound)).collect::<Result<_, _>>()?,
        )),
        e => Err(DualityError::Unsupported(format!("dual of {e:?}"))),
    }
}

/// Adjoint of a congruent matrix on `∏ ℤ/n_i`.
pub(crate) fn dual_matrix(m: &[Vec<i128>], factors: &[u64]) -> Vec<Vec<i128>> {
    let n: Vec<i128> = factors.iter().map(|&x| x as i128).collect();
    let k = n.len();
    (0..k).map(|j| (0..k).map(|i| (m[i][j] * n[j] / n[i]).rem_euclid(n[j])).collect()).collect()
}

/// `φ̂⁻¹(C)` for `C ≤ Â`.
pub fn dual_preimage(phi_hat: &Endomorphism, c: &Subgroup) -> Result<Subgroup, DualityError> {
    let group = c.group();
    let factors = finite_factors(group)?;
    let moduli: Vec<i128> = factors.iter().map(|&x| x as i128).collect();
    let images: Vec<Vec<i128>> = crate::entropy::spanning_elements(group)
        .iter()
        .map(|u| match phi_hat.apply(group, u) {
            Ok(GroupElement::Dense(v)) => Ok(v),
            Ok(_) => unreachable!(),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;
    // spanning_elements of a trivial factor are zero vectors; the preimage is unaffected.
    let target = ModLattice::from_rows(moduli.clone(), dense_generators(c)?);
    let lat = target.preimage(&moduli, &images);
    Ok(lattice_to_subgroup(group, &lat)?)
}
