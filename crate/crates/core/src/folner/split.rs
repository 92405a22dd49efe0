use std::collections::BTreeSet;

use super::canonical::CanonicalNet;
use super::net::{FolnerNet, NetKind};
use super::FolnerError;
use crate::monoid::{Kernel, MElement, MSubset, Monoid, MonoidHom, Section};

/// `F = N_(Z∪X, m) σ(C_(Y, n))` for `π: S → C` with a good section `σ`.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    hom: MonoidHom,
    section: Section,
    kernel: Kernel,
    n_net: CanonicalNet,
    c_net: CanonicalNet,
}

/// The pieces of one set of a split-extension net.
#[derive(Clone, Debug)]
pub struct SplitParts {
    /// Correction elements in `N`.
    pub z: MSubset,
    pub n_part: MSubset,
    pub c_part: MSubset,
    pub set: MSubset,
}

pub fn split_extension_net(hom: &MonoidHom, section: &Section) -> Result<SplitExtension, FolnerError> {
    SplitExtension::new(hom, section)
}

impl SplitExtension {
    pub fn new(hom: &MonoidHom, section: &Section) -> Result<Self, FolnerError> {
        if section.hom() != hom {
            return Err(FolnerError::NotGoodSection("section belongs to another homomorphism".into()));
        }
        if !section.is_good() {
            return Err(FolnerError::NotGoodSection(format!("{:?}", section.rule())));
        }
        let target = hom
            .target()
            .as_monoid()
            .ok_or_else(|| FolnerError::Unsupported("target must be a cancellative monoid".into()))?;
        let kernel = hom.kernel();
        Ok(SplitExtension {
            hom: hom.clone(),
            section: section.clone(),
            n_net: CanonicalNet::new(kernel.monoid())?,
            c_net: CanonicalNet::new(target)?,
            kernel,
        })
    }

    pub fn source(&self) -> &Monoid {
        self.hom.source()
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn section(&self) -> &Section {
        &self.section
    }

    // The unique z ∈ N with lhs = z·rhs.
    fn left_factor(&self, rhs: &MElement, lhs: &MElement) -> Result<MElement, FolnerError> {
        let s = self.hom.source();
        self.hom
            .solve_left(rhs, lhs)
            .filter(|z| s.mul(z, rhs) == *lhs)
            .and_then(|z| self.kernel.pull_back(&z))
            .ok_or_else(|| FolnerError::NotGoodSection(format!("no z ∈ N with {lhs} = z·{rhs}")))
    }

    /// The set at index `((X, m), (Y, n))`, `X ⊆ N`, `Y ⊆ C`, `m ≥ n`.
    pub fn parts(&self, x: &MSubset, m: u64, y: &MSubset, n: u64) -> Result<SplitParts, FolnerError> {
        if m < n {
            return Err(FolnerError::Unsupported(format!("index needs m ≥ n, got m={m}, n={n}")));
        }
        let s = self.hom.source();
        let c_monoid = self.c_net.monoid();
        let c_part = self.c_net.get(y, n)?;
        let mut z = BTreeSet::new();
        for c in c_part.iter() {
            let sc = self.section.apply(c)?;
            for xe in x.iter() {
                let lhs = s.mul(&sc, &self.kernel.embed(xe));
                z.insert(self.left_factor(&sc, &lhs)?);
            }
            for ye in y.iter() {
                let lhs = s.mul(&sc, &self.section.apply(ye)?);
                let rhs = self.section.apply(&c_monoid.mul(c, ye))?;
                z.insert(self.left_factor(&rhs, &lhs)?);
            }
        }
        z.insert(self.kernel.monoid().identity());
        let z = MSubset::new(self.kernel.monoid(), z)?;
        let n_part = self.n_net.get(&z.union(x), m)?;
        let sigma_c = self.section.apply_set(&c_part)?;
        let embedded = self.kernel.embed_set(&n_part, s);
        let set = embedded.product(&sigma_c)?;
        Ok(SplitParts { z, n_part, c_part, set })
    }

    /// Test elements `x` and `σ(y)` of the chain at any index.
    pub fn chain_seeds(&self) -> Result<(MSubset, MSubset), FolnerError> {
        let nm = self.kernel.monoid();
        let cm = self.c_net.monoid();
        let mut xs = nm.generators();
        xs.push(nm.identity());
        let mut ys = cm.generators();
        ys.push(cm.identity());
        Ok((MSubset::new(nm, xs)?, MSubset::new(cm, ys)?))
    }

    pub(crate) fn get_chain(&self, k: u64) -> Result<MSubset, FolnerError> {
        let (x, y) = self.chain_seeds()?;
        Ok(self.parts(&x, k, &y, k)?.set)
    }

    /// The chain `k ↦ F_((X,k),(Y,k))` with `X`, `Y` the generators and `1`.
    pub fn chain(&self) -> FolnerNet {
        FolnerNet::from_kind(self.hom.source(), NetKind::Split(Box::new(self.clone())))
    }
}
