use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::endo::{spanning_elements, Endomorphism};
use super::EntropyError;
use crate::abelian::{AbelianGroup, FiniteSubset, GroupElement, Subgroup};
use crate::monoid::{CoordKind, MElement, Monoid, MonoidKind};

/// A left action `α: S → End(A)` of a commutative monoid, fixed by the images
/// of the coordinate generators.
#[derive(Clone)]
pub struct Action {
    monoid: Monoid,
    group: AbelianGroup,
    gens: Vec<Endomorphism>,
    inverses: Vec<Option<Endomorphism>>,
    carrier: Option<Subgroup>,
    cache: Arc<Mutex<HashMap<MElement, Endomorphism>>>,
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Action({} on {}, gens {:?}", self.monoid, self.group, self.gens)?;
        if let Some(b) = &self.carrier {
            write!(f, ", restricted to {b:?}")?;
        }
        write!(f, ")")
    }
}

/// Elements on which generator identities are tested. For direct sums these
/// are base units at every index of the radius-1 window.
pub(crate) fn test_elements(group: &AbelianGroup) -> Vec<GroupElement> {
    match group {
        AbelianGroup::DirectSum { base, index } => {
            let mut out = Vec::new();
            for k in index.window(1).into_iter().take(64) {
                for i in 0..base.len() {
                    let mut v = vec![0i64; base.len()];
                    v[i] = 1;
                    let u = group.normalize(GroupElement::unit(k.clone(), v)).expect("unit");
                    if u != group.zero() {
                        out.push(u);
                    }
                }
            }
            out
        }
        _ => spanning_elements(group),
    }
}

fn agree_on(a: &Endomorphism, b: &Endomorphism, group: &AbelianGroup, elems: &[GroupElement]) -> Result<Option<GroupElement>, EntropyError> {
    for x in elems {
        if a.apply(group, x)? != b.apply(group, x)? {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}

/// Builds and validates an action from one endomorphism per coordinate of
/// `monoid`.
pub fn action_from_generators(monoid: &Monoid, group: &AbelianGroup, gens: Vec<Endomorphism>) -> Result<Action, EntropyError> {
    let MonoidKind::Commutative(kinds) = monoid.kind() else {
        return Err(EntropyError::Unsupported(format!("actions of {monoid} are not supported")));
    };
    if gens.len() != kinds.len() {
        return Err(EntropyError::InvalidEndomorphism(format!(
            "{} generators for a monoid of rank {}",
            gens.len(),
            kinds.len()
        )));
    }
    for g in &gens {
        g.validate(group)?;
    }
    let elems = test_elements(group);
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let ab = gens[i].compose(&gens[j], group)?;
            let ba = gens[j].compose(&gens[i], group)?;
            if let Some(x) = agree_on(&ab, &ba, group, &elems)? {
                return Err(EntropyError::NonCommuting { first: i, second: j, witness: x.to_string() });
            }
        }
    }
    let id = Endomorphism::identity(group);
    let mut inverses = Vec::with_capacity(gens.len());
    for (i, (g, k)) in gens.iter().zip(kinds).enumerate() {
        inverses.push(match k {
            CoordKind::Nat => None,
            CoordKind::Int => {
                let inv = g.inverse(group).map_err(|_| EntropyError::NotInvertible(format!("generator {i}: {g:?}")))?;
                if let Some(x) = agree_on(&g.compose(&inv, group)?, &id, group, &elems)? {
                    return Err(EntropyError::NotInvertible(format!("generator {i} at {x}")));
                }
                Some(inv)
            }
            CoordKind::Cyclic(n) => {
                let p = g.pow(*n, group)?;
                if let Some(x) = agree_on(&p, &id, group, &elems)? {
                    return Err(EntropyError::InvalidEndomorphism(format!(
                        "generator {i} raised to {n} moves {x}"
                    )));
                }
                Some(g.pow(n - 1, group)?)
            }
        });
    }
    Ok(Action {
        monoid: monoid.clone(),
        group: group.clone(),
        gens,
        inverses,
        carrier: None,
        cache: Arc::new(Mutex::new(HashMap::new())),
    })
}

impl Action {
    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Endomorphism] {
        &self.gens
    }

    /// The invariant subgroup this action is restricted to, if any.
    pub fn carrier(&self) -> Option<&Subgroup> {
        self.carrier.as_ref()
    }

    pub(crate) fn with_carrier(&self, b: Subgroup) -> Action {
        Action { carrier: Some(b), cache: Arc::new(Mutex::new(HashMap::new())), ..self.clone() }
    }

    pub(crate) fn inverse_generator(&self, i: usize) -> Option<&Endomorphism> {
        self.inverses[i].as_ref()
    }

    /// `α(s)`.
    pub fn alpha(&self, s: &MElement) -> Result<Endomorphism, EntropyError> {
        self.monoid.check(s)?;
        if let Some(e) = self.cache.lock().expect("action cache poisoned").get(s) {
            return Ok(e.clone());
        }
        let mut acc = Endomorphism::identity(&self.group);
        for (i, &c) in s.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = if c > 0 {
                self.gens[i].pow(c as u64, &self.group)?
            } else {
                let inv = self.inverses[i].as_ref().ok_or_else(|| EntropyError::NotInvertible(format!("generator {i}")))?;
                inv.pow(c.unsigned_abs(), &self.group)?
            };
            acc = acc.compose(&p, &self.group)?;
        }
        self.cache.lock().expect("action cache poisoned").insert(s.clone(), acc.clone());
        Ok(acc)
    }

    pub fn apply(&self, s: &MElement, x: &GroupElement) -> Result<GroupElement, EntropyError> {
        self.alpha(s)?.apply(&self.group, x)
    }

    /// `α(s)(X)`.
    pub fn image_set(&self, s: &MElement, x: &FiniteSubset) -> Result<FiniteSubset, EntropyError> {
        let a = self.alpha(s)?;
        let imgs: Result<Vec<GroupElement>, EntropyError> = x.iter().map(|e| a.apply(&self.group, &e)).collect();
        Ok(FiniteSubset::new(&self.group, imgs?)?)
    }

    /// `α(s)(B)`.
    pub fn image_subgroup(&self, s: &MElement, b: &Subgroup) -> Result<Subgroup, EntropyError> {
        self.alpha(s)?.image_subgroup(&self.group, b)
    }

    /// `α(st) = α(s)α(t)` on test elements, for the given pairs.
    pub fn check_homomorphism(&self, pairs: &[(MElement, MElement)]) -> Result<Option<String>, EntropyError> {
        let elems = test_elements(&self.group);
        for (s, t) in pairs {
            let st = self.alpha(&self.monoid.mul(s, t))?;
            let composed = self.alpha(s)?.compose(&self.alpha(t)?, &self.group)?;
            if let Some(x) = agree_on(&st, &composed, &self.group, &elems)? {
                return Ok(Some(format!("s={s}, t={t}, x={x}")));
            }
        }
        Ok(None)
    }
}
