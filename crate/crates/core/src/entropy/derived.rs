use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::action::{action_from_generators, test_elements, Action};
use super::endo::{congruent_ok, Endomorphism};
use super::trajectory::{h_alg_estimate, subgroup_trajectory, trajectory, EntropyEstimate, Seed};
use super::EntropyError;
use crate::abelian::{AbelianGroup, FiniteSubset, GroupElement, Order, Quotient, Subgroup};
use crate::folner::FolnerNet;
use crate::monoid::{CoordKind, MElement, MSubset, Monoid};

/// The `T`-action `t ↦ α(ι(t))`, where `embed[j]` is `ι` of the `j`-th
/// coordinate generator of `T`.
pub fn restriction(alpha: &Action, t: &Monoid, embed: &[Vec<i64>]) -> Result<Action, EntropyError> {
    if embed.len() != t.rank() {
        return Err(EntropyError::Inexpressible(format!("{} images for a monoid of rank {}", embed.len(), t.rank())));
    }
    let s = alpha.monoid();
    let images: Vec<MElement> = embed.iter().map(|v| MElement(v.clone())).collect();
    for img in &images {
        if !s.contains(img) {
            return Err(EntropyError::Inexpressible(format!("{img} is not an element of {s}")));
        }
    }
    // Injectivity, sampled on a window of T.
    let image_of = |u: &MElement| -> MElement {
        u.0.iter().zip(&images).fold(s.identity(), |acc, (&c, g)| {
            let p = if c >= 0 {
                s.pow(g, c as u64)
            } else {
                s.inverse(&s.pow(g, c.unsigned_abs())).expect("group coordinate")
            };
            s.mul(&acc, &p)
        })
    };
    let mut seen = std::collections::HashMap::new();
    for u in t.window(3) {
        if let Some(prev) = seen.insert(image_of(&u), u.clone()) {
            return Err(EntropyError::Inexpressible(format!("embedding identifies {prev} and {u}")));
        }
    }
    let mut gens = Vec::with_capacity(images.len());
    for (img, k) in images.iter().zip(t.coord_kinds()) {
        if k == CoordKind::Int && s.inverse(img).is_err() {
            return Err(EntropyError::Inexpressible(format!("{img} has no inverse in {s}")));
        }
        gens.push(alpha.alpha(img)?);
    }
    let mut out = action_from_generators(t, alpha.group(), gens)?;
    if let Some(b) = alpha.carrier() {
        out = out.with_carrier(b.clone());
    }
    Ok(out)
}

fn not_invariant(alpha: &Action, b: &Subgroup) -> Result<(), EntropyError> {
    let group = alpha.group();
    for (i, g) in alpha.generators().iter().enumerate() {
        if let Some(x) = g.maps_into(group, b, b)? {
            return Err(EntropyError::NotInvariant { generator: i, element: x.to_string() });
        }
        if let Some(inv) = alpha.inverse_generator(i) {
            if let Some(x) = inv.maps_into(group, b, b)? {
                return Err(EntropyError::NotInvariant { generator: i, element: format!("{x} (inverse)") });
            }
        }
    }
    Ok(())
}

fn unit_vectors(group: &AbelianGroup) -> Vec<GroupElement> {
    let k = group.coordinate_moduli().len();
    (0..k)
        .map(|i| {
            let v: Vec<i128> = (0..k).map(|j| i128::from(i == j)).collect();
            match group {
                AbelianGroup::DirectSum { index, .. } => {
                    group.normalize(GroupElement::unit(index.identity(), v.iter().map(|&e| e as i64).collect()))
                }
                _ => group.normalize(GroupElement::Dense(v)),
            }
            .expect("unit vector")
        })
        .collect()
}

fn base_vector(group: &AbelianGroup, x: &GroupElement) -> Vec<i128> {
    match (group, x) {
        (AbelianGroup::DirectSum { base, index }, GroupElement::Sparse(m)) => {
            m.get(&index.identity()).map_or(vec![0; base.len()], |v| v.iter().map(|&e| e as i128).collect())
        }
        (_, GroupElement::Dense(v)) => v.clone(),
        _ => unreachable!(),
    }
}

/// The endomorphism of `A/B` induced by `φ`.
fn induced(phi: &Endomorphism, q: &Quotient) -> Result<Endomorphism, EntropyError> {
    let (src, tgt) = (q.source(), q.target());
    if let Endomorphism::Composite(v) = phi {
        return Ok(Endomorphism::Composite(v.iter().map(|e| induced(e, q)).collect::<Result<_, _>>()?));
    }
    // Act with the base part only; the index translation passes through.
    let (level, offset) = match phi {
        Endomorphism::Shift { offset, base } => {
            (Endomorphism::Shift { offset: vec![0; offset.len()], base: base.clone() }, Some(offset.clone()))
        }
        e => (e.clone(), None),
    };
    let units = unit_vectors(tgt);
    let k = units.len();
    let mut m = vec![vec![0i128; k]; k];
    for (t, u) in units.iter().enumerate() {
        let img = q.project(&level.apply(src, &q.lift(u))?);
        for (i, c) in base_vector(tgt, &img).into_iter().enumerate() {
            m[i][t] = c;
        }
    }
    let out = match (tgt, offset) {
        (AbelianGroup::FreeZ { .. }, _) => Endomorphism::IntegerMatrix(m),
        (AbelianGroup::FiniteProduct { factors }, _) => {
            debug_assert!(congruent_ok(&m, factors));
            Endomorphism::CongruentMatrix(m)
        }
        (AbelianGroup::DirectSum { .. }, Some(offset)) => Endomorphism::Shift { offset, base: m },
        (AbelianGroup::DirectSum { .. }, None) => unreachable!("direct sums carry shifts"),
    };
    out.validate(tgt)?;
    Ok(out)
}

/// `α_B` (the action restricted to `B`) and `α_{A/B}` with its projection.
pub fn quotient_and_sub_actions(alpha: &Action, b: &Subgroup) -> Result<(Action, Action, Quotient), EntropyError> {
    if b.group() != alpha.group() {
        return Err(EntropyError::Unsupported(format!("{b:?} is not a subgroup of {}", alpha.group())));
    }
    not_invariant(alpha, b)?;
    let q = Quotient::new(alpha.group(), b)?;
    let gens = alpha.generators().iter().map(|g| induced(g, &q)).collect::<Result<Vec<_>, _>>()?;
    let quotient_action = action_from_generators(alpha.monoid(), q.target(), gens)?;
    Ok((alpha.with_carrier(b.clone()), quotient_action, q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdditionRow {
    pub index: usize,
    pub label: String,
    pub size: usize,
    pub whole: BigUint,
    pub sub: BigUint,
    pub quotient: BigUint,
}

impl AdditionRow {
    /// `|T(A)| = |T(B)|·|T(A/B)|`.
    pub fn exact(&self) -> bool {
        self.whole == &self.sub * &self.quotient
    }
}

/// `ent(α)` against `ent(α_B) + ent(α_{A/B})`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditionReport {
    pub rows: Vec<AdditionRow>,
    pub whole: EntropyEstimate,
    pub sub: EntropyEstimate,
    pub quotient: EntropyEstimate,
}

impl AdditionReport {
    pub fn residual(&self) -> f64 {
        (self.whole.tail() - self.sub.tail() - self.quotient.tail()).abs()
    }

    /// Residual zero at every index, in exact arithmetic.
    pub fn exact_at_every_index(&self) -> bool {
        self.rows.iter().all(AdditionRow::exact)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ent(alpha)      = {:.12}\n", self.whole.tail()));
        out.push_str(&format!("ent(alpha_B)    = {:.12}\n", self.sub.tail()));
        out.push_str(&format!("ent(alpha_A/B)  = {:.12}\n", self.quotient.tail()));
        out.push_str(&format!("residual        = {:.3e}\n", self.residual()));
        out.push_str(&format!("exact per index = {}\n", self.exact_at_every_index()));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,|F|,|T(A)|,|T(B)|,|T(A/B)|,exact\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{},{}\n", r.label, r.size, r.whole, r.sub, r.quotient, r.exact()));
        }
        out
    }
}

/// Compares the three trajectory orders index by index. `x` generates the
/// action on `A`; the seeds for `B` and `A/B` default to `x ∩ B` and the
/// image of `x`.
pub fn addition_check(
    alpha: &Action,
    b: &Subgroup,
    x: &Subgroup,
    x_sub: Option<&Subgroup>,
    x_quotient: Option<&Subgroup>,
    net: &FolnerNet,
    prefix: usize,
) -> Result<AdditionReport, EntropyError> {
    if !alpha.group().is_torsion() {
        return Err(EntropyError::NonTorsion(alpha.group().to_string()));
    }
    let (sub, quot, q) = quotient_and_sub_actions(alpha, b)?;
    let xb = match x_sub {
        Some(s) => s.clone(),
        None => x.meet(b)?,
    };
    let xq = match x_quotient {
        Some(s) => s.clone(),
        None => q.project_subgroup(x)?,
    };
    let budget = usize::MAX;
    let whole = h_alg_estimate(alpha, &Seed::Subgroup(x.clone()), net, prefix, budget)?;
    let sub_est = h_alg_estimate(&sub, &Seed::Subgroup(xb), net, prefix, budget)?;
    let quot_est = h_alg_estimate(&quot, &Seed::Subgroup(xq), net, prefix, budget)?;
    let rows = whole
        .rows()
        .iter()
        .zip(&whole.counts)
        .zip(sub_est.counts.iter().zip(&quot_est.counts))
        .map(|((r, w), (s, qc))| AdditionRow {
            index: r.index,
            label: r.label.clone(),
            size: r.size,
            whole: w.clone(),
            sub: s.clone(),
            quotient: qc.clone(),
        })
        .collect();
    Ok(AdditionReport { rows, whole, sub: sub_est, quotient: quot_est })
}

/// An isomorphism `η: S → T` of commutative monoids given by an integer
/// matrix on coordinates (columns are images of generators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidIso {
    pub source: Monoid,
    pub target: Monoid,
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

fn int_matrix_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Ratio<i128>> = r.iter().map(|&x| Ratio::from_integer(x as i128)).collect();
            row.extend((0..n).map(|j| Ratio::from_integer(i128::from(i == j))));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let piv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pr = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pr) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter()
        .map(|r| r[n..].iter().map(|x| x.is_integer().then(|| x.to_integer() as i64)).collect())
        .collect()
}

impl MonoidIso {
    pub fn new(source: &Monoid, target: &Monoid, matrix: Vec<Vec<i64>>) -> Result<Self, EntropyError> {
        let n = source.rank();
        let kinds = source.coord_kinds();
        let bad = |s: String| Err(EntropyError::NotIsomorphism(s));
        if target.rank() != n || matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return bad("matrix shape".into());
        }
        if kinds.iter().any(|k| matches!(k, CoordKind::Cyclic(_))) || target.coord_kinds() != kinds {
            return bad("supported for products of ℕ and ℤ with matching coordinates".into());
        }
        let Some(inverse) = int_matrix_inverse(&matrix) else {
            return bad(format!("{matrix:?} has no integer inverse"));
        };
        // On ℕ coordinates only permutations are bijective.
        for (j, k) in kinds.iter().enumerate() {
            if *k == CoordKind::Nat {
                let col: Vec<i64> = matrix.iter().map(|r| r[j]).collect();
                if col.iter().filter(|&&c| c != 0).count() != 1 || col.iter().any(|&c| c != 0 && c != 1) {
                    return bad(format!("column {j} does not permute an ℕ coordinate"));
                }
            }
        }
        Ok(MonoidIso { source: source.clone(), target: target.clone(), matrix, inverse })
    }

    fn mul(m: &[Vec<i64>], s: &MElement) -> MElement {
        MElement(m.iter().map(|r| r.iter().zip(&s.0).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn apply(&self, s: &MElement) -> MElement {
        Self::mul(&self.matrix, s)
    }

    pub fn apply_inverse(&self, t: &MElement) -> MElement {
        Self::mul(&self.inverse, t)
    }

    pub fn apply_set(&self, f: &MSubset) -> Result<MSubset, EntropyError> {
        Ok(f.map(&self.target, |s| self.apply(s))?)
    }
}

/// `β(t) = ξ ∘ α(η⁻¹(t)) ∘ ξ⁻¹` for an automorphism `ξ` of `A`.
pub fn conjugate_action(alpha: &Action, xi: &Endomorphism, eta: &MonoidIso) -> Result<Action, EntropyError> {
    let group = alpha.group();
    if eta.source != *alpha.monoid() {
        return Err(EntropyError::NotIsomorphism("η starts at another monoid".into()));
    }
    if alpha.carrier().is_some() {
        return Err(EntropyError::Unsupported("conjugating a restricted action".into()));
    }
    xi.validate(group)?;
    let xi_inv = xi.inverse(group).map_err(|_| EntropyError::NotIsomorphism(format!("{xi:?}")))?;
    let id = Endomorphism::identity(group);
    for x in test_elements(group) {
        if xi.compose(&xi_inv, group)?.apply(group, &x)? != id.apply(group, &x)? {
            return Err(EntropyError::NotIsomorphism(format!("{xi:?} at {x}")));
        }
    }
    let mut gens = Vec::new();
    for j in 0..eta.target.rank() {
        let mut e = vec![0; eta.target.rank()];
        e[j] = 1;
        let s = eta.apply_inverse(&MElement(e));
        let a = alpha.alpha(&s)?;
        gens.push(xi.compose(&a.compose(&xi_inv, group)?, group)?);
    }
    action_from_generators(&eta.target, group, gens)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentReport {
    /// For each seed element, an `s` in the window with `α(s)(x) = 0`.
    pub killers: Vec<(GroupElement, Option<MElement>)>,
    /// A common annihilating element, when every seed element has one.
    pub shift: Option<MElement>,
    /// `H_alg` along the net `F_i·s`.
    pub estimate: Option<EntropyEstimate>,
    pub note: Option<String>,
}

impl NilpotentReport {
    pub fn nilpotent_on_seed(&self) -> bool {
        self.shift.is_some()
    }
}

/// Searches the radius-`window` box for elements annihilating each seed
/// element, and reads the entropy along the translated net.
pub fn locally_nilpotent_probe(
    alpha: &Action,
    x: &FiniteSubset,
    net: &FolnerNet,
    prefix: usize,
    window: i64,
) -> Result<NilpotentReport, EntropyError> {
    let s = alpha.monoid();
    let group = alpha.group();
    let zero = group.zero();
    if group.order().is_some_and(|n| n.is_one()) {
        return Ok(NilpotentReport {
            killers: vec![(zero, Some(s.identity()))],
            shift: Some(s.identity()),
            estimate: None,
            note: Some("the zero group is trivially nilpotent".into()),
        });
    }
    if s.is_group() {
        return Ok(NilpotentReport {
            killers: x.sorted().into_iter().map(|e| (e, None)).collect(),
            shift: None,
            estimate: None,
            note: Some("no group admits a weakly locally nilpotent action on a nonzero group".into()),
        });
    }
    let mut candidates = s.window(window);
    candidates.sort_by_key(|m| (m.0.iter().map(|c| c.unsigned_abs()).sum::<u64>(), m.clone()));
    let mut killers = Vec::new();
    for e in x.sorted() {
        let mut found = None;
        for c in &candidates {
            if alpha.apply(c, &e)? == zero {
                found = Some(c.clone());
                break;
            }
        }
        killers.push((e, found));
    }
    if killers.iter().any(|(_, k)| k.is_none()) {
        return Ok(NilpotentReport { killers, shift: None, estimate: None, note: None });
    }
    // α(Σ s_x)(x) = 0 for every x since S is commutative.
    let shift = killers.iter().fold(s.identity(), |acc, (_, k)| s.mul(&acc, k.as_ref().unwrap()));
    let shifted = net.translated(&MSubset::singleton(s, shift.clone())?)?;
    let estimate = h_alg_estimate(alpha, &Seed::Set(x.clone()), &shifted, prefix, super::DEFAULT_ELEMENT_BUDGET)?;
    Ok(NilpotentReport { killers, shift: Some(shift), estimate: Some(estimate), note: None })
}

/// Outcome of an `ent` computation.
#[derive(Clone, Debug, PartialEq)]
pub struct EntReport {
    pub value: f64,
    /// `true` when the value is `H_alg(α, X)` for a certified generating `X`;
    /// otherwise it is a lower bound over the supplied family.
    pub certified: bool,
    pub certificate: Option<String>,
    pub estimates: Vec<EntropyEstimate>,
}

/// Checks on the radius-`r` window that `T_W(α, X)` contains the part of `A`
/// visible in the window.
fn window_certificate(alpha: &Action, x: &Subgroup, r: i64) -> Result<Option<String>, EntropyError> {
    let s = alpha.monoid();
    let group = alpha.group();
    let w = MSubset::new(s, s.window(r))?;
    let t = subgroup_trajectory(alpha, &w, x)?;
    let targets: Vec<GroupElement> = match group {
        AbelianGroup::DirectSum { base, index } => index
            .window(r)
            .into_iter()
            .flat_map(|k| {
                (0..base.len()).map(move |i| {
                    let mut v = vec![0i64; base.len()];
                    v[i] = 1;
                    GroupElement::unit(k.clone(), v)
                })
            })
            .map(|u| group.normalize(u).expect("unit"))
            .collect(),
        _ => unit_vectors(group),
    };
    if let Some(b) = alpha.carrier() {
        // Restricted actions: the window must reach the carrier's part there.
        let meet = Subgroup::generated(group, targets.clone())?.meet(b)?;
        return Ok(meet
            .is_subgroup_of(&t)?
            .then(|| format!("T_W(α,X) ⊇ B on the radius-{r} window")));
    }
    Ok(targets
        .iter()
        .all(|u| t.contains(u))
        .then(|| format!("T_W(α,X) ⊇ A on the radius-{r} window")))
}

/// `ent(α)`: certified when `generator` passes the window check, otherwise
/// the best tail over `family` as a lower bound.
pub fn ent_estimate(
    alpha: &Action,
    generator: Option<&Subgroup>,
    family: &[Subgroup],
    net: &FolnerNet,
    prefix: usize,
    window: i64,
) -> Result<EntReport, EntropyError> {
    if !alpha.group().is_torsion() {
        return Err(EntropyError::NonTorsion(alpha.group().to_string()));
    }
    if let Some(x) = generator {
        if let Some(cert) = window_certificate(alpha, x, window)? {
            let est = h_alg_estimate(alpha, &Seed::Subgroup(x.clone()), net, prefix, usize::MAX)?;
            return Ok(EntReport { value: est.tail(), certified: true, certificate: Some(cert), estimates: vec![est] });
        }
    }
    let mut estimates = Vec::new();
    for b in family.iter().chain(generator) {
        if let Order::Finite(_) = b.order() {
            estimates.push(h_alg_estimate(alpha, &Seed::Subgroup(b.clone()), net, prefix, usize::MAX)?);
        }
    }
    let value = estimates.iter().map(EntropyEstimate::tail).fold(0.0, f64::max);
    Ok(EntReport { value, certified: false, certificate: None, estimates })
}

/// `T_F(α, X)` for a set seed, as a convenience for checks on sampled data.
pub fn trajectory_of(alpha: &Action, f: &MSubset, x: &FiniteSubset) -> Result<FiniteSubset, EntropyError> {
    trajectory(alpha, f, x, super::DEFAULT_ELEMENT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::Endomorphism;

    fn shift_on(base: u64) -> (Action, AbelianGroup) {
        let g = AbelianGroup::direct_sum(vec![base], Monoid::integers(1)).unwrap();
        let a = action_from_generators(&Monoid::integers(1), &g, vec![Endomorphism::shift(&g, vec![1]).unwrap()]).unwrap();
        (a, g)
    }

    fn e0(v: i64) -> GroupElement {
        GroupElement::unit(MElement(vec![0]), vec![v])
    }

    #[test]
    fn restriction_to_even_integers() {
        let (a, g) = shift_on(3);
        let r = restriction(&a, &Monoid::integers(1), &[vec![2]]).unwrap();
        let x = Subgroup::generated(&g, [e0(1)]).unwrap();
        let net = FolnerNet::boxes(&Monoid::integers(1)).unwrap();
        let est = h_alg_estimate(&r, &Seed::Subgroup(x), &net, 5, usize::MAX).unwrap();
        assert!(est.rows().iter().all(|row| (row.ratio - 3f64.ln()).abs() < 1e-12));
        assert!(restriction(&a, &Monoid::integers(1), &[vec![0]]).is_err());
    }

    #[test]
    fn addition_on_z4_shift() {
        let (a, g) = shift_on(4);
        let b = Subgroup::multiple(&g, 2);
        let x = Subgroup::generated(&g, [e0(1)]).unwrap();
        let net = FolnerNet::boxes(&Monoid::integers(1)).unwrap();
        let rep = addition_check(&a, &b, &x, None, None, &net, 6).unwrap();
        assert!(rep.exact_at_every_index());
        assert!((rep.whole.tail() - 4f64.ln()).abs() < 1e-12);
        assert!((rep.sub.tail() - 2f64.ln()).abs() < 1e-12);
        assert!((rep.quotient.tail() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn invariance_is_checked() {
        let g = AbelianGroup::finite(vec![2, 2]).unwrap();
        let swap = Endomorphism::CongruentMatrix(vec![vec![0, 1], vec![1, 0]]);
        let a = action_from_generators(&Monoid::naturals(1), &g, vec![swap]).unwrap();
        let b = Subgroup::generated(&g, [GroupElement::dense(vec![1, 0])]).unwrap();
        assert!(matches!(quotient_and_sub_actions(&a, &b), Err(EntropyError::NotInvariant { .. })));
        let (sub, quot, _) = quotient_and_sub_actions(&a, &Subgroup::trivial(&g)).unwrap();
        assert!(sub.carrier().unwrap().is_trivial());
        assert_eq!(quot.group(), &g);
    }

    #[test]
    fn conjugation_by_minus_identity() {
        let g = AbelianGroup::finite(vec![7]).unwrap();
        let z = Monoid::integers(1);
        let a = action_from_generators(&z, &g, vec![Endomorphism::scalar(&g, 3)]).unwrap();
        let eta = MonoidIso::new(&z, &z, vec![vec![-1]]).unwrap();
        let b = conjugate_action(&a, &Endomorphism::identity(&g), &eta).unwrap();
        // β(1) = α(-1) = m₅ since 3·5 ≡ 1 mod 7.
        assert_eq!(b.apply(&MElement(vec![1]), &GroupElement::dense(vec![1])).unwrap(), GroupElement::dense(vec![5]));
    }

    #[test]
    fn truncating_shift_is_nilpotent() {
        let g = AbelianGroup::direct_sum(vec![2], Monoid::naturals(1)).unwrap();
        let n = Monoid::naturals(1);
        let a = action_from_generators(&n, &g, vec![Endomorphism::shift(&g, vec![-1]).unwrap()]).unwrap();
        let x = FiniteSubset::new(&g, [g.zero(), GroupElement::unit(MElement(vec![2]), vec![1])]).unwrap();
        let rep = locally_nilpotent_probe(&a, &x, &FolnerNet::boxes(&n).unwrap(), 6, 5).unwrap();
        assert_eq!(rep.shift, Some(MElement(vec![3])));
        assert_eq!(rep.estimate.unwrap().tail(), 0.0);
        let (b, _) = shift_on(2);
        let rep = locally_nilpotent_probe(&b, &FiniteSubset::zero(b.group()), &FolnerNet::boxes(b.monoid()).unwrap(), 3, 2).unwrap();
        assert!(rep.note.unwrap().contains("no group"));
    }

    #[test]
    fn ent_certified_for_shift_and_finite_monoid() {
        let (a, g) = shift_on(5);
        let x = Subgroup::generated(&g, [e0(1)]).unwrap();
        let r = ent_estimate(&a, Some(&x), &[], &FolnerNet::boxes(a.monoid()).unwrap(), 4, 2).unwrap();
        assert!(r.certified);
        assert!((r.value - 5f64.ln()).abs() < 1e-12);
        let g = AbelianGroup::finite(vec![2, 3]).unwrap();
        let s = Monoid::cyclic(3);
        let m = Endomorphism::CongruentMatrix(vec![vec![1, 0], vec![0, 1]]);
        let a = action_from_generators(&s, &g, vec![m]).unwrap();
        let r = ent_estimate(&a, Some(&Subgroup::whole(&g)), &[], &FolnerNet::boxes(&s).unwrap(), 1, 1).unwrap();
        assert!(r.certified);
        assert!((r.value - 6f64.ln() / 3.0).abs() < 1e-12);
    }
}
