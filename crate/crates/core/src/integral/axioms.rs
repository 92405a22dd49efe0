use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IntegralError, SetFunction};
use crate::monoid::{MElement, MSubset, Monoid};

const SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub witness: String,
}

/// Outcome of random checks of the four defining properties of `S(S)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub seed: u64,
    pub trials: usize,
    pub violations: Vec<AxiomViolation>,
    /// Largest value seen on a singleton.
    pub singleton_max: f64,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.singleton_max.is_finite()
    }
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[MElement], monoid: &Monoid, max: usize) -> MSubset {
    let k = rng.gen_range(1..=max.min(pool.len()));
    MSubset::new(monoid, pool.choose_multiple(rng, k).cloned()).expect("pool elements lie in the monoid")
}

/// Samples `F, F'` and `s` from the window of radius `window` and checks that
/// `f` is increasing, subadditive, left subinvariant and bounded on
/// singletons.
pub fn sample_axioms(
    f: &SetFunction,
    trials: usize,
    window: i64,
    max_size: usize,
    seed: u64,
) -> Result<AxiomReport, IntegralError> {
    let monoid = f.monoid().clone();
    let pool = monoid.window(window);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut singleton_max: f64 = 0.0;
    for _ in 0..trials.max(1) {
        let a = random_subset(&mut rng, &pool, &monoid, max_size);
        let b = random_subset(&mut rng, &pool, &monoid, max_size);
        let s = pool.choose(&mut rng).expect("window is nonempty").clone();
        let u = a.union(&b);
        let (fa, fb, fu) = (f.eval(&a)?, f.eval(&b)?, f.eval(&u)?);
        if fa > fu + SLACK {
            violations.push(AxiomViolation { axiom: "increasing", witness: format!("{a:?} ⊆ {u:?}: {fa} > {fu}") });
        }
        if fu > fa + fb + SLACK {
            violations.push(AxiomViolation {
                axiom: "subadditive",
                witness: format!("{a:?} ∪ {b:?}: {fu} > {fa} + {fb}"),
            });
        }
        let sa = a.left_translate(&s);
        let fsa = f.eval(&sa)?;
        if fsa > fa + SLACK {
            violations.push(AxiomViolation {
                axiom: "left subinvariant",
                witness: format!("s={s}, F={a:?}: {fsa} > {fa}"),
            });
        }
        singleton_max = singleton_max.max(f.eval(&MSubset::singleton(&monoid, s)?)?);
    }
    Ok(AxiomReport { seed, trials: trials.max(1), violations, singleton_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integral::Provenance;

    #[test]
    fn card_satisfies_axioms() {
        let z2 = Monoid::integers(2);
        let r = sample_axioms(&SetFunction::cardinality(&z2), 200, 3, 6, 7).unwrap();
        assert!(r.passed());
        assert_eq!(r.singleton_max, 1.0);
    }

    #[test]
    fn detects_superadditive_function() {
        let z = Monoid::integers(1);
        let sq = SetFunction::new(&z, Provenance::User("square".into()), |f| Ok((f.len() * f.len()) as f64)).unwrap();
        let r = sample_axioms(&sq, 200, 5, 5, 1).unwrap();
        assert!(r.violations.iter().any(|v| v.axiom == "subadditive"));
    }
}
