use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::IntegralError;
use crate::monoid::{MElement, MSubset, Monoid, MonoidHom};

type Evaluator = dyn Fn(&MSubset) -> Result<f64, IntegralError> + Send + Sync;

/// Where a set function comes from; carried into reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Cardinality,
    ImageCardinality,
    TrajectoryLength,
    CoverCount,
    Constant,
    Shifted(Box<Provenance>),
    Theta(Box<Provenance>),
    User(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cardinality => write!(f, "card"),
            Provenance::ImageCardinality => write!(f, "card_pi"),
            Provenance::TrajectoryLength => write!(f, "trajectory-length"),
            Provenance::CoverCount => write!(f, "cover-count"),
            Provenance::Constant => write!(f, "constant"),
            Provenance::Shifted(p) => write!(f, "shifted({p})"),
            Provenance::Theta(p) => write!(f, "theta({p})"),
            Provenance::User(s) => write!(f, "user:{s}"),
        }
    }
}

/// A memoized function `P_fin(S) → ℝ≥0`.
#[derive(Clone)]
pub struct SetFunction {
    monoid: Monoid,
    eval: Arc<Evaluator>,
    cache: Arc<Mutex<HashMap<Vec<MElement>, f64>>>,
    provenance: Provenance,
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFunction({} on {})", self.provenance, self.monoid)
    }
}

impl SetFunction {
    /// Wraps an evaluator. It is probed on `{1}` and on a few small windows;
    /// a negative value there is rejected immediately.
    pub fn new<G>(monoid: &Monoid, provenance: Provenance, eval: G) -> Result<Self, IntegralError>
    where
        G: Fn(&MSubset) -> Result<f64, IntegralError> + Send + Sync + 'static,
    {
        let f = SetFunction {
            monoid: monoid.clone(),
            eval: Arc::new(eval),
            cache: Arc::new(Mutex::new(HashMap::new())),
            provenance,
        };
        let mut probes = vec![MSubset::identity(monoid)];
        for r in 0..2 {
            let w = monoid.window(r);
            if w.len() <= 64 {
                probes.push(MSubset::new(monoid, w)?);
            }
        }
        for p in &probes {
            f.eval(p)?;
        }
        Ok(f)
    }

    pub fn cardinality(monoid: &Monoid) -> Self {
        Self::new(monoid, Provenance::Cardinality, |f| Ok(f.len() as f64)).expect("cardinality is non-negative")
    }

    pub fn constant(monoid: &Monoid, a: f64) -> Result<Self, IntegralError> {
        Self::new(monoid, Provenance::Constant, move |_| Ok(a))
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn eval(&self, f: &MSubset) -> Result<f64, IntegralError> {
        if f.is_empty() {
            return Err(IntegralError::EmptySet);
        }
        let key: Vec<MElement> = f.iter().cloned().collect();
        if let Some(&v) = self.cache.lock().expect("set function cache poisoned").get(&key) {
            return Ok(v);
        }
        let v = (self.eval)(f)?;
        if !(v >= 0.0) {
            return Err(IntegralError::Negative { set: format!("{f:?}"), value: v });
        }
        self.cache.lock().expect("set function cache poisoned").insert(key, v);
        Ok(v)
    }

    /// `f^F: X ↦ f(XF)`.
    pub fn shifted(&self, e: &MSubset) -> Result<SetFunction, IntegralError> {
        let inner = self.clone();
        let e = e.clone();
        Self::new(&self.monoid, Provenance::Shifted(Box::new(self.provenance.clone())), move |x| {
            inner.eval(&x.product(&e)?)
        })
    }

    /// `f + g` on the same monoid.
    pub fn sum(&self, other: &SetFunction) -> Result<SetFunction, IntegralError> {
        let (a, b) = (self.clone(), other.clone());
        Self::new(&self.monoid, Provenance::User(format!("{}+{}", a.provenance, b.provenance)), move |x| {
            Ok(a.eval(x)? + b.eval(x)?)
        })
    }

    /// `f ∘ π`, a function on the source of `π`.
    pub fn pulled_back(&self, hom: &MonoidHom) -> Result<SetFunction, IntegralError> {
        let inner = self.clone();
        let h = hom.clone();
        let target = self.monoid.clone();
        Self::new(hom.source(), Provenance::User(format!("{}∘π", self.provenance)), move |x| {
            inner.eval(&MSubset::new(&target, h.image(x))?)
        })
    }
}

/// `card_π: F ↦ |π(F)|`.
pub fn card_pi(hom: &MonoidHom) -> SetFunction {
    let h = hom.clone();
    SetFunction::new(hom.source(), Provenance::ImageCardinality, move |f| Ok(h.image(f).len() as f64))
        .expect("cardinalities are non-negative")
}
