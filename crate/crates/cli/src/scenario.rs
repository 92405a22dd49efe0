//! Scenario files: TOML documents with a `kind` tag. Every table rejects
//! unknown keys.

use num_rational::Ratio;
use serde::Deserialize;

use amenact::abelian::{AbelianGroup, FiniteSubset, GroupElement, Subgroup};
use amenact::entropy::{action_from_generators, restriction, Action, Endomorphism, Seed};
use amenact::folner::{CanonicalNet, FolnerNet};
use amenact::monoid::{ratio_from_f64, CoordKind, CoordMap, MElement, MSubset, Monoid, MonoidKind};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    FolnerVerify(FolnerVerify),
    CanonicalNet(CanonicalNetScenario),
    Tiling(Tiling),
    SemidirectDefect(SemidirectDefect),
    Integral(IntegralScenario),
    Fubini(Fubini),
    Entropy(EntropyScenario),
    Addition(Addition),
    Bridge(Bridge),
    DualityProps(DualityProps),
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::FolnerVerify(_) => "folner-verify",
            Scenario::CanonicalNet(_) => "canonical-net",
            Scenario::Tiling(_) => "tiling",
            Scenario::SemidirectDefect(_) => "semidirect-defect",
            Scenario::Integral(_) => "integral",
            Scenario::Fubini(_) => "fubini",
            Scenario::Entropy(_) => "entropy",
            Scenario::Addition(_) => "addition",
            Scenario::Bridge(_) => "bridge",
            Scenario::DualityProps(_) => "duality-props",
        }
    }

    pub fn title(&self) -> Option<&str> {
        match self {
            Scenario::FolnerVerify(s) => s.title.as_deref(),
            Scenario::CanonicalNet(s) => s.title.as_deref(),
            Scenario::Tiling(s) => s.title.as_deref(),
            Scenario::SemidirectDefect(s) => s.title.as_deref(),
            Scenario::Integral(s) => s.title.as_deref(),
            Scenario::Fubini(s) => s.title.as_deref(),
            Scenario::Entropy(s) => s.title.as_deref(),
            Scenario::Addition(s) => s.title.as_deref(),
            Scenario::Bridge(s) => s.title.as_deref(),
            Scenario::DualityProps(s) => s.title.as_deref(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FolnerVerify {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    #[serde(default)]
    pub net: NetSpec,
    pub test: Vec<MElementSpec>,
    pub prefix: Option<usize>,
    #[serde(default)]
    pub plot: bool,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalNetScenario {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    /// Defaults to the generators together with the identity.
    pub e: Option<Vec<MElementSpec>>,
    pub prefix: Option<usize>,
    pub budget: Option<usize>,
    #[serde(default)]
    pub plot: bool,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tiling {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    /// Side lengths of `D = [0, a_1) × … × [0, a_d)`.
    pub domain: Vec<i64>,
    /// Side lengths of the box tiles, largest first.
    pub tiles: Vec<Vec<i64>>,
    pub eps: Real,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectDefect {
    pub title: Option<String>,
    /// Defaults to `[[1, 1], [0, 1]]`.
    pub matrix: Option<[[i64; 2]; 2]>,
    /// Inclusive range of `n`.
    pub n: [u64; 2],
    /// Fixed `m`; `m = n` when absent.
    pub m: Option<u64>,
    pub x: [i64; 3],
    pub budget: Option<usize>,
    #[serde(default)]
    pub plot: bool,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralScenario {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    pub function: FunctionSpec,
    #[serde(default)]
    pub net: NetSpec,
    pub prefix: Option<usize>,
    #[serde(default)]
    pub plot: bool,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fubini {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    pub group: GroupSpec,
    pub generators: Vec<EndoSpec>,
    pub seed: SeedSpec,
    /// `π` keeps the first `project_first` coordinates.
    pub project_first: usize,
    #[serde(default)]
    pub section: SectionSpec,
    pub prefix: Option<usize>,
    pub budget: Option<usize>,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyScenario {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    pub group: GroupSpec,
    pub generators: Vec<EndoSpec>,
    pub restrict: Option<RestrictSpec>,
    pub seed: SeedSpec,
    #[serde(default)]
    pub net: NetSpec,
    pub prefix: Option<usize>,
    pub budget: Option<usize>,
    #[serde(default)]
    pub plot: bool,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Addition {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    pub group: GroupSpec,
    pub generators: Vec<EndoSpec>,
    /// The invariant subgroup `B`.
    pub sub: SeedSpec,
    /// Subgroup seed `X` for the whole group.
    pub seed: SeedSpec,
    #[serde(default)]
    pub net: NetSpec,
    pub prefix: Option<usize>,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bridge {
    pub title: Option<String>,
    pub monoid: MonoidSpec,
    pub group: GroupSpec,
    pub generators: Vec<EndoSpec>,
    pub seeds: Vec<SeedSpec>,
    #[serde(default)]
    pub net: NetSpec,
    pub prefix: Option<usize>,
    pub budget: Option<usize>,
    #[serde(default)]
    pub plot: bool,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualityProps {
    pub title: Option<String>,
    pub max_order: u64,
    #[serde(default = "default_subgroup_cap")]
    pub subgroup_cap: usize,
    #[serde(default = "default_pair_cap")]
    pub pair_cap: usize,
    /// Random endomorphisms per group for the trajectory/cotrajectory check.
    #[serde(default)]
    pub endomorphisms: usize,
    /// Longest interval `[0, k)` for that check.
    #[serde(default = "default_kmax")]
    pub kmax: usize,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default)]
    pub expect: Expect,
}

fn default_subgroup_cap() -> usize {
    1000
}

fn default_pair_cap() -> usize {
    50
}

fn default_kmax() -> usize {
    4
}

/// Assertions. Each kind reads a subset; setting any other key is a schema
/// error.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    /// Every ratio equals this value.
    pub ratio: Option<Real>,
    /// Exact per-index counts.
    pub counts: Option<Vec<u64>>,
    pub tail_at_most: Option<Real>,
    pub tail_near: Option<Real>,
    pub min: Option<Real>,
    pub max: Option<Real>,
    pub difference_at_most: Option<Real>,
    pub exact: Option<bool>,
    pub non_increasing: Option<bool>,
    pub sides: Option<Vec<u64>>,
    pub tolerance: Option<f64>,
}

impl Expect {
    pub fn allow(&self, kind: &str, allowed: &[&str]) -> Result<(), CliError> {
        let set: [(&str, bool); 11] = [
            ("ratio", self.ratio.is_some()),
            ("counts", self.counts.is_some()),
            ("tail_at_most", self.tail_at_most.is_some()),
            ("tail_near", self.tail_near.is_some()),
            ("min", self.min.is_some()),
            ("max", self.max.is_some()),
            ("difference_at_most", self.difference_at_most.is_some()),
            ("exact", self.exact.is_some()),
            ("non_increasing", self.non_increasing.is_some()),
            ("sides", self.sides.is_some()),
            ("tolerance", self.tolerance.is_some()),
        ];
        for (key, present) in set {
            if present && key != "tolerance" && !allowed.contains(&key) {
                return Err(CliError::Schema(format!("expect.{key} does not apply to {kind} scenarios")));
            }
        }
        Ok(())
    }

    pub fn tol(&self) -> f64 {
        self.tolerance.unwrap_or(1e-9)
    }
}

/// A real number: a TOML number or a string such as `"ln 2"`, `"2 ln 3"`,
/// `"ln 2 / 3"` or `"1/4"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Real {
    Number(f64),
    Text(String),
}

impl Real {
    pub fn value(&self) -> Result<f64, CliError> {
        match self {
            Real::Number(x) => Ok(*x),
            Real::Text(s) => parse_real(s).ok_or_else(|| CliError::Schema(format!("cannot read {s:?} as a number"))),
        }
    }

    /// Exact when written as `p/q` or an integer.
    pub fn ratio(&self) -> Result<Ratio<u64>, CliError> {
        if let Real::Text(s) = self {
            if let Some((p, q)) = s.split_once('/') {
                if let (Ok(p), Ok(q)) = (p.trim().parse::<u64>(), q.trim().parse::<u64>()) {
                    if q > 0 {
                        return Ok(Ratio::new(p, q));
                    }
                }
            }
        }
        let x = self.value()?;
        if !(0.0..1.0).contains(&x) {
            return Err(CliError::Schema(format!("ε must lie in (0, 1), got {x}")));
        }
        Ok(ratio_from_f64(x))
    }
}

fn parse_real(s: &str) -> Option<f64> {
    if let Some((a, b)) = s.rsplit_once('/') {
        return Some(parse_real(a)? / parse_real(b)?);
    }
    let cleaned = s.replace("ln(", "ln ").replace([')', '*'], " ");
    let mut tokens = cleaned.split_whitespace();
    let mut acc = 1.0;
    let mut any = false;
    while let Some(t) = tokens.next() {
        any = true;
        acc *= if t == "ln" || t == "log" { tokens.next()?.parse::<f64>().ok()?.ln() } else { t.parse::<f64>().ok()? };
    }
    any.then_some(acc)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MonoidSpec {
    /// `"N"`, `"Z^2"`, `"N x Z"`, `"Z/2 x Z"`, `"1"`.
    Text(String),
    Semidirect {
        semidirect: [[i64; 2]; 2],
    },
}

fn parse_power(tok: &str) -> Result<(String, usize), CliError> {
    match tok.split_once('^') {
        Some((b, e)) => Ok((b.trim().to_string(), e.trim().parse().map_err(|_| CliError::Schema(format!("bad exponent in {tok:?}")))?)),
        None => Ok((tok.to_string(), 1)),
    }
}

fn factors_of(text: &str) -> Vec<String> {
    text.split(['x', '×']).map(|t| t.trim().replace('ℕ', "N").replace('ℤ', "Z")).collect()
}

impl MonoidSpec {
    pub fn build(&self) -> Result<Monoid, CliError> {
        match self {
            MonoidSpec::Semidirect { semidirect } => Ok(Monoid::semidirect(*semidirect)?),
            MonoidSpec::Text(t) if t.trim() == "1" => Ok(Monoid::trivial()),
            MonoidSpec::Text(t) => {
                let mut coords = Vec::new();
                for tok in factors_of(t) {
                    let (base, k) = parse_power(&tok)?;
                    let c = match base.as_str() {
                        "N" => CoordKind::Nat,
                        "Z" => CoordKind::Int,
                        b => match b.strip_prefix("Z/").and_then(|n| n.trim().parse::<u64>().ok()) {
                            Some(n) if n >= 1 => CoordKind::Cyclic(n),
                            _ => return Err(CliError::Schema(format!("unknown monoid factor {tok:?}"))),
                        },
                    };
                    coords.extend(std::iter::repeat_n(c, k));
                }
                Ok(Monoid::commutative(coords))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `"Z"`, `"Z^2"`, `"Z/2 x Z/4"`, `"0"`.
    Text(String),
    /// `⊕_{over} (ℤ/n_1 × …)`; `over` defaults to the scenario monoid.
    Sum {
        sum: Vec<u64>,
        over: Option<MonoidSpec>,
    },
}

impl GroupSpec {
    pub fn build(&self, monoid: &Monoid) -> Result<AbelianGroup, CliError> {
        match self {
            GroupSpec::Sum { sum, over } => {
                let index = match over {
                    Some(m) => m.build()?,
                    None => monoid.clone(),
                };
                Ok(AbelianGroup::direct_sum(sum.clone(), index)?)
            }
            GroupSpec::Text(t) if t.trim() == "0" => Ok(AbelianGroup::finite(vec![])?),
            GroupSpec::Text(t) => {
                let toks = factors_of(t);
                let mut finite = Vec::new();
                let mut rank = 0;
                for tok in &toks {
                    let (base, k) = parse_power(tok)?;
                    if base == "Z" {
                        rank += k;
                    } else if let Some(n) = base.strip_prefix("Z/").and_then(|n| n.trim().parse::<u64>().ok()) {
                        finite.extend(std::iter::repeat_n(n, k));
                    } else {
                        return Err(CliError::Schema(format!("unknown group factor {tok:?}")));
                    }
                }
                match (rank, finite.is_empty()) {
                    (0, _) => Ok(AbelianGroup::finite(finite)?),
                    (r, true) => Ok(AbelianGroup::FreeZ { rank: r }),
                    _ => Err(CliError::Schema(format!("mixed free and torsion factors are not supported: {t:?}"))),
                }
            }
        }
    }
}

/// An endomorphism: `"identity"`, `{ scalar = k }`, `{ matrix = [[…]] }`
/// or `{ shift = [offset] }` / `{ shift = { by = [offset], base = [[…]] } }`.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum EndoSpec {
    Identity,
    Scalar(i64),
    Matrix(Vec<Vec<i64>>),
    Shift(ShiftSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ShiftSpec {
    Offset(Vec<i64>),
    Full {
        by: Vec<i64>,
        base: Vec<Vec<i64>>,
    },
}

impl EndoSpec {
    pub fn build(&self, group: &AbelianGroup) -> Result<Endomorphism, CliError> {
        let e = match self {
            EndoSpec::Identity => Endomorphism::identity(group),
            EndoSpec::Scalar(k) => Endomorphism::scalar(group, *k as i128),
            EndoSpec::Matrix(m) => match group {
                AbelianGroup::FreeZ { .. } => Endomorphism::IntegerMatrix(wide(m)),
                AbelianGroup::FiniteProduct { .. } => Endomorphism::CongruentMatrix(wide(m)),
                AbelianGroup::DirectSum { .. } => {
                    return Err(CliError::Schema("matrices act on ℤ^r or finite groups; use shift on direct sums".into()))
                }
            },
            EndoSpec::Shift(ShiftSpec::Offset(o)) => Endomorphism::shift(group, o.clone())?,
            EndoSpec::Shift(ShiftSpec::Full { by, base }) => Endomorphism::Shift { offset: by.clone(), base: wide(base) },
        };
        e.validate(group)?;
        Ok(e)
    }
}

// TOML integers are 64-bit.
fn wide(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

pub fn build_action(monoid: &Monoid, group: &AbelianGroup, gens: &[EndoSpec]) -> Result<Action, CliError> {
    let gens = gens.iter().map(|g| g.build(group)).collect::<Result<Vec<_>, _>>()?;
    Ok(action_from_generators(monoid, group, gens)?)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictSpec {
    pub monoid: MonoidSpec,
    /// Image of each coordinate generator.
    pub embed: Vec<Vec<i64>>,
}

impl RestrictSpec {
    pub fn apply(&self, alpha: &Action) -> Result<Action, CliError> {
        Ok(restriction(alpha, &self.monoid.build()?, &self.embed)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MElementSpec {
    Scalar(i64),
    Coords(Vec<i64>),
}

impl MElementSpec {
    pub fn build(&self, monoid: &Monoid) -> Result<MElement, CliError> {
        let s = match self {
            MElementSpec::Scalar(x) => MElement(vec![*x]),
            MElementSpec::Coords(v) => MElement(v.clone()),
        };
        monoid.check(&s)?;
        Ok(s)
    }
}

pub fn build_msubset(monoid: &Monoid, elems: &[MElementSpec]) -> Result<MSubset, CliError> {
    let v = elems.iter().map(|e| e.build(monoid)).collect::<Result<Vec<_>, _>>()?;
    Ok(MSubset::new(monoid, v)?)
}

/// A group element: an integer, a coordinate vector, or a list of
/// `{ at = [index], value = [...] }` entries for direct sums.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Scalar(i64),
    Dense(Vec<i64>),
    Sparse(Vec<SparseEntry>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparseEntry {
    pub at: Vec<i64>,
    pub value: Vec<i64>,
}

impl ElementSpec {
    pub fn build(&self, group: &AbelianGroup) -> Result<GroupElement, CliError> {
        let raw = match (self, group) {
            (ElementSpec::Dense(v), AbelianGroup::DirectSum { .. }) if v.is_empty() => group.zero(),
            (ElementSpec::Sparse(v), AbelianGroup::DirectSum { .. }) => {
                GroupElement::sparse(v.iter().map(|e| (MElement(e.at.clone()), e.value.clone())))
            }
            (ElementSpec::Scalar(x), AbelianGroup::DirectSum { .. }) => {
                return Err(CliError::Schema(format!("direct-sum elements are lists of {{ at, value }} entries, got {x}")))
            }
            (ElementSpec::Dense(_), AbelianGroup::DirectSum { .. }) => {
                return Err(CliError::Schema("direct-sum elements are lists of { at, value } entries".into()))
            }
            (ElementSpec::Scalar(x), _) => GroupElement::dense(vec![*x as i128]),
            (ElementSpec::Dense(v), _) => GroupElement::dense(v.iter().map(|&x| x as i128).collect()),
            (ElementSpec::Sparse(_), _) => return Err(CliError::Schema(format!("sparse elements need a direct sum, not {group}"))),
        };
        Ok(group.normalize(raw)?)
    }
}

/// A finite seed or a subgroup.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SeedSpec {
    Set(Vec<ElementSpec>),
    Subgroup(Vec<ElementSpec>),
    Multiple(i64),
    PerCoordinate(Vec<Vec<i64>>),
    Whole,
    Trivial,
}

impl SeedSpec {
    pub fn seed(&self, group: &AbelianGroup) -> Result<Seed, CliError> {
        match self {
            SeedSpec::Set(v) => {
                let elems = v.iter().map(|e| e.build(group)).collect::<Result<Vec<_>, _>>()?;
                Ok(Seed::Set(FiniteSubset::new(group, elems)?))
            }
            other => Ok(Seed::Subgroup(other.subgroup(group)?)),
        }
    }

    pub fn set(&self, group: &AbelianGroup) -> Result<FiniteSubset, CliError> {
        match self.seed(group)? {
            Seed::Set(x) => Ok(x),
            Seed::Subgroup(_) => Err(CliError::Schema("this scenario needs a finite set seed { set = [...] }".into())),
        }
    }

    pub fn subgroup(&self, group: &AbelianGroup) -> Result<Subgroup, CliError> {
        Ok(match self {
            SeedSpec::Set(_) => return Err(CliError::Schema("this scenario needs a subgroup, not a set seed".into())),
            SeedSpec::Subgroup(v) => Subgroup::generated(group, v.iter().map(|e| e.build(group)).collect::<Result<Vec<_>, _>>()?)?,
            SeedSpec::Multiple(k) => Subgroup::multiple(group, *k),
            SeedSpec::PerCoordinate(g) => Subgroup::per_coordinate(group, g)?,
            SeedSpec::Whole => Subgroup::whole(group),
            SeedSpec::Trivial => Subgroup::trivial(group),
        })
    }
}

/// `"boxes"`, `{ translated = [elements] }`, `{ canonical = [elements] }`
/// or `{ semidirect-boxes = { factor, power } }`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum NetSpec {
    #[default]
    Boxes,
    Translated(Vec<MElementSpec>),
    Canonical(Vec<MElementSpec>),
    SemidirectBoxes {
        factor: u64,
        power: u32,
    },
}

impl NetSpec {
    pub fn build(&self, monoid: &Monoid, budget: Option<usize>) -> Result<FolnerNet, CliError> {
        Ok(match self {
            NetSpec::Boxes => FolnerNet::boxes(monoid)?,
            NetSpec::Translated(e) => FolnerNet::boxes(monoid)?.translated(&build_msubset(monoid, e)?)?,
            NetSpec::Canonical(e) => {
                let net = match budget {
                    Some(b) => CanonicalNet::with_budget(monoid, b as u64)?,
                    None => CanonicalNet::new(monoid)?,
                };
                net.chain_for(&build_msubset(monoid, e)?)?
            }
            NetSpec::SemidirectBoxes { factor, power } => FolnerNet::semidirect_boxes(monoid, *factor, *power)?,
        })
    }
}

/// `"card"`, `{ constant = a }` or `{ card-pi = ["drop", "keep", "mod 5"] }`.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    Card,
    Constant(f64),
    CardPi(Vec<String>),
}

pub fn coord_maps(spec: &[String]) -> Result<Vec<CoordMap>, CliError> {
    spec.iter()
        .map(|s| match s.trim() {
            "keep" => Ok(CoordMap::Keep),
            "drop" => Ok(CoordMap::Drop),
            t => t
                .strip_prefix("mod")
                .and_then(|n| n.trim().parse::<u64>().ok())
                .filter(|&n| n >= 1)
                .map(CoordMap::Reduce)
                .ok_or_else(|| CliError::Schema(format!("coordinate map {t:?} is not keep, drop or \"mod n\""))),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionSpec {
    #[default]
    Minimal,
    Identity,
}

pub fn commutative(monoid: &Monoid, kind: &str) -> Result<(), CliError> {
    match monoid.kind() {
        MonoidKind::Commutative(_) => Ok(()),
        _ => Err(CliError::Schema(format!("{kind} scenarios need a commutative monoid, got {monoid}"))),
    }
}
