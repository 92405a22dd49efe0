use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashSet;

use super::disjoint::is_eps_disjoint;
use super::FolnerError;
use crate::monoid::{MElement, MSubset};

/// Tiles `F_j` with centre sets `P_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingWitness {
    pub tiles: Vec<MSubset>,
    pub centers: Vec<MSubset>,
}

impl TilingWitness {
    /// `P_j F_j` for each `j`.
    pub fn placed(&self) -> Result<Vec<MSubset>, FolnerError> {
        self.centers.iter().zip(&self.tiles).map(|(p, f)| Ok(p.product(f)?)).collect()
    }

    /// `b = Σ |P_j||F_j|`.
    pub fn mass(&self) -> u64 {
        self.centers.iter().zip(&self.tiles).map(|(p, f)| (p.len() * f.len()) as u64).sum()
    }
}

/// Clause-by-clause outcome of the ε-tiling conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingReport {
    pub d: u64,
    pub u: u64,
    pub b: u64,
    /// The sets `P_j F_j` are pairwise disjoint.
    pub disjoint: bool,
    /// `U ⊆ D`.
    pub contained: bool,
    /// `d - u < εd`, with margin `εd - (d - u)`.
    pub covers: bool,
    pub cover_margin: Ratio<i128>,
    /// `0 ≤ b - u < εb`, with margin `εb - (b - u)`.
    pub mass_close: bool,
    pub mass_margin: Ratio<i128>,
    /// Each family `(s F_j)_{s ∈ P_j}` is ε-disjoint.
    pub translates_eps_disjoint: bool,
    pub eps: Ratio<u64>,
}

impl TilingReport {
    pub fn passed(&self) -> bool {
        self.disjoint && self.contained && self.covers && self.mass_close
    }
}

fn to_i128(r: Ratio<u64>) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

pub fn check_tiling(d_set: &MSubset, w: &TilingWitness, eps: Ratio<u64>) -> Result<TilingReport, FolnerError> {
    if w.tiles.len() != w.centers.len() {
        return Err(FolnerError::InvalidWitness("tiles and centre sets differ in number".into()));
    }
    let placed = w.placed()?;
    let mut seen: FxHashSet<&MElement> = FxHashSet::default();
    let mut disjoint = true;
    for p in &placed {
        for x in p.iter() {
            if !seen.insert(x) {
                disjoint = false;
            }
        }
    }
    let contained = seen.iter().all(|x| d_set.contains(x));
    let d = d_set.len() as u64;
    let u = seen.len() as u64;
    let b = w.mass();
    let e = to_i128(eps);
    let int = |x: u64| Ratio::from_integer(x as i128);
    let cover_margin = e * int(d) - (int(d) - int(u));
    let mass_margin = e * int(b) - (int(b) - int(u));
    let mut translates_eps_disjoint = true;
    for (p, f) in w.centers.iter().zip(&w.tiles) {
        let family: Vec<MSubset> = p.iter().map(|s| f.left_translate(s)).collect();
        if is_eps_disjoint(&family, eps).is_none() {
            translates_eps_disjoint = false;
        }
    }
    Ok(TilingReport {
        d,
        u,
        b,
        disjoint,
        contained,
        covers: cover_margin > Ratio::zero(),
        cover_margin,
        mass_close: b >= u && mass_margin > Ratio::zero(),
        mass_margin,
        translates_eps_disjoint,
        eps,
    })
}

/// `u ≤ b` and `|1/d - 1/b| < 2ε/b` in exact arithmetic.
pub fn remtil_check(report: &TilingReport) -> Result<bool, FolnerError> {
    if !report.passed() {
        return Err(FolnerError::InvalidWitness("the witness does not pass check_tiling".into()));
    }
    if report.b == 0 || report.d == 0 {
        return Err(FolnerError::InvalidWitness("empty tiling".into()));
    }
    let (d, b) = (report.d as i128, report.b as i128);
    let lhs = (Ratio::new(1, d) - Ratio::new(1, b)).abs();
    let rhs = to_i128(report.eps) * Ratio::new(2, b);
    Ok(report.u <= report.b && lhs < rhs)
}

/// Places translates `s F_j` inside `D` without overlap, largest tiles
/// first, scanning `s` in the monoid's element order, until `|D ∖ U| < εd`.
/// The result is returned only if it passes [`check_tiling`].
pub fn greedy_tiler(d_set: &MSubset, tiles: &[MSubset], eps: Ratio<u64>) -> Result<Option<TilingWitness>, FolnerError> {
    let mut order: Vec<&MSubset> = tiles.iter().filter(|t| !t.is_empty()).collect();
    order.sort_by_key(|t| std::cmp::Reverse(t.len()));
    let monoid = d_set.monoid();
    let d = d_set.len() as u64;
    let target = |u: u64| to_i128(eps) * Ratio::from_integer(d as i128) > Ratio::from_integer((d - u) as i128);
    let mut covered: FxHashSet<MElement> = FxHashSet::default();
    let mut used_tiles = Vec::new();
    let mut centers = Vec::new();
    for tile in order {
        if target(covered.len() as u64) {
            break;
        }
        if tile.len() > d_set.len() {
            continue;
        }
        let mut p = Vec::new();
        for s in d_set.iter() {
            if covered.contains(s) {
                continue;
            }
            let translate: Vec<MElement> = tile.iter().map(|f| monoid.mul(s, f)).collect();
            if translate.iter().all(|x| d_set.contains(x) && !covered.contains(x)) {
                covered.extend(translate);
                p.push(s.clone());
                if target(covered.len() as u64) {
                    break;
                }
            }
        }
        if !p.is_empty() {
            used_tiles.push(tile.clone());
            centers.push(MSubset::new(monoid, p)?);
        }
    }
    if used_tiles.is_empty() {
        return Ok(None);
    }
    let w = TilingWitness { tiles: used_tiles, centers };
    let rep = check_tiling(d_set, &w, eps)?;
    Ok(rep.passed().then_some(w))
}

/// The boundary-ratio hypotheses of the filling construction, with
/// `η = ε^{2N}` for `N` tiles.
#[derive(Clone, Debug)]
pub struct FillingReport {
    pub eta: BigRational,
    /// `(j, k, |∂_{F_j}(F_k)|/|F_k|, holds)` for `j < k`.
    pub tile_pairs: Vec<(usize, usize, BigRational, bool)>,
    /// `(j, |∂_{F_j}(D)|/|D|, holds)`.
    pub target: Vec<(usize, BigRational, bool)>,
}

impl FillingReport {
    pub fn tiles_hold(&self) -> bool {
        self.tile_pairs.iter().all(|t| t.3)
    }
    pub fn target_holds(&self) -> bool {
        self.target.iter().all(|t| t.2)
    }
}

fn big(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn filling_hypotheses(tiles: &[MSubset], d_set: &MSubset, eps: Ratio<u64>) -> Result<FillingReport, FolnerError> {
    if tiles.iter().any(|t| t.is_empty()) || d_set.is_empty() {
        return Err(FolnerError::Unsupported("tiles and D must be nonempty".into()));
    }
    let n = tiles.len();
    let e = BigRational::new(BigInt::from(*eps.numer()), BigInt::from(*eps.denom()));
    let mut eta = BigRational::one();
    for _ in 0..2 * n {
        eta *= &e;
    }
    let mut tile_pairs = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            let r = big(tiles[k].boundary(&tiles[j]).len(), tiles[k].len());
            let bound = &eta / BigRational::from_integer(BigInt::from(tiles[j].len()));
            let holds = r <= bound;
            tile_pairs.push((j, k, r, holds));
        }
    }
    let target = tiles
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let r = big(d_set.boundary(t).len(), d_set.len());
            let holds = r <= eta;
            (j, r, holds)
        })
        .collect();
    Ok(FillingReport { eta, tile_pairs, target })
}
