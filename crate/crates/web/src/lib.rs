//! Browser demo: trajectory entropy of `x ↦ kx` on ℤ, the defect of boxes in
//! ℤ²⋊ℤ, and greedy ε-tilings of a rectangle.

use num_rational::Ratio;
use wasm_bindgen::prelude::*;

use amenact::abelian::{ln_biguint, AbelianGroup, FiniteSubset};
use amenact::entropy::{action_from_generators, trajectory_size, Endomorphism, Seed};
use amenact::folner::{check_tiling, greedy_tiler, remtil_check, semidirect_defect};
use amenact::monoid::{MElement, MSubset, Monoid};

/// Largest trajectory the demo will build.
const ELEMENT_BUDGET: usize = 2_000_000;
const DEFECT_BUDGET: u64 = 20_000_000;

/// `ℓ(T_[0,n)(X))/n` for `n = 1, …` under `x ↦ kx`; stops at the first
/// index whose trajectory outgrows the budget or `i128`.
pub fn scalar_curve(k: i64, seed: &[i64], prefix: usize) -> Result<Vec<f64>, String> {
    if seed.is_empty() {
        return Err("the seed must be nonempty".into());
    }
    if prefix == 0 || prefix > 64 {
        return Err("prefix must lie in 1..=64".into());
    }
    let z = AbelianGroup::integers();
    let n = Monoid::naturals(1);
    let a = action_from_generators(&n, &z, vec![Endomorphism::scalar(&z, k as i128)]).map_err(|e| e.to_string())?;
    let x = FiniteSubset::integers(seed.iter().map(|&v| v as i128));
    let seed = Seed::Set(x);
    let mut out = Vec::with_capacity(prefix);
    for i in 1..=prefix {
        let f = MSubset::interval(&n, 0, i as i64).map_err(|e| e.to_string())?;
        match trajectory_size(&a, &f, &seed, ELEMENT_BUDGET) {
            Ok(c) => out.push(ln_biguint(&c) / i as f64),
            Err(e) if out.is_empty() => return Err(e.to_string()),
            Err(_) => break,
        }
    }
    Ok(out)
}

/// `δ_(n,m)(x)` for `n = lo..=hi`, with `m = n` when `m` is `None`.
pub fn defect_curve(lo: u64, hi: u64, m: Option<u64>, x: [i64; 3]) -> Result<Vec<f64>, String> {
    if lo == 0 || lo > hi || hi > 128 {
        return Err("need 1 <= lo <= hi <= 128".into());
    }
    let g = Monoid::heisenberg_like();
    (lo..=hi)
        .map(|n| {
            let d = semidirect_defect(&g, n, m.unwrap_or(n), &MElement(x.to_vec()), DEFECT_BUDGET).map_err(|e| e.to_string())?;
            Ok(*d.numer() as f64 / *d.denom() as f64)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TilingOutcome {
    /// `[tile, x, y, width, height]` per placed tile.
    pub rects: Vec<[i64; 5]>,
    pub covered: u64,
    pub total: u64,
    pub passed: bool,
    pub remainder_ok: bool,
}

/// Greedy ε-tiling of `[0, width) × [0, height)` by square tiles.
pub fn tile_rectangle(width: i64, height: i64, sides: &[i64], eps: Ratio<u64>) -> Result<Option<TilingOutcome>, String> {
    if width <= 0 || height <= 0 || width * height > 40_000 {
        return Err("the rectangle must be nonempty with at most 40000 cells".into());
    }
    if sides.is_empty() || sides.iter().any(|&s| s <= 0) {
        return Err("tile sides must be positive".into());
    }
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err("ε must lie in (0, 1)".into());
    }
    let z2 = Monoid::integers(2);
    let boxed = |a: i64, b: i64| MSubset::boxed(&z2, &[0, 0], &[a, b]).map_err(|e| e.to_string());
    let d = boxed(width, height)?;
    let mut sorted = sides.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let tiles = sorted.iter().map(|&s| boxed(s, s)).collect::<Result<Vec<_>, _>>()?;
    let Some(w) = greedy_tiler(&d, &tiles, eps).map_err(|e| e.to_string())? else {
        return Ok(None);
    };
    let report = check_tiling(&d, &w, eps).map_err(|e| e.to_string())?;
    let remainder_ok = report.passed() && remtil_check(&report).map_err(|e| e.to_string())?;
    let mut rects = Vec::new();
    for (i, (side, centers)) in sorted.iter().zip(&w.centers).enumerate() {
        for c in centers.iter() {
            rects.push([i as i64, c.0[0], c.0[1], *side, *side]);
        }
    }
    Ok(Some(TilingOutcome { rects, covered: w.mass(), total: d.len() as u64, passed: report.passed(), remainder_ok }))
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen(js_name = scalarCurve)]
pub fn scalar_curve_js(k: i32, seed: Vec<i32>, prefix: u32) -> Result<Vec<f64>, JsError> {
    let seed: Vec<i64> = seed.into_iter().map(i64::from).collect();
    scalar_curve(k.into(), &seed, prefix as usize).map_err(js)
}

/// `m = 0` means `m = n`.
#[wasm_bindgen(js_name = defectCurve)]
pub fn defect_curve_js(lo: u32, hi: u32, m: u32, x1: i32, x2: i32, c: i32) -> Result<Vec<f64>, JsError> {
    defect_curve(lo.into(), hi.into(), (m > 0).then_some(m.into()), [x1.into(), x2.into(), c.into()]).map_err(js)
}

#[wasm_bindgen]
pub struct Tiling {
    inner: TilingOutcome,
}

#[wasm_bindgen]
impl Tiling {
    /// Flattened `[tile, x, y, width, height]` rows.
    #[wasm_bindgen(getter)]
    pub fn rects(&self) -> Vec<i32> {
        self.inner.rects.iter().flat_map(|r| r.iter().map(|&v| v as i32)).collect()
    }

    #[wasm_bindgen(getter)]
    pub fn covered(&self) -> u32 {
        self.inner.covered as u32
    }

    #[wasm_bindgen(getter)]
    pub fn total(&self) -> u32 {
        self.inner.total as u32
    }

    #[wasm_bindgen(getter)]
    pub fn passed(&self) -> bool {
        self.inner.passed
    }

    #[wasm_bindgen(getter, js_name = remainderOk)]
    pub fn remainder_ok(&self) -> bool {
        self.inner.remainder_ok
    }
}

/// `undefined` when the greedy tiler finds no witness.
#[wasm_bindgen(js_name = tileRectangle)]
pub fn tile_rectangle_js(width: u32, height: u32, sides: Vec<u32>, eps_num: u32, eps_den: u32) -> Result<Option<Tiling>, JsError> {
    if eps_den == 0 {
        return Err(js("ε needs a positive denominator".into()));
    }
    let sides: Vec<i64> = sides.into_iter().map(i64::from).collect();
    let out = tile_rectangle(width.into(), height.into(), &sides, Ratio::new(eps_num.into(), eps_den.into())).map_err(js)?;
    Ok(out.map(|inner| Tiling { inner }))
}
