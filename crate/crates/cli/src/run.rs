//! One runner per scenario kind. Runners only compute; `main` writes files.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use amenact::abelian::{groups_up_to, AbelianGroup, GroupElement, Order, Subgroup};
use amenact::duality::{annihilator, bridge_check, ct_check_prefixes, DEFAULT_DUAL_BOUND};
use amenact::entropy::{action_from_generators, addition_check, f_x, h_alg_estimate, Endomorphism, Seed, DEFAULT_ELEMENT_BUDGET};
use amenact::folner::{
    check_tiling, filling_hypotheses, greedy_tiler, remtil_check, semidirect_defect, verify_folner, CanonicalNet,
};
use amenact::integral::{card_pi, fubini_check, integral, SetFunction};
use amenact::monoid::{MElement, MSubset, Monoid, MonoidHom, Section, SectionRule};

use crate::error::CliError;
use crate::scenario::*;
use crate::svg::ratio_plot;

pub struct Options {
    pub prefix: Option<usize>,
    pub budget: Option<usize>,
    pub log_base: f64,
}

impl Options {
    /// A natural-log quantity in the display base.
    fn log(&self, x: f64) -> String {
        format!("{:.6}", x / self.log_base.ln())
    }

    fn prefix(&self, scenario: Option<usize>, default: usize) -> Result<usize, CliError> {
        match self.prefix.or(scenario).unwrap_or(default) {
            0 => Err(CliError::Schema("prefix must be positive".into())),
            p => Ok(p),
        }
    }

    fn budget(&self, scenario: Option<usize>) -> Option<usize> {
        self.budget.or(scenario)
    }
}

#[derive(Default)]
pub struct Report {
    pub files: Vec<(String, String)>,
    pub lines: Vec<String>,
    /// The first failing check, with its row.
    pub failure: Option<String>,
    pub budget: Option<String>,
}

impl Report {
    fn file(&mut self, name: &str, contents: String) {
        self.files.push((name.to_string(), contents));
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn fail(&mut self, s: impl Into<String>) {
        self.failure.get_or_insert(s.into());
    }

    fn plot(&mut self, on: bool, title: &str, y_label: &str, points: &[(f64, f64)]) {
        if on && !points.is_empty() {
            self.file("plot.svg", ratio_plot(title, y_label, points));
        }
    }
}

pub fn run(s: &Scenario, o: &Options) -> Result<Report, CliError> {
    match s {
        Scenario::FolnerVerify(s) => folner_verify(s, o),
        Scenario::CanonicalNet(s) => canonical(s, o),
        Scenario::Tiling(s) => tiling(s),
        Scenario::SemidirectDefect(s) => semidirect(s, o),
        Scenario::Integral(s) => integral_run(s, o),
        Scenario::Fubini(s) => fubini(s, o),
        Scenario::Entropy(s) => entropy(s, o),
        Scenario::Addition(s) => addition(s, o),
        Scenario::Bridge(s) => bridge(s, o),
        Scenario::DualityProps(s) => duality(s),
    }
}

fn ratio_f(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `ratio`, `tail_at_most` and `tail_near` over `(label, ratio)` rows.
fn check_rows(rep: &mut Report, rows: &[(String, f64)], e: &Expect) -> Result<(), CliError> {
    let tol = e.tol();
    if let Some(r) = &e.ratio {
        let v = r.value()?;
        if let Some((l, x)) = rows.iter().find(|(_, x)| (x - v).abs() > tol) {
            rep.fail(format!("index {l}: ratio {x:.12} is not within {tol:e} of {v:.12}"));
        }
    }
    let Some((l, tail)) = rows.last() else {
        return Ok(());
    };
    if let Some(r) = &e.tail_at_most {
        let v = r.value()?;
        if *tail > v {
            rep.fail(format!("index {l}: tail {tail:.12} exceeds {v:.12}"));
        }
    }
    if let Some(r) = &e.tail_near {
        let v = r.value()?;
        if (tail - v).abs() > tol {
            rep.fail(format!("index {l}: tail {tail:.12} is not within {tol:e} of {v:.12}"));
        }
    }
    Ok(())
}

fn folner_verify(s: &FolnerVerify, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("folner-verify", &["tail_at_most", "non_increasing"])?;
    let m = s.monoid.build()?;
    let net = s.net.build(&m, o.budget)?;
    let test = build_msubset(&m, &s.test)?;
    let prefix = o.prefix(s.prefix, 32)?.max(2);
    let d = verify_folner(&net, &test, prefix)?;
    let mut rep = Report::default();
    rep.file("defects.csv", d.to_csv());
    rep.line(format!("net {}, test set of {} elements, {prefix} indices", net.describe(), test.len()));
    rep.line(format!("max defect at the last index: {:.12}", d.tail()));
    rep.line(format!("per-index maximum non-increasing over the second half: {}", d.tail_non_increasing));
    let rows: Vec<(String, f64)> = d.max_per_index.iter().map(|(i, r)| (net.label(*i), ratio_f(*r))).collect();
    check_rows(&mut rep, &rows, &s.expect)?;
    if s.expect.non_increasing == Some(true) && !d.tail_non_increasing {
        rep.fail("per-index maximum defect increases somewhere in the second half");
    }
    let pts: Vec<(f64, f64)> = d.max_per_index.iter().map(|(i, r)| (*i as f64, ratio_f(*r))).collect();
    rep.plot(s.plot, &format!("Følner defect of {}", net.describe()), "max |Fs △ F|/|F|", &pts);
    Ok(rep)
}

fn canonical(s: &CanonicalNetScenario, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("canonical-net", &["sides"])?;
    let m = s.monoid.build()?;
    commutative(&m, "canonical-net")?;
    let e = match &s.e {
        Some(v) => build_msubset(&m, v)?,
        None => {
            let mut g = m.generators();
            g.push(m.identity());
            MSubset::new(&m, g)?
        }
    };
    let net = match o.budget(s.budget) {
        Some(b) => CanonicalNet::with_budget(&m, b as u64)?,
        None => CanonicalNet::new(&m)?,
    };
    let prefix = o.prefix(s.prefix, 16)?;
    let mut rep = Report::default();
    let mut csv = String::from("n,side,|F|,defect\n");
    let mut sides = Vec::new();
    let mut pts = Vec::new();
    for n in 1..=prefix as u64 {
        let side = net.side(&e, n)?;
        let f = net.get(&e, n)?;
        let mut defect = Ratio::from_integer(0u64);
        for x in e.iter() {
            defect = defect.max(f.sym_diff_ratio_exact(x)?);
        }
        csv.push_str(&format!("{n},{side},{},{:.12}\n", f.len(), ratio_f(defect)));
        if defect > Ratio::new(1, n) {
            rep.fail(format!("n={n}: defect {defect} exceeds 1/{n}"));
        }
        sides.push(side);
        pts.push((n as f64, ratio_f(defect)));
    }
    if let Some(want) = &s.expect.sides {
        if let Some((i, (a, b))) = sides.iter().zip(want).enumerate().find(|(_, (a, b))| a != b) {
            rep.fail(format!("n={}: side {a}, expected {b}", i + 1));
        }
    }
    rep.line(format!("E = {} elements of {m}; sides {sides:?}", e.len()));
    rep.file("canonical.csv", csv);
    rep.plot(s.plot, &format!("canonical boxes of {m}"), "max |Fs △ F|/|F|", &pts);
    Ok(rep)
}

fn tiling(s: &Tiling) -> Result<Report, CliError> {
    s.expect.allow("tiling", &[])?;
    let m = s.monoid.build()?;
    commutative(&m, "tiling")?;
    let d = m.rank();
    let boxed = |sides: &[i64]| -> Result<MSubset, CliError> {
        if sides.len() != d {
            return Err(CliError::Schema(format!("box {sides:?} has {} sides in a monoid of rank {d}", sides.len())));
        }
        Ok(MSubset::boxed(&m, &vec![0; d], sides)?)
    };
    let dom = boxed(&s.domain)?;
    let tiles = s.tiles.iter().map(|t| boxed(t)).collect::<Result<Vec<_>, _>>()?;
    let eps = s.eps.ratio()?;
    let mut rep = Report::default();
    let Some(w) = greedy_tiler(&dom, &tiles, eps)? else {
        rep.fail("the greedy tiler found no witness");
        return Ok(rep);
    };
    let t = check_tiling(&dom, &w, eps)?;
    let remtil = remtil_check(&t)?;
    let fill = filling_hypotheses(&tiles, &dom, eps)?;
    let mut csv = String::from("index,|F|,element,ratio\n");
    for (i, (tile, centers)) in w.tiles.iter().zip(&w.centers).enumerate() {
        let mass = Ratio::new((tile.len() * centers.len()) as u64, dom.len() as u64);
        csv.push_str(&format!("{},{},\"centers={}\",{:.12}\n", i + 1, tile.len(), centers.len(), ratio_f(mass)));
    }
    rep.file("tiling.csv", csv);
    rep.line(format!("|D| = {}, eps = {eps}, tiles {:?}", dom.len(), s.tiles));
    rep.line(format!("d = {}, u = {}, b = {}", t.d, t.u, t.b));
    rep.line(format!(
        "disjoint {}, contained {}, covers {} (margin {}), mass close {} (margin {}), translates eps-disjoint {}",
        t.disjoint, t.contained, t.covers, t.cover_margin, t.mass_close, t.mass_margin, t.translates_eps_disjoint
    ));
    rep.line(format!("remainder bound |1/d - 1/b| < 2 eps/b: {remtil}"));
    rep.line(format!("filling hypotheses: tiles {}, target {}", fill.tiles_hold(), fill.target_holds()));
    if !t.passed() {
        rep.fail("check_tiling rejected the witness");
    } else if !remtil {
        rep.fail("remainder bound fails");
    }
    Ok(rep)
}

fn semidirect(s: &SemidirectDefect, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("semidirect-defect", &["min", "max"])?;
    let g = match s.matrix {
        Some(a) => Monoid::semidirect(a)?,
        None => Monoid::heisenberg_like(),
    };
    let x = MElement(s.x.to_vec());
    g.check(&x)?;
    let [lo, hi] = s.n;
    if lo == 0 || lo > hi {
        return Err(CliError::Schema(format!("n range [{lo}, {hi}] must be nonempty and positive")));
    }
    let budget = o.budget(s.budget).map(|b| b as u64).unwrap_or(amenact::folner::DEFAULT_ELEMENT_BUDGET);
    let (min, max) = (s.expect.min.as_ref().map(Real::value).transpose()?, s.expect.max.as_ref().map(Real::value).transpose()?);
    let mut rep = Report::default();
    let mut csv = String::from("index,|F|,element,ratio\n");
    let mut pts = Vec::new();
    let mut least: Option<Ratio<u128>> = None;
    for n in lo..=hi {
        let m = s.m.unwrap_or(n);
        let d = semidirect_defect(&g, n, m, &x, budget)?;
        let v = *d.numer() as f64 / *d.denom() as f64;
        csv.push_str(&format!("{n},{},\"{x}\",{v:.12}\n", n * m * m));
        pts.push((n as f64, v));
        least = Some(least.map_or(d, |l| l.min(d)));
        if min.is_some_and(|b| v < b - s.expect.tol()) {
            rep.fail(format!("n={n}, m={m}: δ = {d} below {}", min.unwrap()));
        }
        if max.is_some_and(|b| v > b + s.expect.tol()) {
            rep.fail(format!("n={n}, m={m}: δ = {d} above {}", max.unwrap()));
        }
    }
    rep.line(format!("{g}, x = {x}, n in [{lo}, {hi}], m = {}", s.m.map_or("n".into(), |m| m.to_string())));
    rep.line(format!("least δ = {}", least.expect("nonempty range")));
    rep.file("defects.csv", csv);
    rep.plot(s.plot, &format!("semidirect defect of {x}"), "δ", &pts);
    Ok(rep)
}

fn integral_run(s: &IntegralScenario, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("integral", &["ratio", "tail_at_most", "tail_near"])?;
    let m = s.monoid.build()?;
    let f = match &s.function {
        FunctionSpec::Card => SetFunction::cardinality(&m),
        FunctionSpec::Constant(a) => SetFunction::constant(&m, *a)?,
        FunctionSpec::CardPi(maps) => card_pi(&MonoidHom::coordinatewise(&m, coord_maps(maps)?)?),
    };
    let net = s.net.build(&m, o.budget)?;
    let prefix = o.prefix(s.prefix, 32)?;
    let est = integral(&f, &net, prefix)?;
    let mut rep = Report::default();
    rep.file("integral.csv", est.to_csv());
    rep.line(format!("f = {} on {m}, net {}", f.provenance(), net.describe()));
    rep.line(format!("tail {:.12}, oscillation {:.3e}", est.tail(), est.oscillation()));
    let rows: Vec<(String, f64)> = est.rows.iter().map(|r| (r.label.clone(), r.ratio)).collect();
    check_rows(&mut rep, &rows, &s.expect)?;
    let pts: Vec<(f64, f64)> = est.rows.iter().map(|r| (r.index as f64, r.ratio)).collect();
    rep.plot(s.plot, &format!("{} on {m}", f.provenance()), "f(F)/|F|", &pts);
    Ok(rep)
}

fn fubini(s: &Fubini, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("fubini", &["difference_at_most"])?;
    let m = s.monoid.build()?;
    commutative(&m, "fubini")?;
    let g = s.group.build(&m)?;
    let a = build_action(&m, &g, &s.generators)?;
    let budget = o.budget(s.budget).unwrap_or(DEFAULT_ELEMENT_BUDGET);
    let f = f_x(&a, &Seed::Set(s.seed.set(&g)?), budget)?;
    let pi = MonoidHom::project_first(&m, s.project_first)?;
    let rule = match s.section {
        SectionSpec::Minimal => SectionRule::MinimalRepresentatives,
        SectionSpec::Identity => SectionRule::Identity,
    };
    let sigma = Section::new(&pi, rule)?;
    let c = pi
        .target()
        .as_monoid()
        .ok_or_else(|| CliError::Schema("the projection has no monoid target".into()))?
        .clone();
    let prefix = o.prefix(s.prefix, 32)?;
    let boxes = amenact::folner::FolnerNet::boxes;
    let r = fubini_check(&f, &sigma, &boxes(&m)?, &boxes(&c)?, &boxes(pi.kernel().monoid())?, prefix)?;
    let mut rep = Report::default();
    rep.file("left.csv", r.left.to_csv());
    rep.file("right.csv", r.right.to_csv());
    rep.line(format!("S = {m}, C = {c}, N = {}", pi.kernel().monoid()));
    rep.line(format!("H_S(f) ≈ {}, H_C(Θ(f)) ≈ {}, difference {:.3e}", o.log(r.left.tail()), o.log(r.right.tail()), r.difference()));
    if let Some(b) = &s.expect.difference_at_most {
        let b = b.value()?;
        if r.difference() > b {
            rep.fail(format!("index {prefix}: difference {:.12} exceeds {b}", r.difference()));
        }
    }
    Ok(rep)
}

fn entropy(s: &EntropyScenario, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("entropy", &["ratio", "counts", "tail_at_most", "tail_near"])?;
    let m = s.monoid.build()?;
    let g = s.group.build(&m)?;
    let mut a = build_action(&m, &g, &s.generators)?;
    if let Some(r) = &s.restrict {
        a = r.apply(&a)?;
    }
    let budget = o.budget(s.budget);
    let net = s.net.build(a.monoid(), budget)?;
    let seed = s.seed.seed(&g)?;
    let prefix = o.prefix(s.prefix, 16)?;
    let est = h_alg_estimate(&a, &seed, &net, prefix, budget.unwrap_or(DEFAULT_ELEMENT_BUDGET))?;
    let mut rep = Report::default();
    rep.file("entropy.csv", est.to_csv());
    rep.line(format!("action of {} on {g}, seed {}, net {}", a.monoid(), est.seed, est.net));
    rep.line(format!("tail ratio {} over {} indices", o.log(est.tail()), est.rows().len()));
    let rows: Vec<(String, f64)> = est.rows().iter().map(|r| (r.label.clone(), r.ratio)).collect();
    check_rows(&mut rep, &rows, &s.expect)?;
    if let Some(want) = &s.expect.counts {
        for (r, (got, want)) in est.rows().iter().zip(est.counts.iter().zip(want)) {
            if *got != num_bigint::BigUint::from(*want) {
                rep.fail(format!("index {}: |T_F(X)| = {got}, expected {want}", r.label));
                break;
            }
        }
    }
    if let Some(e) = &est.truncated {
        rep.budget = Some(format!("{e}; table stops after {} indices", est.rows().len()));
    }
    let pts: Vec<(f64, f64)> = est.rows().iter().map(|r| (r.index as f64, r.ratio)).collect();
    rep.plot(s.plot, &format!("ℓ(T_F(X))/|F| on {g}"), "ratio", &pts);
    Ok(rep)
}

fn addition(s: &Addition, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("addition", &["exact", "difference_at_most"])?;
    let m = s.monoid.build()?;
    let g = s.group.build(&m)?;
    let a = build_action(&m, &g, &s.generators)?;
    let b = s.sub.subgroup(&g)?;
    let x = s.seed.subgroup(&g)?;
    let net = s.net.build(&m, o.budget)?;
    let prefix = o.prefix(s.prefix, 16)?;
    let r = addition_check(&a, &b, &x, None, None, &net, prefix)?;
    let mut rep = Report::default();
    rep.file("addition.csv", r.to_csv());
    rep.file("addition.txt", r.to_text());
    rep.line(format!(
        "ent(α) ≈ {}, ent(α_B) ≈ {}, ent(α_A/B) ≈ {}, residual {:.3e}",
        o.log(r.whole.tail()),
        o.log(r.sub.tail()),
        o.log(r.quotient.tail()),
        r.residual()
    ));
    if s.expect.exact == Some(true) {
        if let Some(row) = r.rows.iter().find(|row| !row.exact()) {
            rep.fail(format!("index {}: |T(A)| = {} but |T(B)|·|T(A/B)| = {}·{}", row.label, row.whole, row.sub, row.quotient));
        }
    }
    if let Some(bound) = &s.expect.difference_at_most {
        let bound = bound.value()?;
        if r.residual() > bound {
            rep.fail(format!("index {prefix}: residual {:.12} exceeds {bound}", r.residual()));
        }
    }
    Ok(rep)
}

fn bridge(s: &Bridge, o: &Options) -> Result<Report, CliError> {
    s.expect.allow("bridge", &["difference_at_most"])?;
    let m = s.monoid.build()?;
    let g = s.group.build(&m)?;
    let a = build_action(&m, &g, &s.generators)?;
    let seeds = s.seeds.iter().map(|x| x.subgroup(&g)).collect::<Result<Vec<_>, _>>()?;
    let net = s.net.build(&m, o.budget)?;
    let prefix = o.prefix(s.prefix, 8)?;
    let bound = o.budget(s.budget).map(|b| b as u64).unwrap_or(DEFAULT_DUAL_BOUND);
    let reports = bridge_check(&a, &seeds, &net, prefix, bound)?;
    let mut rep = Report::default();
    let bound_diff = s.expect.difference_at_most.as_ref().map(Real::value).transpose()?;
    for (k, r) in reports.iter().enumerate() {
        let name = if reports.len() == 1 { "bridge.csv".to_string() } else { format!("bridge-{}.csv", k + 1) };
        rep.file(&name, r.to_csv());
        let window = r.window.map_or("finite dual".into(), |w| format!("window of {w} coordinates"));
        rep.line(format!("seed {}: {window}, max |ℓ(T_F) - log index| = {:.3e}", r.seed, r.max_difference()));
        if let (Some(b), Some(row)) = (bound_diff, r.rows.iter().find(|row| row.difference().abs() > bound_diff.unwrap_or(0.0))) {
            rep.fail(format!("seed {}, index {}: ℓ(T_F) = {:.12}, log-index = {:.12}, above {b:e}", r.seed, row.label, row.ln_trajectory, row.ln_index));
        }
        if k == 0 {
            let pts: Vec<(f64, f64)> = r.rows.iter().map(|row| (row.index as f64, row.ln_index / row.size as f64)).collect();
            rep.plot(s.plot, &format!("log index / |F| for seed {}", r.seed), "ratio", &pts);
        }
    }
    Ok(rep)
}

/// A uniformly random endomorphism of `∏ ℤ/n_i`: `m_ij` runs over the
/// multiples of `n_i / gcd(n_i, n_j)` below `n_i`.
fn random_endomorphism(n: &[u64], rng: &mut ChaCha8Rng) -> Endomorphism {
    let m = (0..n.len())
        .map(|i| {
            (0..n.len())
                .map(|j| {
                    let step = n[i] / num_integer::gcd(n[i], n[j]);
                    (rng.gen_range(0..n[i] / step) * step) as i128
                })
                .collect()
        })
        .collect();
    Endomorphism::CongruentMatrix(m)
}

fn duality(s: &DualityProps) -> Result<Report, CliError> {
    s.expect.allow("duality-props", &[])?;
    if s.max_order > 1024 {
        return Err(CliError::Schema(format!("max_order {} is above the supported 1024", s.max_order)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.rng_seed);
    let mut rep = Report::default();
    let mut csv = String::from("group,subgroups,exhaustive,pairs,ct_checks,ok\n");
    let n1 = Monoid::naturals(1);
    let (mut total_subs, mut total_pairs, mut total_ct) = (0usize, 0usize, 0usize);
    for g in groups_up_to(s.max_order) {
        let AbelianGroup::FiniteProduct { factors } = &g else { unreachable!("groups_up_to yields finite products") };
        let order = g.order().expect("finite");
        let bound = s.max_order.max(1);
        let (subs, exhaustive) = match Subgroup::all(&g, s.subgroup_cap) {
            Ok(v) => (v, true),
            Err(_) => {
                let elems: Vec<GroupElement> = g.elements(bound)?;
                let sample = (0..s.subgroup_cap.min(64))
                    .map(|_| {
                        let k = rng.gen_range(0..=3);
                        Subgroup::generated(&g, (0..k).map(|_| elems[rng.gen_range(0..elems.len())].clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (sample, false)
            }
        };
        let mut ok = true;
        let perps = subs.iter().map(|b| annihilator(b, bound)).collect::<Result<Vec<_>, _>>()?;
        for (b, p) in subs.iter().zip(&perps) {
            let (Order::Finite(x), Order::Finite(y)) = (b.order(), p.order()) else { unreachable!() };
            if x * y != order || annihilator(p, bound)? != *b {
                ok = false;
                rep.fail(format!("{g}: |B||B⊥| = |A| or B⊥⊥ = B fails for {b:?}"));
            }
        }
        let pairs: Vec<(usize, usize)> = if exhaustive && subs.len() <= s.pair_cap {
            (0..subs.len()).flat_map(|i| (i..subs.len()).map(move |j| (i, j))).collect()
        } else {
            (0..s.pair_cap).map(|_| (rng.gen_range(0..subs.len()), rng.gen_range(0..subs.len()))).collect()
        };
        for &(i, j) in &pairs {
            if annihilator(&subs[i].join(&subs[j])?, bound)? != perps[i].meet(&perps[j])? {
                ok = false;
                rep.fail(format!("{g}: (B+C)⊥ ≠ B⊥∩C⊥ for {:?}, {:?}", subs[i], subs[j]));
            }
        }
        let mut ct = 0;
        for _ in 0..s.endomorphisms {
            let a = action_from_generators(&n1, &g, vec![random_endomorphism(factors, &mut rng)])?;
            for b in &subs {
                for r in ct_check_prefixes(&a, b, s.kmax, bound)? {
                    ct += 1;
                    if !r.equal() {
                        ok = false;
                        rep.fail(format!("{g}, {:?}, {b:?}: |T_F| = {} but index {}", a.generators()[0], r.trajectory, r.index));
                    }
                }
            }
        }
        csv.push_str(&format!("{g},{},{exhaustive},{},{ct},{ok}\n", subs.len(), pairs.len()));
        total_subs += subs.len();
        total_pairs += pairs.len();
        total_ct += ct;
    }
    rep.line(format!(
        "groups of order <= {}: {total_subs} subgroups, {total_pairs} pairs, {total_ct} trajectory/cotrajectory checks",
        s.max_order
    ));
    rep.file("duality.csv", csv);
    Ok(rep)
}
