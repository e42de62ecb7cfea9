//! Verification suites: seeded random corpora, one row per check instance,
//! CSV and JSON reports.

use crate::error::{invalid, Result};
use crate::euclid::{
    empirical_rearrangement, fractional_maximal_function, hilbert_transform, line_grid, maximal_function,
    riesz_constant, riesz_potential, LineStepFunction,
};
use crate::lz::{lz_norm, LZParams, Variant, INF};
use crate::operators::{apply_p, apply_q, apply_s, apply_s_alpha, check_pq_duality, q_of_doublestar};
use crate::optimal::{
    self, frac_fund_condition, frac_range_norm_simple, frac_range_norm_sup_estimate, hilbert_range_norm,
    lemma_lenka_check, lemma_unsup_check, maximal_domain_norm, maximal_range_norm, pes_numeric_bounded,
    riesz_range_norm, sup_weighted_doublestar, t_boundedness_predicate, translated_block_value, QuasiConcave,
    Ternary, UNSUP_CONSTANT,
};
use crate::quad::tanh_sinh;
use crate::stepfn::StepFunction;
use crate::value::{fmt_f64, Extended};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Preliminaries,
    Maximal,
    Fractional,
    Hilbert,
    Riesz,
    Lemmas,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["preliminaries", "maximal", "fractional", "hilbert", "riesz", "lemmas", "all"];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }
}

impl FromStr for Suite {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "preliminaries" => Suite::Preliminaries,
            "maximal" => Suite::Maximal,
            "fractional" => Suite::Fractional,
            "hilbert" => Suite::Hilbert,
            "riesz" => Suite::Riesz,
            "lemmas" => Suite::Lemmas,
            "all" => Suite::All,
            _ => return Err(invalid(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    /// Overrides the tolerance of every exact-identity check.
    pub tol: Option<f64>,
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig { suite, n: 1000, seed: 0, tol: None, jobs: 0 }
    }

    fn identity_tol(&self) -> f64 {
        self.tol.unwrap_or(1e-9)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub check: String,
    pub inputs_digest: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Row {
    pub fn new(check: &str, inputs: &impl Debug, lhs: f64, rhs: f64, constant: f64, tolerance: f64, pass: bool) -> Self {
        Row { check: check.into(), inputs_digest: digest(inputs), lhs, rhs, constant, tolerance, pass }
    }
}

/// First 16 hex digits of SHA-256 over the debug rendering of the inputs.
pub fn digest(inputs: &impl Debug) -> String {
    let h = Sha256::digest(format!("{inputs:?}").as_bytes());
    h[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Per-check RNG: the run seed mixed with a hash of the check name.
pub fn check_rng(seed: u64, check: &str) -> ChaCha8Rng {
    let h = Sha256::digest(check.as_bytes());
    let mut k = [0u8; 8];
    k.copy_from_slice(&h[..8]);
    ChaCha8Rng::seed_from_u64(seed ^ u64::from_le_bytes(k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Vec<Row>,
    pub suite: Suite,
    pub seed: u64,
    pub n: usize,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("check,inputs_digest,lhs,rhs,constant,tolerance,pass\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.check,
                r.inputs_digest,
                fmt_f64(r.lhs),
                fmt_f64(r.rhs),
                fmt_f64(r.constant),
                fmt_f64(r.tolerance),
                r.pass
            ));
        }
        s
    }

    pub fn summary(&self) -> Value {
        let mut per: BTreeMap<&str, (usize, usize, f64, f64)> = BTreeMap::new();
        for r in &self.rows {
            let e = per.entry(&r.check).or_insert((0, 0, f64::INFINITY, f64::NEG_INFINITY));
            e.0 += 1;
            e.1 += usize::from(!r.pass);
            if !r.constant.is_nan() {
                e.2 = e.2.min(r.constant);
                e.3 = e.3.max(r.constant);
            }
        }
        let num = |x: f64| if x.is_finite() { json!(x) } else if x.is_nan() { Value::Null } else { json!("inf") };
        let mut checks = Map::new();
        for (k, (rows, failed, lo, hi)) in per {
            let (lo, hi) = if rows > 0 && lo <= hi { (num(lo), num(hi)) } else { (Value::Null, Value::Null) };
            checks.insert(k.into(), json!({"rows": rows, "failed": failed, "constant_min": lo, "constant_max": hi}));
        }
        json!({
            "suite": self.suite.name(),
            "seed": self.seed,
            "n": self.n,
            "rows": self.rows.len(),
            "failed": self.failures(),
            "checks": Value::Object(checks),
        })
    }
}

/// Runs a suite. Instances are drawn sequentially from per-check RNGs and
/// evaluated in parallel; rows are sorted by check name and digest.
pub fn run(cfg: &SuiteConfig) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))?;
    let mut rows = pool.install(|| -> Result<Vec<Row>> {
        let suites: Vec<Suite> = match cfg.suite {
            Suite::All => vec![
                Suite::Preliminaries,
                Suite::Maximal,
                Suite::Fractional,
                Suite::Hilbert,
                Suite::Riesz,
                Suite::Lemmas,
            ],
            s => vec![s],
        };
        let mut rows = Vec::new();
        for s in suites {
            rows.extend(match s {
                Suite::Preliminaries => preliminaries(cfg)?,
                Suite::Maximal => maximal(cfg)?,
                Suite::Fractional => fractional(cfg)?,
                Suite::Hilbert => hilbert(cfg)?,
                Suite::Riesz => riesz(cfg)?,
                Suite::Lemmas => lemmas(cfg)?,
                Suite::All => unreachable!(),
            });
        }
        Ok(rows)
    })?;
    rows.sort_by(|a, b| a.check.cmp(&b.check).then_with(|| a.inputs_digest.cmp(&b.inputs_digest)));
    Ok(Report { rows, suite: cfg.suite, seed: cfg.seed, n: cfg.n })
}

// ---------- corpora ----------

/// Random step function on (0,∞) with up to `max_blocks` levels, some zero.
pub fn random_step(rng: &mut impl Rng, max_blocks: usize) -> StepFunction {
    loop {
        let k = rng.random_range(1..=max_blocks);
        let mut b = Vec::with_capacity(k);
        let mut v = Vec::with_capacity(k);
        let mut pos = 0.0;
        for _ in 0..k {
            pos += rng.random_range(-2.0f64..2.0).exp();
            b.push(pos);
            v.push(if rng.random_bool(0.2) { 0.0 } else { rng.random_range(0.05..5.0) });
        }
        let f = StepFunction::new(b, v).expect("valid random step");
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_decreasing(rng: &mut impl Rng, max_blocks: usize) -> StepFunction {
    random_step(rng, max_blocks).rearrange()
}

/// Random nonnegative step function on ℝ.
pub fn random_line(rng: &mut impl Rng, max_blocks: usize) -> LineStepFunction {
    let offset = rng.random_range(-3.0..3.0);
    LineStepFunction::new(offset, random_step(rng, max_blocks)).expect("valid line function")
}

/// Random quasiconcave φ with 1 to 4 knots.
pub fn random_quasiconcave(rng: &mut impl Rng) -> QuasiConcave {
    let m = rng.random_range(1..=4);
    let mut knots = vec![rng.random_range(-2.0f64..2.0).exp()];
    let mut values = vec![knots[0] * rng.random_range(0.5..2.0)];
    for j in 1..m {
        let k = knots[j - 1] * rng.random_range(0.1f64..2.0).exp();
        let lo = values[j - 1];
        let hi = lo / knots[j - 1] * k;
        knots.push(k);
        values.push(lo + (hi - lo) * rng.random_range(0.0..1.0));
    }
    QuasiConcave::new(knots, values).expect("generator respects quasiconcavity")
}

/// Averages g* over random blocks, which yields f ≺ g.
fn random_hlp_pair(rng: &mut impl Rng) -> (StepFunction, StepFunction) {
    let g = random_decreasing(rng, 6);
    let segs: Vec<(f64, f64, f64)> = g.segments().collect();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < segs.len() {
        let j = (i + rng.random_range(1..=3)).min(segs.len());
        let len = segs[j - 1].1 - segs[i].0;
        let mass: f64 = segs[i..j].iter().map(|s| (s.1 - s.0) * s.2).sum();
        blocks.push((len, mass / len));
        i = j;
    }
    (StepFunction::from_blocks(&blocks).expect("positive blocks"), g)
}

fn log_grid(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| lo * (hi / lo).powf(i as f64 / (k - 1) as f64)).collect()
}

fn rel_defect(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 { 0.0 } else { d / a.abs().max(b.abs()) }
}

fn draw<T>(cfg: &SuiteConfig, check: &str, count: usize, gen: impl Fn(&mut ChaCha8Rng) -> T) -> Vec<T> {
    let mut rng = check_rng(cfg.seed, check);
    (0..count).map(|_| gen(&mut rng)).collect()
}

fn ratio(a: Extended, b: Extended) -> f64 {
    match (a, b) {
        (Extended::Finite(x), Extended::Finite(y)) => x / y,
        (Extended::Infinite, Extended::Finite(_)) => f64::INFINITY,
        _ => f64::NAN,
    }
}

/// Interval of `values` over the first half versus the whole, and the
/// relative drift of its endpoints.
pub fn interval_drift(values: &[f64]) -> ((f64, f64), (f64, f64), f64) {
    let span = |v: &[f64]| {
        v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
    };
    let half = span(&values[..values.len() / 2]);
    let full = span(values);
    let drift = rel_defect(half.0, full.0).max(rel_defect(half.1, full.1));
    (half, full, drift)
}

/// Allowed endpoint drift when a corpus doubles.
pub const DRIFT: f64 = 0.10;

fn stability_row(check: &str, key: &impl Debug, values: &[f64]) -> Row {
    let (_, full, drift) = interval_drift(values);
    let ok = full.0 > 0.0 && full.1.is_finite() && drift < DRIFT;
    Row::new(check, key, full.0, full.1, drift, DRIFT, ok)
}

// ---------- preliminaries ----------

fn critical_points(f: &StepFunction) -> Vec<f64> {
    let mut pts: Vec<f64> = f.breakpoints().to_vec();
    let mut prev = 0.0;
    for &b in f.breakpoints() {
        pts.push(0.5 * (prev + b));
        prev = b;
    }
    pts.push(2.0 * f.end().max(1.0));
    pts
}

/// S f*(t) from the definition: (1/t)∫_0^t f* + ∫_t^∞ f*(s) ds/s.
fn stieltjes_direct(fs: &StepFunction, t: f64) -> f64 {
    let head = fs.primitive(t) / t;
    let tail: f64 = fs.segments().filter(|s| s.1 > t).map(|(l, r, v)| v * (r / l.max(t)).ln()).sum();
    head + tail
}

fn preliminaries(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let tol = cfg.identity_tol();
    let exact = cfg.tol.unwrap_or(1e-12);
    let n = cfg.n;
    let mut rows = Vec::new();

    let pairs = draw(cfg, "pq_duality", n, |r| (random_step(r, 6), random_step(r, 6)));
    rows.par_extend(pairs.par_iter().map(|(f, g)| {
        let (_, l, r) = check_pq_duality(f, g);
        let d = rel_defect(l, r);
        Row::new("pq_duality", &(f, g), l, r, d, tol, d < tol)
    }));

    let fs = draw(cfg, "stieltjes", n, |r| random_step(r, 6));
    rows.par_extend(fs.par_iter().flat_map_iter(|f| {
        let st = f.rearrange();
        let s = apply_s(&st);
        let p = apply_p(&st);
        let q = apply_q(&st);
        let qss = q_of_doublestar(f);
        let mut worst = (0.0, 0.0, 0.0, 0.0);
        let mut worst_sum = (0.0, 0.0, 0.0);
        for t in critical_points(&st) {
            let direct = stieltjes_direct(&st, t);
            let d = rel_defect(s.eval(t), qss.eval(t));
            if d >= worst.2 {
                worst = (s.eval(t), qss.eval(t), d, t);
            }
            let d2 = rel_defect(s.eval(t), p.eval(t) + q.eval(t)).max(rel_defect(s.eval(t), direct));
            if d2 >= worst_sum.2 {
                worst_sum = (s.eval(t), direct, d2);
            }
        }
        [
            Row::new("s_star_equals_q_doublestar", f, worst.0, worst.1, worst.2, tol, worst.2 < tol),
            Row::new("s_equals_p_plus_q", f, worst_sum.0, worst_sum.1, worst_sum.2, tol, worst_sum.2 < tol),
        ]
    }));

    let fs = draw(cfg, "rearrangement", n, |r| (random_step(r, 6), random_step(r, 6)));
    rows.par_extend(fs.par_iter().flat_map_iter(|(f, g)| {
        let fs = f.rearrange();
        let mut levels: Vec<f64> = f.values().to_vec();
        levels.extend(f.values().iter().map(|v| v * 0.5));
        levels.push(0.0);
        let eq = levels.iter().map(|&l| rel_defect(f.distribution(l), fs.distribution(l))).fold(0.0, f64::max);
        let idem = fs.rearrange() == fs;
        let sum = f.add(g);
        let (a, b, c) = (sum.doublestar(), f.doublestar(), g.doublestar());
        let mut pts = critical_points(&sum.rearrange());
        pts.extend(critical_points(&fs));
        pts.extend(critical_points(&g.rearrange()));
        let mut sub = (0.0, 0.0, f64::NEG_INFINITY);
        for t in pts {
            let (l, r) = (a.eval(t), b.eval(t) + c.eval(t));
            let d = (l - r) / r.max(f64::MIN_POSITIVE);
            if d > sub.2 {
                sub = (l, r, d);
            }
        }
        let hl_l = f.inner(g);
        let hl_r = fs.inner(&g.rearrange());
        [
            Row::new("equimeasurable", f, f.support_measure(), fs.support_measure(), eq, exact, eq <= exact),
            Row::new("rearrange_idempotent", f, 0.0, 0.0, 0.0, 0.0, idem),
            Row::new("doublestar_subadditive", &(f, g), sub.0, sub.1, sub.2, exact, sub.2 <= exact),
            Row::new("hardy_littlewood", &(f, g), hl_l, hl_r, hl_l / hl_r, exact, hl_l <= hl_r * (1.0 + exact)),
        ]
    }));

    let triples = draw(cfg, "hardy_lemma", n, |r| {
        let g = random_step(r, 6);
        let shift = r.random_range(0.0..3.0);
        let scale = r.random_range(0.2..1.0);
        let h = random_decreasing(r, 6);
        (g, shift, scale, h)
    });
    rows.par_extend(triples.par_iter().map(|(g, shift, scale, h)| {
        let mut blocks = vec![(*shift, 0.0)];
        blocks.extend(g.segments().map(|(l, r, v)| (r - l, v * scale)));
        if *shift == 0.0 {
            blocks.remove(0);
        }
        let f = StepFunction::from_blocks(&blocks).expect("blocks");
        let (l, r) = (f.inner(h), g.inner(h));
        Row::new("hardy_lemma", &(g, shift, scale, h), l, r, l / r, exact, l <= r * (1.0 + exact))
    }));

    let spaces = [
        LZParams::lebesgue(2.0),
        LZParams::lorentz(2.0, 1.0),
        LZParams::lorentz(3.0, 2.0),
        LZParams::lorentz(2.0, 4.0).with_variant(Variant::Doublestar),
        LZParams::new(2.0, 2.0, [1.0, -1.0]).expect("valid"),
    ];
    let pairs = draw(cfg, "hlp_monotone", (n / 5).max(1), random_hlp_pair);
    rows.par_extend(pairs.par_iter().flat_map_iter(|(f, g)| {
        spaces
            .iter()
            .map(|x| {
                let nf = lz_norm(f, x).map(|v| v.to_f64()).unwrap_or(f64::NAN);
                let ng = lz_norm(g, x).map(|v| v.to_f64()).unwrap_or(f64::NAN);
                let hlp = StepFunction::hlp_compare(f, g) == crate::stepfn::Hlp::Holds;
                Row::new("hlp_monotone", &(f, g, x), nf, ng, nf / ng, 1e-9, hlp && nf <= ng * (1.0 + 1e-9))
            })
            .collect::<Vec<_>>()
    }));
    Ok(rows)
}

// ---------- maximal ----------

fn herz_ratios(f: &LineStepFunction) -> Vec<f64> {
    let m = maximal_function(f);
    let fss = f.rearrange().doublestar();
    let w = f.rearrange().support_measure();
    log_grid(1e-3 * w, 1e3 * w, 50).into_iter().map(|t| fss.eval(t) / m.rearrangement_at(t)).collect()
}

fn maximal(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let tol = cfg.identity_tol();
    let mut rows = Vec::new();
    let chi = LineStepFunction::indicator(0.0, 1.0)?;
    let m = maximal_function(&chi);
    for t in log_grid(1e-3, 1e3, 50) {
        let ms = m.rearrangement_at(t);
        let closed = (2.0 / (t + 1.0)).min(1.0);
        let fss = (1.0 / t).min(1.0);
        let r = fss / ms;
        let ok = (ms - closed).abs() <= 1e-6 && (0.5 - 1e-6..=1.0 + 1e-6).contains(&r);
        rows.push(Row::new("herz_indicator", &t, fss, ms, r, 1e-6, ok));
    }

    let corpus = draw(cfg, "herz_sandwich", 40, |r| random_line(r, 5));
    let per: Vec<(f64, f64)> = corpus
        .par_iter()
        .map(|f| herz_ratios(f).into_iter().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(x), b.max(x))))
        .collect();
    for (f, &(lo, hi)) in corpus.iter().zip(&per) {
        rows.push(Row::new("herz_sandwich", f, lo, hi, hi, f64::NAN, lo > 0.0 && hi.is_finite()));
    }
    let lows: Vec<f64> = per.iter().map(|p| p.0).collect();
    let highs: Vec<f64> = per.iter().map(|p| p.1).collect();
    let (_, (c, _), d_lo) = interval_drift(&lows);
    let (_, (_, cp), d_hi) = interval_drift(&highs);
    let drift = d_lo.max(d_hi);
    rows.push(Row::new("herz_stability", &"herz", c, cp, drift, DRIFT, c > 0.0 && cp.is_finite() && drift < DRIFT));

    let fs = draw(cfg, "f_le_maximal", (cfg.n / 10).max(1), |r| random_line(r, 6));
    rows.par_extend(fs.par_iter().map(|f| {
        let m = maximal_function(f);
        let xs = f.knots();
        let worst = xs
            .windows(2)
            .map(|w| {
                let x = 0.5 * (w[0] + w[1]);
                f.eval(x) - m.eval(x)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        Row::new("f_le_maximal", f, worst, 0.0, worst, 1e-12, worst <= 1e-12)
    }));

    let x11 = LZParams::new(1.0, 1.0, [1.0, 0.0])?;
    let s = maximal_range_norm(&StepFunction::indicator(0.0, 1.0)?, &x11)?.to_f64();
    rows.push(Row::new("maximal_range_indicator", &x11, s, 1.0, s, tol, rel_defect(s, 1.0) < tol));
    let d = maximal_domain_norm(&StepFunction::indicator(0.0, 1.0)?, &LZParams::lebesgue(2.0))?.to_f64();
    let want = 2f64.sqrt();
    rows.push(Row::new("maximal_domain_indicator", &"L2", d, want, d, 1e-8, rel_defect(d, want) < 1e-8));

    let x = LZParams::new(1.0, 1.0, [1.0, -2.0])?;
    rows.extend(functional_invariants(cfg, "maximal", |f| maximal_range_norm(f, &x))?);

    for a in [[1.0, -2.0], [1.5, -1.5], [2.0, -3.0]] {
        let x = LZParams::new(1.0, 1.0, a)?;
        let y_assoc = LZParams::new(INF, INF, [1.0 - a[0], 1.0 - a[1]])?;
        rows.extend(glz_rows(cfg, "glz_maximal", &(x, y_assoc), |f| {
            Ok(ratio(maximal_range_norm(f, &x)?, lz_norm(f, &y_assoc)?))
        })?);
    }

    for x in [LZParams::lebesgue(1.0), LZParams::new(1.0, 1.0, [0.5, 0.0])?] {
        let cond = optimal::psi_condition(&x);
        let s = maximal_range_norm(&StepFunction::indicator(0.0, 1.0)?, &x)?;
        rows.push(Row::new(
            "nonexistence_maximal",
            &x,
            s.to_f64(),
            INF,
            f64::NAN,
            0.0,
            cond == Ternary::False && s.is_infinite(),
        ));
    }
    Ok(rows)
}

/// Rearrangement invariance and lattice monotonicity of a range functional.
fn functional_invariants(
    cfg: &SuiteConfig,
    name: &str,
    sigma: impl Fn(&StepFunction) -> Result<Extended> + Sync,
) -> Result<Vec<Row>> {
    let tol = cfg.identity_tol();
    let check_ri = format!("{name}_sigma_invariant");
    let check_lat = format!("{name}_sigma_lattice");
    let cases = draw(cfg, &check_ri, 50, |r| {
        let f = random_step(r, 5);
        let mut segs: Vec<(f64, f64)> = f.segments().map(|(l, r, v)| (r - l, v)).collect();
        let k = segs.len();
        for i in (1..k).rev() {
            segs.swap(i, r.random_range(0..=i));
        }
        let g = f.add(&random_step(r, 5));
        (f, StepFunction::from_blocks(&segs).expect("blocks"), g)
    });
    let out: Vec<Result<Vec<Row>>> = cases
        .par_iter()
        .map(|(f, shuffled, g)| {
            let (a, b, c) = (sigma(f)?, sigma(shuffled)?, sigma(g)?);
            let (a, b, c) = (a.to_f64(), b.to_f64(), c.to_f64());
            Ok(vec![
                Row::new(&check_ri, &(f, shuffled), a, b, rel_defect(a, b), tol, a == b || rel_defect(a, b) < tol),
                Row::new(&check_lat, &(f, g), a, c, a / c, tol, a <= c * (1.0 + tol)),
            ])
        })
        .collect();
    let mut rows = Vec::new();
    for r in out {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Pinned bound on the ratio interval of a table consistency check.
pub const GLZ_BOUND: (f64, f64) = (1e-2, 1e2);

fn glz_rows(
    cfg: &SuiteConfig,
    check: &str,
    key: &impl Debug,
    ratio_of: impl Fn(&StepFunction) -> Result<f64> + Sync,
) -> Result<Vec<Row>> {
    let corpus = draw(cfg, &format!("{check}{key:?}"), 20, |r| random_step(r, 5));
    let ratios: Vec<Result<f64>> = corpus.par_iter().map(&ratio_of).collect();
    let mut rows = Vec::new();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for (f, r) in corpus.iter().zip(ratios) {
        let r = r?;
        lo = lo.min(r);
        hi = hi.max(r);
        let ok = r >= GLZ_BOUND.0 && r <= GLZ_BOUND.1;
        rows.push(Row::new(check, &(key, f), r, 1.0, r, f64::NAN, ok));
    }
    let ok = lo >= GLZ_BOUND.0 && hi <= GLZ_BOUND.1;
    rows.push(Row::new(&format!("{check}_interval"), key, lo, hi, hi / lo, GLZ_BOUND.1, ok));
    Ok(rows)
}

// ---------- fractional ----------

/// Parameter sweep for the T-boundedness criterion at α = 1/2.
pub fn t_sweep() -> Vec<LZParams> {
    let mut out = Vec::new();
    let a_list = [[0.0, 0.0], [0.5, -0.5], [-1.0, 1.0], [1.0, 1.0], [-0.5, -0.5]];
    for &p in &[1.5, 2.0, 3.0] {
        for &q in &[1.0, 2.0, INF] {
            for a in a_list {
                out.push(LZParams::new(p, q, a).expect("valid"));
            }
        }
    }
    for a in [[0.0, 0.0], [0.5, -0.5], [1.0, -1.0], [2.0, 0.0], [0.0, -2.0]] {
        out.push(LZParams::new(1.0, 1.0, a).expect("valid"));
    }
    for (p, q, a) in [
        (1.2, 3.0, [0.0, 0.0]),
        (1.2, 3.0, [2.0, -2.0]),
        (2.0, INF, [0.0, 0.5]),
        (2.0, INF, [-0.3, 0.0]),
        (2.5, INF, [1.0, -1.0]),
    ] {
        out.push(LZParams::new(p, q, a).expect("valid"));
    }
    for a in [[-2.0, -1.0], [-1.5, 0.0], [-3.0, 2.0]] {
        out.push(LZParams::new(INF, 1.0, a).expect("valid"));
    }
    for a in [[0.0, 0.0], [-1.0, 0.0]] {
        out.push(LZParams::new(INF, INF, a).expect("valid"));
    }
    out.truncate(60);
    out
}

fn fractional(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let tol = cfg.identity_tol();
    let mut rows = Vec::new();
    let sweep = t_sweep();
    rows.par_extend(sweep.par_iter().map(|x| {
        let pred = t_boundedness_predicate(x, 0.5);
        let num = pes_numeric_bounded(x, 0.5);
        let ok = pred != Ternary::Unknown && (pred == Ternary::True) == num;
        Row::new("t_predicate_sweep", x, f64::from(u8::from(pred == Ternary::True)), f64::from(u8::from(num)), f64::NAN, 0.0, ok)
    }));

    let (gamma, n) = (1.0, 3.0);
    let chi = StepFunction::indicator(0.0, 1.0)?;
    let v = frac_range_norm_simple(&chi, &LZParams::lebesgue(1.0), gamma, n)?.to_f64();
    rows.push(Row::new("frac_indicator", &(gamma, n), v, n / gamma, v, tol, rel_defect(v, n / gamma) < tol));

    for x in [LZParams::new(1.5, 2.0, [0.0, 0.0])?, LZParams::new(1.5, 1.5, [0.5, -0.5])?, LZParams::new(2.0, 3.0, [0.0, 0.0])?]
    {
        let y = LZParams::new(n * x.p / (n - gamma * x.p), x.q, x.a)?.associate()?;
        rows.extend(glz_rows(cfg, "glz_fractional", &(x, y), |f| {
            Ok(ratio(frac_range_norm_simple(f, &x, gamma, n)?, lz_norm(f, &y)?))
        })?);
    }

    let (g2, n2) = (1.0, 2.0);
    for x in [LZParams::lebesgue(INF), LZParams::lebesgue(4.0), LZParams::lorentz(3.0, 2.0)] {
        let fund = frac_fund_condition(&x, g2, n2);
        let vals: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&b| translated_block_value(&x, g2, n2, b).map(|v| v.to_f64()))
            .collect::<Result<_>>()?;
        let ip = if x.p.is_infinite() { 0.0 } else { 1.0 / x.p };
        let threshold = 100f64.powf(g2 / n2 - ip) / 2.0;
        let growth = vals[2] / vals[0];
        let ok = !fund && vals[0] < vals[1] && vals[1] < vals[2] && growth >= threshold;
        rows.push(Row::new("nonexistence_fractional", &x, vals[0], vals[2], growth, threshold, ok));
    }

    let corpus = draw(cfg, "fractional_upper_bound", 40, |r| random_line(r, 4));
    let gm = 0.5;
    let consts: Vec<f64> = corpus
        .par_iter()
        .map(|f| {
            let m = fractional_maximal_function(f, gm).expect("γ in range");
            let w = f.rearrange().support_measure();
            log_grid(1e-3 * w, 1e3 * w, 30)
                .into_iter()
                .map(|t| m.rearrangement_at(t) / sup_weighted_doublestar(f.profile(), gm, t))
                .fold(0.0, f64::max)
        })
        .collect();
    for (f, c) in corpus.iter().zip(&consts) {
        rows.push(Row::new("fractional_upper_bound", f, *c, f64::NAN, *c, f64::NAN, c.is_finite() && *c > 0.0));
    }
    rows.push(stability_row("fractional_upper_bound_stability", &gm, &consts));

    let x = LZParams::lorentz(2.0, 1.0);
    let cases = draw(cfg, "frac_sup_ge_simple", 20, |r| random_step(r, 4));
    let out: Vec<Result<Row>> = cases
        .par_iter()
        .map(|f| {
            let s = frac_range_norm_simple(f, &x, g2, n2)?.to_f64();
            let e = frac_range_norm_sup_estimate(f, &x, g2, n2, 200)?.lower.to_f64();
            Ok(Row::new("frac_sup_ge_simple", f, e, s, e / s, 1e-12, e >= s * (1.0 - 1e-12)))
        })
        .collect();
    for r in out {
        rows.push(r?);
    }

    for x in [LZParams::lebesgue(1.0), LZParams::lorentz(2.0, 1.0), LZParams::lorentz(2.0, INF)] {
        let corpus = draw(cfg, &format!("lenka_equivalence{x:?}"), 10, |r| random_step(r, 4));
        let rep = optimal::lenka_equivalence_check(&x, g2, n2, &corpus, 200)?;
        let (r8, r32) = (rep.witness_ratios[0].1, rep.witness_ratios[1].1);
        rows.push(Row::new("lenka_equivalence", &x, r8, r32, rep.corpus_max_ratio, optimal::GROWTH_FACTOR, rep.consistent));
    }
    Ok(rows)
}

// ---------- hilbert ----------

fn sample_grid(f: &LineStepFunction) -> Vec<f64> {
    let xs = f.knots();
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let w = hi - lo;
    line_grid(lo - w, hi + w, w / 2000.0, 1e6 * w.max(1.0))
}

fn hilbert(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let chi = StepFunction::indicator(0.0, 1.0)?;
    let v = hilbert_range_norm(&chi, &LZParams::lebesgue(2.0))?.to_f64();
    let head = tanh_sinh(|t| (1.0 - t.ln()).powi(2), 0.0, 1.0, 1e-13).value;
    let want = (head + 1.0).sqrt();
    rows.push(Row::new("hilbert_range_indicator", &"L2", v, want, v, 1e-9, rel_defect(v, want) < 1e-9));

    let f = LineStepFunction::indicator(-1.0, 1.0)?;
    let mut worst: f64 = 0.0;
    for x in [1.5, 2.0, 3.7, 10.0, 0.5] {
        worst = worst.max((hilbert_transform(&f, x)? + hilbert_transform(&f, -x)?).abs());
    }
    let h2 = hilbert_transform(&f, 2.0)?;
    let want = 3f64.ln() / std::f64::consts::PI;
    rows.push(Row::new("hilbert_odd", &"chi(-1,1)", worst, 0.0, worst, 1e-14, worst < 1e-14 && rel_defect(h2, want) < 1e-14));

    for x in [LZParams::lebesgue(1.0), LZParams::lebesgue(INF)] {
        let cond = optimal::eta_condition(&x);
        let s = hilbert_range_norm(&chi, &x)?;
        rows.push(Row::new("nonexistence_hilbert", &x, s.to_f64(), INF, f64::NAN, 0.0, cond == Ternary::False && s.is_infinite()));
    }

    let x = LZParams::lebesgue(2.0);
    rows.extend(functional_invariants(cfg, "hilbert", |f| hilbert_range_norm(f, &x))?);

    let corpus = draw(cfg, "hilbert_stieltjes", 40, |r| random_line(r, 4));
    let consts: Vec<Result<f64>> = corpus
        .par_iter()
        .map(|f| {
            let hf = |x: f64| hilbert_transform(f, x).or_else(|_| hilbert_transform(f, x + 1e-9)).unwrap_or(0.0);
            let hs = empirical_rearrangement(hf, &sample_grid(f))?;
            let sf = apply_s(&f.rearrange());
            let w = f.rearrange().support_measure();
            Ok(log_grid(1e-2 * w, 1e2 * w, 30).into_iter().map(|t| hs.eval(t) / sf.eval(t)).fold(0.0, f64::max))
        })
        .collect();
    let consts: Vec<f64> = consts.into_iter().collect::<Result<_>>()?;
    for (f, c) in corpus.iter().zip(&consts) {
        rows.push(Row::new("hilbert_stieltjes", f, *c, f64::NAN, *c, f64::NAN, c.is_finite() && *c > 0.0));
    }
    rows.push(stability_row("hilbert_stieltjes_stability", &"H", &consts));
    Ok(rows)
}

// ---------- riesz ----------

fn riesz(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let tol = cfg.identity_tol();
    let mut rows = Vec::new();
    let f = LineStepFunction::indicator(-1.0, 1.0)?;
    for g in [0.25, 0.5, 0.75] {
        let v = riesz_potential(&f, g, 0.0)?;
        let q = 2.0 * tanh_sinh(|y| y.powf(g - 1.0), 0.0, 1.0, 1e-13).value * riesz_constant(g);
        rows.push(Row::new("riesz_indicator", &g, v, q, v, 1e-9, rel_defect(v, q) < 1e-9));
        let h = 1.75;
        let a = riesz_potential(&f.shift(h), g, 0.3 + h)?;
        let b = riesz_potential(&f, g, 0.3)?;
        let d = rel_defect(a, b);
        rows.push(Row::new("riesz_translation", &(g, h), a, b, d, tol, d < tol));
    }

    let (gamma, n) = (1.0, 3.0);
    let x = LZParams::lebesgue(2.0);
    rows.extend(functional_invariants(cfg, "riesz", |f| riesz_range_norm(f, &x, gamma, n))?);
    for x in [LZParams::new(1.5, 2.0, [0.0, 0.0])?, LZParams::new(1.5, 1.5, [0.5, -0.5])?, LZParams::new(2.0, 3.0, [0.0, 0.0])?]
    {
        let y = LZParams::new(n * x.p / (n - gamma * x.p), x.q, x.a)?.associate()?;
        rows.extend(glz_rows(cfg, "glz_riesz", &(x, y), |f| {
            Ok(ratio(riesz_range_norm(f, &x, gamma, n)?, lz_norm(f, &y)?))
        })?);
    }

    let chi = StepFunction::indicator(0.0, 1.0)?;
    for x in [LZParams::lebesgue(3.0), LZParams::lorentz(3.0, 2.0)] {
        let cond = optimal::xi_condition(&x, n / gamma);
        let s = riesz_range_norm(&chi, &x, gamma, n)?;
        rows.push(Row::new("nonexistence_riesz", &x, s.to_f64(), INF, f64::NAN, 0.0, cond == Ternary::False && s.is_infinite()));
    }

    let g = 0.5;
    let corpus = draw(cfg, "riesz_oneil", 40, |r| random_line(r, 4));
    let consts: Vec<Result<f64>> = corpus
        .par_iter()
        .map(|f| {
            let ri = |x: f64| riesz_potential(f, g, x).unwrap_or(f64::NAN);
            let is = empirical_rearrangement(ri, &sample_grid(f))?;
            let bound = f.rearrange().doublestar().weighted_tail_integral(g - 1.0)?;
            let w = f.rearrange().support_measure();
            Ok(log_grid(1e-2 * w, 1e2 * w, 30).into_iter().map(|t| is.eval(t) / bound.eval(t)).fold(0.0, f64::max))
        })
        .collect();
    let consts: Vec<f64> = consts.into_iter().collect::<Result<_>>()?;
    for (f, c) in corpus.iter().zip(&consts) {
        rows.push(Row::new("riesz_oneil", f, *c, f64::NAN, *c, f64::NAN, c.is_finite() && *c > 0.0));
    }
    rows.push(stability_row("riesz_oneil_stability", &g, &consts));

    let cases = draw(cfg, "riesz_s_alpha", 50, |r| random_decreasing(r, 5));
    rows.par_extend(cases.par_iter().map(|f| {
        let a = apply_s_alpha(f, n / gamma).expect("α > 1");
        let b = crate::operators::s_alpha_via_p(f, n / gamma).expect("α > 1");
        let mut d: f64 = 0.0;
        for t in critical_points(f) {
            d = d.max(rel_defect(a.eval(t), b.eval(t)));
        }
        Row::new("riesz_s_alpha_identity", f, d, 0.0, d, tol, d < tol)
    }));
    Ok(rows)
}

// ---------- lemmas ----------

/// Spaces and exponents of the Lenka ratio grid.
pub fn lenka_cells() -> Vec<(LZParams, f64)> {
    let spaces = [LZParams::lebesgue(1.0), LZParams::lebesgue(2.0), LZParams::lorentz(2.0, 1.0), LZParams::lebesgue(INF)];
    let mut out = Vec::new();
    for x in spaces {
        for beta in [0.25, 0.5, 0.75] {
            out.push((x, beta));
        }
    }
    out
}

/// One Lenka instance: N ≤ 6 coefficients and increasing breakpoints.
pub fn random_lenka_instance(rng: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    let k = rng.random_range(1..=6);
    let mut t = Vec::with_capacity(k);
    let mut pos = 0.0;
    for _ in 0..k {
        pos += rng.random_range(-2.0f64..2.0).exp();
        t.push(pos);
    }
    let a = (0..k).map(|_| rng.random_range(0.0..3.0)).collect();
    (a, t)
}

fn lemmas(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let phi = QuasiConcave::new(vec![1e9], vec![1e9])?;
    let o = lemma_unsup_check(&phi, &StepFunction::indicator(0.0, 1.0)?, 1.0)?;
    let ok = (o.lhs - 1.0).abs() < 1e-12 && (o.rhs - 0.5).abs() < 1e-12;
    rows.push(Row::new("unsup_indicator", &"phi=t", o.lhs, o.rhs, o.lhs / o.rhs, 1e-12, ok));

    let triples = draw(cfg, "unsup", cfg.n, |r| {
        (random_quasiconcave(r), random_decreasing(r, 6), r.random_range(-3.0f64..3.0).exp())
    });
    let out: Vec<Result<Row>> = triples
        .par_iter()
        .map(|(phi, f, tau)| {
            let o = lemma_unsup_check(phi, f, *tau)?;
            Ok(Row::new("unsup", &(phi, f, tau), o.lhs, o.rhs, o.lhs / o.rhs, UNSUP_CONSTANT, o.pass))
        })
        .collect();
    let mut worst: f64 = 0.0;
    for r in out {
        let r = r?;
        worst = worst.max(r.constant);
        rows.push(r);
    }
    rows.push(Row::new("unsup_max_ratio", &cfg.n, worst, UNSUP_CONSTANT, worst, UNSUP_CONSTANT, worst <= UNSUP_CONSTANT));

    for (x, beta) in lenka_cells() {
        let key = (x, beta);
        let inst = draw(cfg, &format!("lenka{key:?}"), 200, random_lenka_instance);
        let ratios: Vec<Result<f64>> =
            inst.par_iter().map(|(a, t)| Ok(lemma_lenka_check(a, t, beta, &x)?.ratio)).collect();
        let ratios: Vec<f64> = ratios.into_iter().collect::<Result<_>>()?;
        let finite: Vec<f64> = ratios.iter().copied().filter(|r| !r.is_nan()).collect();
        for ((a, t), r) in inst.iter().zip(&ratios) {
            let ok = r.is_nan() && a.iter().all(|&c| c == 0.0) || (r.is_finite() && *r > 0.0);
            rows.push(Row::new("lenka", &(key, a, t), *r, f64::NAN, *r, f64::NAN, ok));
        }
        rows.push(stability_row("lenka_stability", &key, &finite));
        let exact = if x == LZParams::lebesgue(1.0) {
            Some(1.0 / (2.0 - beta))
        } else if x == LZParams::lebesgue(INF) {
            Some(1.0 / (1.0 - beta))
        } else {
            None
        };
        if let Some(e) = exact {
            let d = finite.iter().map(|r| rel_defect(*r, e)).fold(0.0, f64::max);
            rows.push(Row::new("lenka_exact_ratio", &key, d, e, e, 1e-9, d < 1e-9));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(&(1.0, 2)), digest(&(1.0, 2)));
        assert_ne!(digest(&1.0), digest(&2.0));
        assert_eq!(digest(&"x").len(), 16);
    }

    #[test]
    fn sweep_has_sixty() {
        assert_eq!(t_sweep().len(), 60);
    }
}
