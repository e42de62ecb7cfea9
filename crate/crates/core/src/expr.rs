//! Exact piecewise expressions on (0, ∞): each segment carries a sum of terms
//! `c`, `c·t^β` and `c·log t`. Images of step functions under the averaging
//! operators are exactly of this form.

use crate::error::{Error, Result};
use crate::stepfn::StepFunction;
use crate::value::{de_f64_or_inf, ser_f64_or_inf, Extended};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TermKind {
    Const,
    Pow(f64),
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawTerm", try_from = "RawTerm")]
pub struct Term {
    pub coeff: f64,
    pub kind: TermKind,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    c: f64,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
}

impl From<Term> for RawTerm {
    fn from(t: Term) -> Self {
        let (kind, beta) = match t.kind {
            TermKind::Const => ("const", None),
            TermKind::Pow(b) => ("pow", Some(b)),
            TermKind::Log => ("log", None),
        };
        RawTerm { c: t.coeff, kind: kind.into(), beta }
    }
}

impl TryFrom<RawTerm> for Term {
    type Error = Error;
    fn try_from(r: RawTerm) -> Result<Self> {
        let kind = match (r.kind.as_str(), r.beta) {
            ("const", _) => TermKind::Const,
            ("log", _) => TermKind::Log,
            ("pow", Some(b)) if b.is_finite() => TermKind::Pow(b),
            (k, _) => return Err(Error::InvalidFunction(format!("bad term kind {k:?}"))),
        };
        Ok(Term { coeff: r.c, kind })
    }
}

impl Term {
    pub fn constant(c: f64) -> Self {
        Term { coeff: c, kind: TermKind::Const }
    }
    pub fn pow(c: f64, beta: f64) -> Self {
        Term { coeff: c, kind: TermKind::Pow(beta) }
    }
    pub fn log(c: f64) -> Self {
        Term { coeff: c, kind: TermKind::Log }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.kind {
            TermKind::Const => self.coeff,
            TermKind::Pow(b) => self.coeff * t.powf(b),
            TermKind::Log => self.coeff * t.ln(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub from: f64,
    #[serde(serialize_with = "ser_f64_or_inf", deserialize_with = "de_f64_or_inf")]
    pub to: f64,
    pub terms: Vec<Term>,
}

impl Segment {
    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|x| x.eval(t)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn coeff_of(&self, pred: impl Fn(TermKind) -> bool) -> f64 {
        self.terms.iter().filter(|x| pred(x.kind)).map(|x| x.coeff).sum()
    }

    pub fn log_coeff(&self) -> f64 {
        self.coeff_of(|k| k == TermKind::Log)
    }

    pub fn const_coeff(&self) -> f64 {
        self.coeff_of(|k| k == TermKind::Const)
    }

    pub fn pow_terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.terms.iter().filter_map(|x| match x.kind {
            TermKind::Pow(b) => Some((x.coeff, b)),
            _ => None,
        })
    }

    /// `ln` of the value at `t = e^{ln_t}`, robust against overflow at extreme
    /// arguments. `None` when the value is not positive.
    pub fn ln_eval(&self, ln_t: f64) -> Option<f64> {
        if ln_t.abs() < 600.0 {
            let v = self.eval(ln_t.exp());
            if v.is_finite() && v > f64::MIN_POSITIVE {
                return Some(v.ln());
            }
            if v.is_finite() && v <= 0.0 {
                return None;
            }
        }
        let parts: Vec<(f64, f64)> = self
            .terms
            .iter()
            .filter_map(|x| {
                let (mag, sign) = match x.kind {
                    TermKind::Const => (x.coeff.abs().ln(), x.coeff.signum()),
                    TermKind::Pow(b) => (x.coeff.abs().ln() + b * ln_t, x.coeff.signum()),
                    TermKind::Log if ln_t == 0.0 => return None,
                    TermKind::Log => {
                        (x.coeff.abs().ln() + ln_t.abs().ln(), x.coeff.signum() * ln_t.signum())
                    }
                };
                Some((mag, sign))
            })
            .collect();
        let m = parts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        if !m.is_finite() {
            return None;
        }
        let s: f64 = parts.iter().map(|(mag, sign)| sign * (mag - m).exp()).sum();
        (s > 0.0).then(|| m + s.ln())
    }

    /// Points in the open segment where the derivative vanishes. Closed form
    /// when `t·g'(t)` has at most two nonconstant pieces, bracketing otherwise.
    pub fn stationary_points(&self) -> Vec<f64> {
        let lc = self.log_coeff();
        let pw: Vec<(f64, f64)> = self.pow_terms().map(|(c, b)| (c * b, b)).collect();
        let inside = |t: f64| t.is_finite() && t > self.from && t < self.to;
        let mut out = Vec::new();
        match (pw.len(), lc != 0.0) {
            (0, _) => {}
            (1, true) => {
                let r = -lc / pw[0].0;
                if r > 0.0 {
                    out.push(r.powf(1.0 / pw[0].1));
                }
            }
            (1, false) => {}
            (2, false) => {
                let r = -pw[1].0 / pw[0].0;
                if r > 0.0 {
                    out.push(r.powf(1.0 / (pw[0].1 - pw[1].1)));
                }
            }
            _ => {
                let d = |u: f64| {
                    let t = u.exp();
                    pw.iter().map(|(cb, b)| cb * t.powf(*b)).sum::<f64>() + lc
                };
                let lo = if self.from > 0.0 { self.from.ln() } else { self.to.ln() - 60.0 };
                let hi = if self.to.is_finite() { self.to.ln() } else { lo + 60.0 };
                let n = 400;
                let mut prev_u = lo;
                let mut prev = d(lo);
                for k in 1..=n {
                    let u = lo + (hi - lo) * k as f64 / n as f64;
                    let cur = d(u);
                    if prev == 0.0 {
                        out.push(prev_u.exp());
                    } else if prev.signum() != cur.signum() && cur != 0.0 {
                        let (mut a, mut b) = (prev_u, u);
                        for _ in 0..200 {
                            let m = 0.5 * (a + b);
                            if d(m).signum() == d(a).signum() {
                                a = m;
                            } else {
                                b = m;
                            }
                        }
                        out.push((0.5 * (a + b)).exp());
                    }
                    prev_u = u;
                    prev = cur;
                }
            }
        }
        out.retain(|&t| inside(t));
        out
    }
}

/// Leading behavior `coeff · t^power · L(t)^log_power` of a function near 0
/// (with `L = 1 − log t`) or near ∞ (with `L = 1 + log t`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub coeff: f64,
    pub power: f64,
    pub log_power: f64,
}

impl Profile {
    pub fn constant(c: f64) -> Self {
        Profile { coeff: c, power: 0.0, log_power: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawExpr")]
pub struct PiecewiseExpr {
    segments: Vec<Segment>,
}

#[derive(Deserialize)]
struct RawExpr {
    segments: Vec<Segment>,
}

impl TryFrom<RawExpr> for PiecewiseExpr {
    type Error = Error;
    fn try_from(r: RawExpr) -> Result<Self> {
        PiecewiseExpr::new(r.segments)
    }
}

fn normalize(terms: Vec<Term>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for mut t in terms {
        if let TermKind::Pow(b) = t.kind {
            if b == 0.0 {
                t.kind = TermKind::Const;
            }
        }
        if let Some(e) = out.iter_mut().find(|e| e.kind == t.kind) {
            e.coeff += t.coeff;
        } else {
            out.push(t);
        }
    }
    out.retain(|t| t.coeff != 0.0);
    out
}

const REL: f64 = 1e-9;

impl PiecewiseExpr {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidFunction("expression needs at least one segment".into()));
        }
        let mut prev = 0.0;
        for s in &segments {
            if s.from != prev || !(s.to > s.from) {
                return Err(Error::InvalidFunction("segments must partition (0, ∞)".into()));
            }
            if s.terms.iter().any(|t| !t.coeff.is_finite()) {
                return Err(Error::InvalidFunction("coefficients must be finite".into()));
            }
            prev = s.to;
        }
        if prev != f64::INFINITY {
            return Err(Error::InvalidFunction("last segment must extend to infinity".into()));
        }
        Ok(Self::from_raw(segments))
    }

    fn from_raw(segments: Vec<Segment>) -> Self {
        PiecewiseExpr {
            segments: segments
                .into_iter()
                .map(|s| Segment { terms: normalize(s.terms), ..s })
                .collect(),
        }
    }

    pub(crate) fn build(segments: Vec<Segment>) -> Self {
        debug_assert!(Self::new(segments.clone()).is_ok());
        Self::from_raw(segments)
    }

    pub fn zero() -> Self {
        Self::from_raw(vec![Segment { from: 0.0, to: f64::INFINITY, terms: vec![] }])
    }

    pub fn from_step(f: &StepFunction) -> Self {
        let mut segs: Vec<Segment> =
            f.segments().map(|(l, r, v)| Segment { from: l, to: r, terms: vec![Term::constant(v)] }).collect();
        segs.push(Segment { from: f.end(), to: f64::INFINITY, terms: vec![] });
        Self::from_raw(segs)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_zero(&self) -> bool {
        self.segments.iter().all(Segment::is_zero)
    }

    /// Finite breakpoints between segments.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments[..self.segments.len() - 1].iter().map(|s| s.to).collect()
    }

    /// Index of the segment `(from, to]` containing `t`.
    pub fn segment_index(&self, t: f64) -> usize {
        self.segments.partition_point(|s| s.to < t).min(self.segments.len() - 1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.segments[self.segment_index(t)].eval(t)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_raw(
            self.segments
                .iter()
                .map(|s| Segment {
                    terms: s.terms.iter().map(|t| Term { coeff: t.coeff * c, ..*t }).collect(),
                    ..s.clone()
                })
                .collect(),
        )
    }

    /// Splits segments at the given points.
    pub fn refine(&self, points: &[f64]) -> Self {
        let mut out = Vec::with_capacity(self.segments.len() + points.len());
        for s in &self.segments {
            let mut cuts: Vec<f64> = points.iter().copied().filter(|&p| p > s.from && p < s.to).collect();
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut l = s.from;
            for c in cuts {
                out.push(Segment { from: l, to: c, terms: s.terms.clone() });
                l = c;
            }
            out.push(Segment { from: l, to: s.to, terms: s.terms.clone() });
        }
        Self::from_raw(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Segment, &Segment) -> Vec<Term>) -> Self {
        let mut pts = self.breakpoints();
        pts.extend(other.breakpoints());
        let a = self.refine(&pts);
        let b = other.refine(&pts);
        let segs = a
            .segments
            .iter()
            .zip(&b.segments)
            .map(|(x, y)| Segment { from: x.from, to: x.to, terms: f(x, y) })
            .collect();
        Self::from_raw(segs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |x, y| x.terms.iter().chain(&y.terms).copied().collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Pointwise product with a step function.
    pub fn mul_step(&self, f: &StepFunction) -> Self {
        let g = Self::from_step(f);
        self.zip(&g, |x, y| {
            let v = y.const_coeff();
            x.terms.iter().map(|t| Term { coeff: t.coeff * v, ..*t }).collect()
        })
    }

    /// ∫_a^b g with `0 ≤ a < b ≤ ∞`. Divergence of an improper end is decided
    /// term by term and reported as `Infinite`.
    pub fn integrate(&self, a: f64, b: f64) -> Extended {
        let mut total = 0.0;
        for s in &self.segments {
            let l = s.from.max(a);
            let r = s.to.min(b);
            if !(r > l) {
                continue;
            }
            for t in &s.terms {
                match term_integral(t, l, r) {
                    Some(v) => total += v,
                    None => return Extended::Infinite,
                }
            }
        }
        Extended::Finite(total)
    }

    pub fn integral(&self) -> Extended {
        self.integrate(0.0, f64::INFINITY)
    }

    /// Leading behavior near 0, `None` if the first segment vanishes.
    pub fn profile_at_zero(&self) -> Option<Profile> {
        let s = &self.segments[0];
        let neg = s.pow_terms().filter(|p| p.1 < 0.0).min_by(|x, y| x.1.total_cmp(&y.1));
        if let Some((c, b)) = neg {
            return Some(Profile { coeff: c.abs(), power: b, log_power: 0.0 });
        }
        let lc = s.log_coeff();
        if lc != 0.0 {
            return Some(Profile { coeff: lc.abs(), power: 0.0, log_power: 1.0 });
        }
        let c0 = s.const_coeff();
        if c0 != 0.0 {
            return Some(Profile::constant(c0.abs()));
        }
        s.pow_terms()
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .map(|(c, b)| Profile { coeff: c.abs(), power: b, log_power: 0.0 })
    }

    /// Leading behavior near ∞, `None` if the last segment vanishes.
    pub fn profile_at_infinity(&self) -> Option<Profile> {
        let s = self.segments.last().unwrap();
        let pos = s.pow_terms().filter(|p| p.1 > 0.0).max_by(|x, y| x.1.total_cmp(&y.1));
        if let Some((c, b)) = pos {
            return Some(Profile { coeff: c.abs(), power: b, log_power: 0.0 });
        }
        let lc = s.log_coeff();
        if lc != 0.0 {
            return Some(Profile { coeff: lc.abs(), power: 0.0, log_power: 1.0 });
        }
        let c0 = s.const_coeff();
        if c0 != 0.0 {
            return Some(Profile::constant(c0.abs()));
        }
        s.pow_terms()
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .map(|(c, b)| Profile { coeff: c.abs(), power: b, log_power: 0.0 })
    }

    /// Points where sup/monotonicity checks are evaluated: every finite
    /// breakpoint, closed-form stationary points, segment midpoints, and probes
    /// deep into the unbounded ends.
    pub fn critical_points(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        for s in &self.segments {
            if s.from > 0.0 {
                pts.push(s.from);
            }
            pts.extend(s.stationary_points());
            match (s.from > 0.0, s.to.is_finite()) {
                (true, true) => pts.push(0.5 * (s.from + s.to)),
                (false, true) => pts.extend([s.to * 0.5, s.to * 1e-3, s.to * 1e-9]),
                (true, false) => pts.extend([s.from * 2.0, s.from * 1e3, s.from * 1e9]),
                (false, false) => pts.extend([1e-9, 1e-3, 1.0, 1e3, 1e9]),
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Checks that the function is nonincreasing, comparing one-sided limits
    /// at breakpoints and values at ordered critical points inside segments.
    pub fn is_nonincreasing(&self) -> bool {
        let ok = |hi: f64, lo: f64| lo <= hi + REL * (hi.abs() + lo.abs()) + 1e-300;
        let mut last: Option<f64> = None;
        let all = self.critical_points();
        for s in &self.segments {
            let mut pts: Vec<f64> = all.iter().copied().filter(|&t| t >= s.from && t <= s.to).collect();
            if s.to.is_finite() {
                pts.push(s.to);
            }
            pts.sort_by(f64::total_cmp);
            for t in pts {
                let v = s.eval(t);
                if let Some(p) = last {
                    if !ok(p, v) {
                        return false;
                    }
                }
                last = Some(v);
            }
        }
        true
    }

    /// t^β · g(t). Logarithmic terms would leave the algebra.
    pub fn mul_pow(&self, beta: f64) -> Result<Self> {
        let mut segs = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            let mut terms = Vec::with_capacity(s.terms.len());
            for t in &s.terms {
                terms.push(match t.kind {
                    TermKind::Const => Term::pow(t.coeff, beta),
                    TermKind::Pow(b) => Term::pow(t.coeff, b + beta),
                    TermKind::Log => return Err(Error::Unsupported("t^β log t is not a term".into())),
                });
            }
            segs.push(Segment { terms, ..s.clone() });
        }
        Ok(Self::from_raw(segs))
    }

    /// (1/t)∫_0^t g. Supports constant, logarithmic and power terms with
    /// exponent ≠ −1; the result stays inside the term algebra.
    pub fn head_average(&self) -> Result<Self> {
        let mut k = 0.0;
        let mut segs = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            let l = s.from;
            let mut terms = vec![Term::pow(k, -1.0)];
            for t in &s.terms {
                match t.kind {
                    TermKind::Const => {
                        terms.push(Term::constant(t.coeff));
                        terms.push(Term::pow(-t.coeff * l, -1.0));
                    }
                    TermKind::Pow(b) if b != -1.0 => {
                        if l == 0.0 && b < -1.0 {
                            return Err(Error::Unsupported("head average diverges at 0".into()));
                        }
                        terms.push(Term::pow(t.coeff / (b + 1.0), b));
                        let lb = if l == 0.0 { 0.0 } else { l.powf(b + 1.0) };
                        terms.push(Term::pow(-t.coeff * lb / (b + 1.0), -1.0));
                    }
                    TermKind::Pow(_) => {
                        return Err(Error::Unsupported("head average of t^-1 leaves the term algebra".into()))
                    }
                    TermKind::Log => {
                        terms.push(Term::log(t.coeff));
                        terms.push(Term::constant(-t.coeff));
                        let fl = if l == 0.0 { 0.0 } else { l * l.ln() - l };
                        terms.push(Term::pow(-t.coeff * fl, -1.0));
                    }
                }
            }
            if s.to.is_finite() {
                match self.integrate(l, s.to) {
                    Extended::Finite(v) => k += v,
                    Extended::Infinite => return Err(Error::Unsupported("head average diverges".into())),
                }
            }
            segs.push(Segment { from: l, to: s.to, terms });
        }
        Ok(Self::from_raw(segs))
    }

    /// ∫_t^∞ g(s) s^w ds. Supports constant and power terms; fails if the
    /// tail diverges or a logarithmic term would need `t^a log t`.
    pub fn weighted_tail_integral(&self, w: f64) -> Result<Self> {
        let mut k = 0.0;
        let mut segs = Vec::with_capacity(self.segments.len());
        for s in self.segments.iter().rev() {
            let r = s.to;
            let mut terms = vec![Term::constant(k)];
            for t in &s.terms {
                let e = match t.kind {
                    TermKind::Const => w,
                    TermKind::Pow(b) => b + w,
                    TermKind::Log => {
                        return Err(Error::Unsupported("weighted tail of log term leaves the term algebra".into()))
                    }
                };
                let c = t.coeff;
                if !r.is_finite() && e >= -1.0 {
                    return Err(Error::Unsupported("weighted tail integral diverges".into()));
                }
                if e == -1.0 {
                    terms.push(Term::constant(c * r.ln()));
                    terms.push(Term::log(-c));
                } else {
                    let top = if r.is_finite() { r.powf(e + 1.0) } else { 0.0 };
                    terms.push(Term::constant(c * top / (e + 1.0)));
                    terms.push(Term::pow(-c / (e + 1.0), e + 1.0));
                }
            }
            let seg = Segment { from: s.from, to: r, terms: normalize(terms) };
            if s.from > 0.0 {
                k = seg.eval(s.from);
            }
            segs.push(seg);
        }
        segs.reverse();
        Ok(Self::from_raw(segs))
    }
}

fn term_integral(t: &Term, l: f64, r: f64) -> Option<f64> {
    let c = t.coeff;
    let inf = !r.is_finite();
    Some(match t.kind {
        TermKind::Const => {
            if inf {
                return None;
            }
            c * (r - l)
        }
        TermKind::Pow(b) if b == -1.0 => {
            if inf || l == 0.0 {
                return None;
            }
            c * (r / l).ln()
        }
        TermKind::Pow(b) if b < -1.0 => {
            if l == 0.0 {
                return None;
            }
            let top = if inf { 0.0 } else { r.powf(b + 1.0) };
            c * (top - l.powf(b + 1.0)) / (b + 1.0)
        }
        TermKind::Pow(b) => {
            if inf {
                return None;
            }
            let bot = if l == 0.0 { 0.0 } else { l.powf(b + 1.0) };
            c * (r.powf(b + 1.0) - bot) / (b + 1.0)
        }
        TermKind::Log => {
            if inf {
                return None;
            }
            let f = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() - x };
            c * (f(r) - f(l))
        }
    })
}
