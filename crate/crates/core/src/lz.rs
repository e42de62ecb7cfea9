//! Lorentz-Zygmund norms with broken logarithmic weights.

use crate::error::{invalid, Error, Result};
use crate::expr::{PiecewiseExpr, Profile, Segment};
use crate::quad::{exp_sinh, tanh_sinh};
use crate::stepfn::StepFunction;
use crate::value::{de_f64_or_inf, ser_f64_or_inf, Extended};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Relative tolerance of the quadrature behind q < ∞ norms.
pub const QUAD_TOL: f64 = 1e-10;
const EXP_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// weight applied to f*
    #[default]
    Star,
    /// weight applied to f**
    Doublestar,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LZParams {
    #[serde(serialize_with = "ser_f64_or_inf", deserialize_with = "de_f64_or_inf")]
    pub p: f64,
    #[serde(serialize_with = "ser_f64_or_inf", deserialize_with = "de_f64_or_inf")]
    pub q: f64,
    #[serde(rename = "A", default)]
    pub a: [f64; 2],
    #[serde(rename = "B", default)]
    pub b: Option<[f64; 2]>,
    #[serde(default)]
    pub variant: Variant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Certified,
    NotCertified,
}

/// Whether the functional satisfies the triangle inequality exactly or only
/// up to an (unknown) equivalence constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Exact,
    Equivalent,
}

pub const INF: f64 = f64::INFINITY;

/// ℓ^A(t): (1 − log t)^{α₀} on (0,1), (1 + log t)^{α∞} on [1,∞).
pub fn broken_log(t: f64, a: [f64; 2]) -> f64 {
    ln_broken_log(t.ln(), a).exp()
}

/// ℓℓ^B(t): (1 + log(1 − log t))^{β₀} on (0,1), (1 + log(1 + log t))^{β∞} on [1,∞).
pub fn broken_loglog(t: f64, b: [f64; 2]) -> f64 {
    ln_broken_loglog(t.ln(), b).exp()
}

fn ln_broken_log(u: f64, a: [f64; 2]) -> f64 {
    if u < 0.0 {
        if a[0] == 0.0 { 0.0 } else { a[0] * (-u).ln_1p() }
    } else if a[1] == 0.0 {
        0.0
    } else {
        a[1] * u.ln_1p()
    }
}

fn ln_broken_loglog(u: f64, b: [f64; 2]) -> f64 {
    if u < 0.0 {
        if b[0] == 0.0 { 0.0 } else { b[0] * (-u).ln_1p().ln_1p() }
    } else if b[1] == 0.0 {
        0.0
    } else {
        b[1] * u.ln_1p().ln_1p()
    }
}

fn zeroish(x: f64) -> bool {
    x.abs() <= EXP_EPS
}

/// Conjugate exponent.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        INF
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

impl LZParams {
    pub fn new(p: f64, q: f64, a: [f64; 2]) -> Result<Self> {
        let s = LZParams { p, q, a, b: None, variant: Variant::Star };
        s.validate()?;
        Ok(s)
    }

    pub fn lebesgue(p: f64) -> Self {
        Self::new(p, p, [0.0, 0.0]).expect("p ≥ 1")
    }

    pub fn lorentz(p: f64, q: f64) -> Self {
        Self::new(p, q, [0.0, 0.0]).expect("p, q ≥ 1")
    }

    pub fn with_b(mut self, b: [f64; 2]) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    pub fn star(self) -> Self {
        self.with_variant(Variant::Star)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x >= 1.0 && !x.is_nan();
        if !ok(self.p) || !ok(self.q) {
            return Err(invalid(format!("need p, q in [1, ∞], got p = {}, q = {}", self.p, self.q)));
        }
        if self.a.iter().chain(self.b.iter().flatten()).any(|x| !x.is_finite()) {
            return Err(invalid("log exponents must be finite"));
        }
        Ok(())
    }

    fn bb(&self) -> [f64; 2] {
        self.b.unwrap_or([0.0, 0.0])
    }

    fn inv_p(&self) -> f64 {
        if self.p.is_infinite() { 0.0 } else { 1.0 / self.p }
    }

    /// Tuples accepted as (equivalent to) rearrangement-invariant norms.
    pub fn certification(&self) -> Certification {
        let [a0, ai] = self.a;
        let plain = self.a == [0.0, 0.0] && self.b.is_none();
        let ok = (self.p > 1.0 && self.p.is_finite())
            || (self.p == 1.0 && self.q == 1.0 && (plain || (a0 >= 0.0 && ai <= 0.0 && self.b.is_none())))
            || (self.p.is_infinite() && self.q.is_infinite() && (plain || (a0 <= 0.0 && self.b.is_none())))
            || (self.p.is_infinite() && self.q.is_finite() && a0 + 1.0 / self.q < 0.0 && self.b.is_none());
        if ok { Certification::Certified } else { Certification::NotCertified }
    }

    /// p = ∞, q < ∞ with α₀ + 1/q ≥ 0 only contains the zero function.
    pub fn is_trivial(&self) -> bool {
        self.variant == Variant::Star && self.p.is_infinite() && self.q.is_finite() && {
            let [b0, _] = self.bb();
            let s = self.a[0] + 1.0 / self.q;
            s > EXP_EPS || (zeroish(s) && b0 * self.q >= -1.0)
        }
    }

    pub fn norm_kind(&self) -> NormKind {
        let plain = self.a == [0.0, 0.0] && self.b.is_none();
        match self.variant {
            Variant::Doublestar => NormKind::Exact,
            Variant::Star if plain && self.q <= self.p => NormKind::Exact,
            Variant::Star => NormKind::Equivalent,
        }
    }

    /// Associate parameters from the encoded table.
    pub fn associate(&self) -> Result<LZParams> {
        let nit = || Error::NotInTable(self.to_string());
        if self.b.is_some() {
            return Err(nit());
        }
        let [a0, ai] = self.a;
        let neg = [-a0, -ai];
        if self.p > 1.0 && self.p.is_finite() {
            return Ok(LZParams { p: conjugate(self.p), q: conjugate(self.q), a: neg, b: None, variant: Variant::Star });
        }
        if self.variant == Variant::Doublestar {
            return Err(nit());
        }
        if self.p == 1.0 && self.q == 1.0 && a0 >= 0.0 && ai <= 0.0 {
            return Ok(LZParams { p: INF, q: INF, a: neg, b: None, variant: Variant::Star });
        }
        if self.p.is_infinite() && self.q.is_infinite() && a0 <= 0.0 && ai >= 0.0 {
            return Ok(LZParams { p: 1.0, q: 1.0, a: neg, b: None, variant: Variant::Star });
        }
        Err(nit())
    }

    /// Whether ∫_0^ε (weight · g^q) (or sup) is finite for g with the given
    /// leading behavior near 0.
    pub fn finite_near_zero(&self, prof: Option<Profile>) -> bool {
        let Some(pr) = prof else { return true };
        let [b0, _] = self.bb();
        finite_end(self.inv_p(), pr, self.a[0], b0, self.q, true)
    }

    pub fn finite_near_infinity(&self, prof: Option<Profile>) -> bool {
        let Some(pr) = prof else { return true };
        let [_, bi] = self.bb();
        finite_end(self.inv_p(), pr, self.a[1], bi, self.q, false)
    }

    /// Analytic membership test for a nonincreasing, locally bounded function
    /// described by its behavior at both ends.
    pub fn contains_profile(&self, near_zero: Option<Profile>, near_inf: Option<Profile>) -> bool {
        let base = self.star();
        match self.variant {
            Variant::Star => base.finite_near_zero(near_zero) && base.finite_near_infinity(near_inf),
            Variant::Doublestar => {
                if near_zero.is_none() && near_inf.is_none() {
                    return true;
                }
                // g** keeps the behavior of g where g is not integrable and
                // decays like 1/t where it is
                if let Some(pr) = near_zero {
                    if pr.power < -1.0 - EXP_EPS || (zeroish(pr.power + 1.0) && pr.log_power >= -1.0) {
                        return false;
                    }
                }
                let one_over_t = Profile { coeff: 1.0, power: -1.0, log_power: 0.0 };
                let tail = match near_inf {
                    Some(pr) if pr.power > -1.0 + EXP_EPS => pr,
                    Some(pr) if zeroish(pr.power + 1.0) && pr.log_power > -1.0 => {
                        Profile { log_power: pr.log_power + 1.0, ..pr }
                    }
                    _ => one_over_t,
                };
                base.finite_near_zero(near_zero) && base.finite_near_infinity(Some(tail))
            }
        }
    }
}

/// `e` is 1/p, the profile adds its own power and log power.
fn finite_end(inv_p: f64, pr: Profile, alpha: f64, beta: f64, q: f64, at_zero: bool) -> bool {
    let sign = if at_zero { 1.0 } else { -1.0 };
    let e = inv_p + pr.power;
    let lam = alpha + pr.log_power;
    if q.is_infinite() {
        let x = sign * e;
        x > EXP_EPS || (zeroish(x) && (lam < -EXP_EPS || (zeroish(lam) && beta <= EXP_EPS)))
    } else {
        let x = sign * e * q;
        let l = lam * q;
        let m = beta * q;
        x > EXP_EPS || (zeroish(x) && (l < -1.0 - EXP_EPS || (zeroish(l + 1.0) && m < -1.0 - EXP_EPS)))
    }
}

impl fmt::Display for LZParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |x: f64| if x.is_infinite() { "∞".to_string() } else { format!("{x}") };
        let (l, r) = if self.variant == Variant::Doublestar { ("L^(", ")") } else { ("L^{", "}") };
        write!(f, "{l}{},{};[{},{}]", n(self.p), n(self.q), self.a[0], self.a[1])?;
        if let Some(b) = self.b {
            write!(f, ",[{},{}]", b[0], b[1])?;
        }
        write!(f, "{r}")
    }
}

/// ln of the q < ∞ weight t^{q/p−1} ℓ^{Aq} ℓℓ^{Bq} at t = e^u.
fn ln_weight_q(params: &LZParams, u: f64) -> f64 {
    let q = params.q;
    (q * params.inv_p() - 1.0) * u + q * ln_broken_log(u, params.a) + q * ln_broken_loglog(u, params.bb())
}

/// ln of the q = ∞ weight t^{1/p} ℓ^A ℓℓ^B at t = e^u.
fn ln_weight_sup(params: &LZParams, u: f64) -> f64 {
    params.inv_p() * u + ln_broken_log(u, params.a) + ln_broken_loglog(u, params.bb())
}

/// ∫_l^r of the q < ∞ weight, closed form when the log exponent times q is a
/// small nonnegative integer on each side of 1 and there is no loglog factor.
pub fn weight_integral(params: &LZParams, l: f64, r: f64) -> Extended {
    if !(r > l) {
        return Extended::ZERO;
    }
    if l < 1.0 && r > 1.0 {
        return weight_integral(params, l, 1.0) + weight_integral(params, 1.0, r);
    }
    let near_zero = r <= 1.0;
    if l == 0.0 && !params.star().finite_near_zero(Some(Profile::constant(1.0))) {
        return Extended::Infinite;
    }
    let alpha = if near_zero { params.a[0] } else { params.a[1] };
    let k = alpha * params.q;
    let rr = params.q * params.inv_p();
    if params.b.is_none() && k >= 0.0 && k <= 30.0 && k == k.round() {
        let k = k as i32;
        let prim = |t: f64| -> f64 {
            if near_zero {
                if t == 0.0 {
                    return 0.0;
                }
                let lg = 1.0 - t.ln();
                if rr == 0.0 {
                    return -lg.powi(k + 1) / (k + 1) as f64;
                }
                let mut s = 0.0;
                let mut fac = 1.0;
                for j in 0..=k {
                    s += fac * lg.powi(k - j) / rr.powi(j + 1);
                    fac *= (k - j) as f64;
                }
                t.powf(rr) * s
            } else {
                let m = 1.0 + t.ln();
                if rr == 0.0 {
                    return m.powi(k + 1) / (k + 1) as f64;
                }
                let mut s = 0.0;
                let mut fac = 1.0;
                for j in 0..=k {
                    s += fac * m.powi(k - j) / rr.powi(j + 1);
                    fac *= -((k - j) as f64);
                }
                t.powf(rr) * s
            }
        };
        return Extended::Finite(prim(r) - prim(l));
    }
    let unit = Segment { from: l, to: r, terms: vec![crate::expr::Term::constant(1.0)] };
    Extended::Finite(integrate_piece(params, &unit, l, r))
}

/// ∫_l^r weight · g^q over a piece where g is given by one segment, with
/// `0 ≤ l < r ≤ ∞` not straddling 1. Finiteness must be checked by the caller.
fn integrate_piece(params: &LZParams, seg: &Segment, l: f64, r: f64) -> f64 {
    let q = params.q;
    let ln_f = |u: f64| -> f64 {
        match seg.ln_eval(u) {
            Some(lg) => (ln_weight_q(params, u) + q * lg + u).exp(),
            None => 0.0,
        }
    };
    if l == 0.0 {
        let lr = r.ln();
        exp_sinh(|x| ln_f(lr - x), QUAD_TOL).value
    } else if r.is_infinite() {
        let ll = l.ln();
        exp_sinh(|x| ln_f(ll + x), QUAD_TOL).value
    } else {
        tanh_sinh(ln_f, l.ln(), r.ln(), QUAD_TOL).value
    }
}

fn split_at_one(l: f64, r: f64) -> Vec<(f64, f64)> {
    if l < 1.0 && r > 1.0 { vec![(l, 1.0), (1.0, r)] } else { vec![(l, r)] }
}

/// Norm of a nonincreasing expression `g` (so g* = g) under the star weight
/// of `params`, or of g** = P g under the double-star weight.
pub fn norm_of_decreasing(g: &PiecewiseExpr, params: &LZParams) -> Result<Extended> {
    params.validate()?;
    if params.variant == Variant::Doublestar {
        let avg = g.head_average()?;
        return norm_of_decreasing(&avg, &params.star());
    }
    if g.is_zero() {
        return Ok(Extended::ZERO);
    }
    if !params.finite_near_zero(g.profile_at_zero()) || !params.finite_near_infinity(g.profile_at_infinity()) {
        return Ok(Extended::Infinite);
    }
    if params.q.is_infinite() {
        return Ok(sup_weighted(g, params));
    }
    let mut total = 0.0;
    for s in g.segments() {
        if s.is_zero() {
            continue;
        }
        for (l, r) in split_at_one(s.from, s.to) {
            total += integrate_piece(params, s, l, r);
        }
    }
    Ok(Extended::Finite(total.powf(1.0 / params.q)))
}

/// sup_t t^{1/p} ℓ^A(t) ℓℓ^B(t) g(t), finiteness already established.
fn sup_weighted(g: &PiecewiseExpr, params: &LZParams) -> Extended {
    let mut best = f64::NEG_INFINITY;
    let nseg = g.segments().len();
    for (i, s) in g.segments().iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let h = |u: f64| -> f64 {
            match s.ln_eval(u) {
                Some(lg) => lg + ln_weight_sup(params, u),
                None => f64::NEG_INFINITY,
            }
        };
        if s.from == 0.0 {
            if let Some(pr) = g.profile_at_zero() {
                best = best.max(end_limit(params.inv_p(), pr, params.a[0], params.bb()[0]));
            }
        }
        if i + 1 == nseg {
            if let Some(pr) = g.profile_at_infinity() {
                best = best.max(end_limit(params.inv_p(), pr, params.a[1], params.bb()[1]));
            }
        }
        let lo = if s.from > 0.0 { s.from.ln() } else { s.to.min(1.0).ln() - 230.0 };
        let hi = if s.to.is_finite() { s.to.ln() } else { s.from.max(1.0).ln() + 230.0 };
        best = best.max(maximize(&h, lo, hi).exp());
    }
    Extended::Finite(best.max(0.0))
}

/// Limit of weight·g at an unbounded end where the product stays bounded.
fn end_limit(inv_p: f64, pr: Profile, alpha: f64, beta: f64) -> f64 {
    let e = inv_p + pr.power;
    let lam = alpha + pr.log_power;
    if zeroish(e) && zeroish(lam) && zeroish(beta) { pr.coeff } else { 0.0 }
}

/// Maximum of a continuous function on [lo, hi]: grid scan followed by
/// golden-section refinement around the best grid point.
pub(crate) fn maximize(h: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let n = ((hi - lo) * 8.0).clamp(64.0, 4000.0) as usize;
    let step = (hi - lo) / n as f64;
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..=n {
        let v = h(lo + step * k as f64);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let mut a = lo + step * (best_k.max(1) - 1) as f64;
    let mut b = (lo + step * (best_k + 1) as f64).min(hi);
    let gr = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let (mut fc, mut fd) = (h(c), h(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = h(d);
        }
    }
    best.max(fc).max(fd).max(h(lo)).max(h(hi))
}

/// ‖f‖ in L^{p,q;A,B} (star or double-star variant).
pub fn lz_norm(f: &StepFunction, params: &LZParams) -> Result<Extended> {
    params.validate()?;
    if f.is_zero() {
        return Ok(Extended::ZERO);
    }
    if params.variant == Variant::Doublestar {
        return norm_of_decreasing(&f.doublestar(), &params.star());
    }
    let fs = f.rearrange();
    if params.q.is_infinite() {
        return norm_of_decreasing(&fs.to_expr(), params);
    }
    let mut total = Extended::ZERO;
    for (l, r, v) in fs.segments() {
        total = total + weight_integral(params, l, r) * v.powf(params.q);
    }
    Ok(total.powf(1.0 / params.q))
}

/// φ_X(t) = ‖χ_(0,t)‖_X.
pub fn fundamental_function(params: &LZParams, t: f64) -> Result<Extended> {
    lz_norm(&StepFunction::indicator(0.0, t).map_err(|_| invalid(format!("t must be positive, got {t}")))?, params)
}

/// ‖f‖_X ‖g‖_{X′} − ∫fg.
pub fn holder_defect(f: &StepFunction, g: &StepFunction, params: &LZParams) -> Result<Extended> {
    let assoc = params.associate()?;
    let nf = lz_norm(f, params)?;
    let ng = lz_norm(g, &assoc)?;
    let prod = match (nf, ng) {
        (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a * b),
        (Extended::Finite(a), _) | (_, Extended::Finite(a)) if a == 0.0 => Extended::ZERO,
        _ => Extended::Infinite,
    };
    Ok(prod.map(|x| x - f.inner(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(a: f64) -> StepFunction {
        StepFunction::indicator(0.0, a).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn broken_log_examples() {
        assert!((broken_log((-1f64).exp(), [1.0, -1.0]) - 2.0).abs() < 1e-14);
        for a in [[1.0, 2.0], [-3.0, 0.5]] {
            assert_eq!(broken_log(1.0, a), 1.0);
        }
        let v = broken_loglog((-1f64).exp(), [2.0, 0.0]);
        assert!((v - (1.0 + 2f64.ln()).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn norm_examples() {
        let l11 = LZParams::lebesgue(1.0);
        assert_eq!(lz_norm(&chi(1.0), &l11).unwrap(), Extended::Finite(1.0));
        let x = LZParams::new(1.0, 1.0, [1.0, 0.0]).unwrap();
        assert!(rel(lz_norm(&chi(1.0), &x).unwrap().to_f64(), 2.0) < 1e-14);
        for (p, q, a) in [(2.0, 1.0, 3.0), (3.0, 2.0, 0.5), (1.5, 4.0, 7.0)] {
            let v = lz_norm(&chi(a), &LZParams::lorentz(p, q)).unwrap().to_f64();
            let want = (p / q).powf(1.0 / q) * a.powf(1.0 / p);
            assert!(rel(v, want) < 1e-13, "{p} {q} {a}: {v} vs {want}");
        }
    }

    #[test]
    fn closed_form_weights_agree_with_quadrature() {
        // integer k takes the closed form; perturb to force quadrature
        for (p, q, a) in [(2.0, 1.0, [1.0, 2.0]), (3.0, 2.0, [1.0, 0.5]), (1.0, 1.0, [2.0, 0.0])] {
            let x = LZParams::new(p, q, a).unwrap();
            let y = LZParams::new(p, q, [a[0] + 1e-13, a[1] + 1e-13]).unwrap();
            for (l, r) in [(0.0, 0.3), (0.2, 5.0), (2.0, 9.0)] {
                let u = weight_integral(&x, l, r).to_f64();
                let v = weight_integral(&y, l, r).to_f64();
                assert!(rel(u, v) < 1e-9, "{x} on ({l},{r}): {u} vs {v}");
            }
        }
    }

    #[test]
    fn sup_norms() {
        let linf = LZParams::lebesgue(INF);
        assert_eq!(lz_norm(&chi(3.0), &linf).unwrap(), Extended::Finite(1.0));
        // sup t^{1/2} χ_(0,4) = 2
        let l2inf = LZParams::lorentz(2.0, INF);
        assert!(rel(lz_norm(&chi(4.0), &l2inf).unwrap().to_f64(), 2.0) < 1e-12);
    }

    #[test]
    fn trivial_and_certified() {
        assert!(LZParams::lorentz(INF, 2.0).is_trivial());
        assert!(!LZParams::new(INF, 2.0, [-1.0, 0.0]).unwrap().is_trivial());
        assert_eq!(lz_norm(&chi(1.0), &LZParams::lorentz(INF, 2.0)).unwrap(), Extended::Infinite);
        assert_eq!(LZParams::lorentz(1.0, 2.0).certification(), Certification::NotCertified);
        assert_eq!(LZParams::lorentz(3.0, 1.0).certification(), Certification::Certified);
    }

    #[test]
    fn associates() {
        let x = LZParams::lebesgue(2.0);
        assert_eq!(x.associate().unwrap(), x);
        let y = LZParams::new(1.0, 1.0, [1.0, -1.0]).unwrap().associate().unwrap();
        assert_eq!((y.p, y.q, y.a), (INF, INF, [-1.0, 1.0]));
        let z = LZParams::new(3.0, 2.0, [0.5, -2.0]).unwrap().associate().unwrap();
        assert!(rel(z.p, 1.5) < 1e-15);
        assert_eq!((z.q, z.a), (2.0, [-0.5, 2.0]));
        assert!(LZParams::new(1.0, 1.0, [-1.0, 0.0]).unwrap().associate().is_err());
        assert!(LZParams::lorentz(1.0, 2.0).associate().is_err());
    }

    #[test]
    fn fundamental_functions() {
        for t in [0.1, 1.0, 10.0] {
            assert!(rel(fundamental_function(&LZParams::lebesgue(1.0), t).unwrap().to_f64(), t) < 1e-15);
            assert_eq!(fundamental_function(&LZParams::lebesgue(INF), t).unwrap(), Extended::Finite(1.0));
        }
    }

    #[test]
    fn bad_params() {
        assert!(LZParams::new(0.5, 1.0, [0.0, 0.0]).is_err());
        assert!(lz_norm(&chi(1.0), &LZParams { p: 2.0, q: 0.0, a: [0.0; 2], b: None, variant: Variant::Star }).is_err());
    }

    #[test]
    fn json_params() {
        let x: LZParams = serde_json::from_str(r#"{"p":"inf","q":1,"A":[-2,0],"B":null,"variant":"star"}"#).unwrap();
        assert_eq!(x.p, INF);
        let y: LZParams = serde_json::from_str(r#"{"p":2,"q":2,"A":[0,0]}"#).unwrap();
        assert_eq!(y, LZParams::lebesgue(2.0));
        let s = serde_json::to_string(&LZParams::lebesgue(INF)).unwrap();
        assert_eq!(s, r#"{"p":"inf","q":"inf","A":[0.0,0.0],"B":null,"variant":"star"}"#);
    }
}
