//! Direct operators on the real line for compactly supported step functions:
//! the uncentered (fractional) maximal function in exact branch form, the
//! Hilbert transform, the Riesz potential, and rearrangements of the results.

use crate::error::{invalid, Error, Result};
use crate::stepfn::StepFunction;
use serde::{Deserialize, Serialize};

/// A nonnegative step function on ℝ: `profile` translated by `offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLine")]
pub struct LineStepFunction {
    pub offset: f64,
    #[serde(flatten)]
    profile: StepFunction,
}

#[derive(Deserialize)]
struct RawLine {
    #[serde(default)]
    offset: f64,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawLine> for LineStepFunction {
    type Error = Error;
    fn try_from(r: RawLine) -> Result<Self> {
        LineStepFunction::new(r.offset, StepFunction::new(r.breakpoints, r.values)?)
    }
}

impl LineStepFunction {
    /// Leading zero levels are absorbed into the offset.
    pub fn new(offset: f64, profile: StepFunction) -> Result<Self> {
        if !offset.is_finite() {
            return Err(invalid("offset must be finite"));
        }
        let b = profile.breakpoints();
        let v = profile.values();
        let lead = v.iter().take_while(|&&x| x == 0.0).count();
        if lead == 0 || lead == v.len() {
            let offset = if lead == v.len() { 0.0 } else { offset };
            return Ok(LineStepFunction { offset, profile });
        }
        let shift = b[lead - 1];
        let nb = b[lead..].iter().map(|x| x - shift).collect();
        Ok(LineStepFunction { offset: offset + shift, profile: StepFunction::new(nb, v[lead..].to_vec())? })
    }

    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        if !(b > a) {
            return Err(invalid(format!("need a < b, got ({a}, {b})")));
        }
        Self::new(a, StepFunction::indicator(0.0, b - a)?)
    }

    pub fn zero() -> Self {
        LineStepFunction { offset: 0.0, profile: StepFunction::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.profile.is_zero()
    }

    pub fn profile(&self) -> &StepFunction {
        &self.profile
    }

    pub fn shift(&self, h: f64) -> Self {
        LineStepFunction { offset: self.offset + h, profile: self.profile.clone() }
    }

    /// Knots x_0 < … < x_m; the k-th level lives on (x_{k−1}, x_k).
    pub fn knots(&self) -> Vec<f64> {
        std::iter::once(self.offset).chain(self.profile.breakpoints().iter().map(|b| self.offset + b)).collect()
    }

    pub fn values(&self) -> &[f64] {
        self.profile.values()
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.offset {
            0.0
        } else {
            self.profile.eval(x - self.offset)
        }
    }

    pub fn rearrange(&self) -> StepFunction {
        self.profile.rearrange()
    }

    /// ∫_{−∞}^x f.
    pub fn primitive(&self, x: f64) -> f64 {
        if x <= self.offset { 0.0 } else { self.profile.primitive(x - self.offset) }
    }
}

/// One candidate value on an x-piece: an interval anchored at a knot with
/// its other end at x, of length d, scoring (m0 + v·d)·d^{γ−1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub anchor: f64,
    /// true when the anchor is the right endpoint, so d = anchor − x.
    pub right: bool,
    pub m0: f64,
    pub v: f64,
}

impl Branch {
    fn dist(&self, x: f64) -> f64 {
        if self.right { self.anchor - x } else { x - self.anchor }
    }

    fn score(&self, d: f64, gamma: f64) -> f64 {
        if self.m0 == 0.0 {
            return if gamma == 0.0 { self.v } else { self.v * d.powf(gamma) };
        }
        (self.m0 + self.v * d) * d.powf(gamma - 1.0)
    }
}

/// Maximal function on an interval of x (possibly unbounded at one end):
/// max of a constant and of finitely many branches.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxPiece {
    pub from: f64,
    pub to: f64,
    pub constant: f64,
    pub branches: Vec<Branch>,
}

impl MaxPiece {
    pub fn eval(&self, x: f64, gamma: f64) -> f64 {
        self.branches.iter().map(|b| b.score(b.dist(x), gamma)).fold(self.constant, f64::max)
    }
}

/// (Uncentered fractional) maximal function in exact piecewise form.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalExpr {
    pub gamma: f64,
    pub pieces: Vec<MaxPiece>,
}

impl MaximalExpr {
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.pieces.partition_point(|p| p.to < x).min(self.pieces.len().saturating_sub(1));
        self.pieces.get(i).map_or(0.0, |p| p.eval(x, self.gamma))
    }

    /// Largest value; every branch is quasiconvex in x so piece ends suffice.
    pub fn sup(&self) -> f64 {
        let mut best: f64 = 0.0;
        for p in &self.pieces {
            for x in [p.from, p.to] {
                if x.is_finite() {
                    best = best.max(p.eval(x, self.gamma));
                }
            }
        }
        best
    }

    /// |{x : Mf(x) > λ}|, exact up to root bracketing.
    pub fn distribution(&self, lambda: f64) -> f64 {
        if lambda <= 0.0 {
            return if self.pieces.is_empty() { 0.0 } else { f64::INFINITY };
        }
        let mut total = 0.0;
        for p in &self.pieces {
            let mut ivs: Vec<(f64, f64)> = Vec::new();
            if p.constant > lambda {
                ivs.push((p.from, p.to));
            } else {
                for b in &p.branches {
                    branch_superlevel(b, p.from, p.to, self.gamma, lambda, &mut ivs);
                }
            }
            total += union_measure(&mut ivs);
        }
        total
    }

    /// (Mf)*(t) = inf{λ : |{Mf > λ}| ≤ t}.
    pub fn rearrangement_at(&self, t: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, self.sup());
        if hi == 0.0 {
            return 0.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.distribution(mid) > t {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        hi
    }
}

fn union_measure(ivs: &mut [(f64, f64)]) -> f64 {
    ivs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut cur: Option<(f64, f64)> = None;
    for &(a, b) in ivs.iter() {
        match cur {
            Some((ca, cb)) if a <= cb => cur = Some((ca, cb.max(b))),
            Some((ca, cb)) => {
                total += cb - ca;
                cur = Some((a, b));
            }
            None => cur = Some((a, b)),
        }
    }
    if let Some((a, b)) = cur {
        total += b - a;
    }
    total
}

/// Pushes the x-intervals of [from, to] on which the branch exceeds λ.
fn branch_superlevel(b: &Branch, from: f64, to: f64, gamma: f64, lambda: f64, out: &mut Vec<(f64, f64)>) {
    let (d_lo, d_hi) = {
        let (a, c) = (b.dist(from), b.dist(to));
        (a.min(c).max(0.0), a.max(c))
    };
    let to_x = |d: f64| if b.right { b.anchor - d } else { b.anchor + d };
    let h = |d: f64| b.score(d, gamma);
    // split at the interior minimum, if any
    let mut cuts = vec![d_lo];
    if gamma > 0.0 && b.m0 > 0.0 && b.v > 0.0 {
        let ds = (1.0 - gamma) * b.m0 / (gamma * b.v);
        if ds > d_lo && ds < d_hi {
            cuts.push(ds);
        }
    }
    cuts.push(d_hi);
    for w in cuts.windows(2) {
        let (l, r) = (w[0], w[1]);
        let hl = if l == 0.0 && b.m0 > 0.0 && gamma < 1.0 { f64::INFINITY } else { h(l) };
        let hr = if r.is_infinite() { tail_limit(b, gamma) } else { h(r) };
        let (dl, dr) = match (hl > lambda, hr > lambda) {
            (true, true) => (l, r),
            (false, false) => continue,
            (true, false) => (l, cross(&h, l, r, lambda, true)),
            (false, true) => (cross(&h, l, r, lambda, false), r),
        };
        let (xa, xb) = (to_x(dl), to_x(dr));
        out.push((xa.min(xb), xa.max(xb)));
    }
}

fn tail_limit(b: &Branch, gamma: f64) -> f64 {
    if gamma == 0.0 {
        b.v
    } else if b.v > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Crossing of a monotone h with λ on [l, r]; `decreasing` gives the shape.
fn cross(h: &impl Fn(f64) -> f64, l: f64, r: f64, lambda: f64, decreasing: bool) -> f64 {
    let (mut lo, mut hi) = (l, if r.is_finite() { r } else { (l.max(1.0)) * 2.0 });
    if !r.is_finite() {
        while (h(hi) > lambda) == decreasing {
            hi *= 2.0;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (h(mid) > lambda) == decreasing {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(1e-300) {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn maximal_generic(f: &LineStepFunction, gamma: f64) -> MaximalExpr {
    if f.is_zero() {
        return MaximalExpr { gamma, pieces: vec![] };
    }
    let xs = f.knots();
    let vs = f.values();
    let m = vs.len();
    let big_f: Vec<f64> = xs.iter().map(|&x| f.primitive(x)).collect();
    let avg = |i: usize, j: usize| (big_f[j] - big_f[i]) * (xs[j] - xs[i]).powf(gamma - 1.0);
    let mut pieces = Vec::with_capacity(m + 2);
    // left of the support: right anchors only, v = 0
    pieces.push(MaxPiece {
        from: f64::NEG_INFINITY,
        to: xs[0],
        constant: 0.0,
        branches: (1..=m).map(|j| Branch { anchor: xs[j], right: true, m0: big_f[j], v: 0.0 }).collect(),
    });
    for k in 1..=m {
        let v = vs[k - 1];
        let mut constant: f64 = 0.0;
        for i in 0..k {
            for j in k..=m {
                constant = constant.max(avg(i, j));
            }
        }
        let mut branches = Vec::new();
        for j in k..=m {
            let m0 = big_f[j] - big_f[k] - v * (xs[j] - xs[k]);
            branches.push(Branch { anchor: xs[j], right: true, m0, v });
        }
        for i in 0..k {
            let m0 = big_f[k - 1] - big_f[i] - v * (xs[k - 1] - xs[i]);
            branches.push(Branch { anchor: xs[i], right: false, m0, v });
        }
        pieces.push(MaxPiece { from: xs[k - 1], to: xs[k], constant, branches });
    }
    pieces.push(MaxPiece {
        from: xs[m],
        to: f64::INFINITY,
        constant: 0.0,
        branches: (0..m).map(|i| Branch { anchor: xs[i], right: false, m0: big_f[m] - big_f[i], v: 0.0 }).collect(),
    });
    MaximalExpr { gamma, pieces }
}

/// Mf(x) = sup over intervals Q ∋ x of the average of f over Q.
pub fn maximal_function(f: &LineStepFunction) -> MaximalExpr {
    maximal_generic(f, 0.0)
}

/// M_γ f(x) = sup over intervals Q ∋ x of |Q|^{γ−1} ∫_Q f.
pub fn fractional_maximal_function(f: &LineStepFunction, gamma: f64) -> Result<MaximalExpr> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid(format!("γ must lie in (0,1), got {gamma}")));
    }
    Ok(maximal_generic(f, gamma))
}

/// Principal-value Hilbert transform (1/π) p.v. ∫ f(y)/(x − y) dy.
pub fn hilbert_transform(f: &LineStepFunction, x: f64) -> Result<f64> {
    let xs = f.knots();
    if f.is_zero() {
        return Ok(0.0);
    }
    if xs.iter().any(|&k| k == x) {
        return Err(Error::AtBreakpoint(x));
    }
    let s: f64 = f.values().iter().enumerate().map(|(k, &v)| v * ((x - xs[k]).abs() / (x - xs[k + 1]).abs()).ln()).sum();
    Ok(s / std::f64::consts::PI)
}

/// c(γ) = Γ((1 − γ)/2) / (√π 2^γ Γ(γ/2)), the one-dimensional Riesz constant.
pub fn riesz_constant(gamma: f64) -> f64 {
    libm::tgamma((1.0 - gamma) / 2.0) / (std::f64::consts::PI.sqrt() * 2f64.powf(gamma) * libm::tgamma(gamma / 2.0))
}

/// I_γ f(x) = c(γ) ∫ f(y) |x − y|^{γ−1} dy.
pub fn riesz_potential(f: &LineStepFunction, gamma: f64, x: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(invalid(format!("γ must lie in (0,1), got {gamma}")));
    }
    let g = |u: f64| u.signum() * u.abs().powf(gamma) / gamma;
    let xs = f.knots();
    let s: f64 = f.values().iter().enumerate().map(|(k, &v)| v * (g(xs[k + 1] - x) - g(xs[k] - x))).sum();
    Ok(riesz_constant(gamma) * s)
}

/// Step approximation of g*: |g| sampled at cell midpoints of `grid`, cells
/// sorted by value. The finest cell width is the resolution in t.
pub fn empirical_rearrangement(g: impl Fn(f64) -> f64, grid: &[f64]) -> Result<StepFunction> {
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("grid must have at least two increasing points"));
    }
    let mut cells: Vec<(f64, f64)> = grid.windows(2).map(|w| (g(0.5 * (w[0] + w[1])).abs(), w[1] - w[0])).collect();
    let top = cells.iter().map(|c| c.0).fold(0.0, f64::max);
    if cells.iter().any(|c| !c.0.is_finite()) {
        return Err(Error::InfiniteRearrangement);
    }
    let ends = [cells[0].0, cells[cells.len() - 1].0];
    if top > 0.0 && ends.iter().any(|&e| e > 0.5 * top) && grid[grid.len() - 1] - grid[0] > 1e3 {
        return Err(Error::InfiniteRearrangement);
    }
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut b = Vec::with_capacity(cells.len());
    let mut v = Vec::with_capacity(cells.len());
    let mut pos = 0.0;
    for (val, w) in cells {
        pos += w;
        b.push(pos);
        v.push(val);
    }
    StepFunction::new(b, v)
}

/// Symmetric grid: uniform with spacing `h` on [lo, hi] plus geometric tails
/// out to distance `reach`.
pub fn line_grid(lo: f64, hi: f64, h: f64, reach: f64) -> Vec<f64> {
    let n = ((hi - lo) / h).ceil().max(1.0) as usize;
    let mut g: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
    let mut d = h;
    let mut right = Vec::new();
    let mut left = Vec::new();
    while d < reach {
        d *= 1.05;
        right.push(hi + d);
        left.push(lo - d);
    }
    left.reverse();
    left.extend(g.drain(..));
    left.extend(right);
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_of_indicator() {
        let f = LineStepFunction::indicator(0.0, 1.0).unwrap();
        let m = maximal_function(&f);
        for (x, want) in [(0.3, 1.0), (1.0, 1.0), (2.0, 0.5), (5.0, 0.2), (-1.0, 0.5), (-3.0, 0.25)] {
            assert!((m.eval(x) - want).abs() < 1e-14, "{x}");
        }
        assert!(maximal_function(&LineStepFunction::zero()).eval(0.0) == 0.0);
    }

    #[test]
    fn maximal_rearrangement_of_indicator() {
        let m = maximal_function(&LineStepFunction::indicator(0.0, 1.0).unwrap());
        for t in [0.1, 0.5, 1.0, 2.0, 7.0, 100.0] {
            let want = (2.0_f64 / (t + 1.0)).min(1.0);
            assert!((m.rearrangement_at(t) - want).abs() < 1e-9, "{t}");
        }
    }

    #[test]
    fn fractional_tends_to_maximal() {
        let f = LineStepFunction::new(-1.0, StepFunction::new(vec![0.5, 2.0, 3.0], vec![2.0, 0.5, 1.5]).unwrap()).unwrap();
        let m = maximal_function(&f);
        let mg = fractional_maximal_function(&f, 1e-9).unwrap();
        for k in 0..40 {
            let x = -4.0 + 0.2 * k as f64 + 0.01;
            assert!((m.eval(x) - mg.eval(x)).abs() < 1e-6);
        }
    }

    #[test]
    fn hilbert_and_riesz() {
        let f = LineStepFunction::indicator(-1.0, 1.0).unwrap();
        let pi = std::f64::consts::PI;
        assert!((hilbert_transform(&f, 2.0).unwrap() - 3f64.ln() / pi).abs() < 1e-15);
        assert!((hilbert_transform(&f, -2.0).unwrap() + 3f64.ln() / pi).abs() < 1e-15);
        assert!(matches!(hilbert_transform(&f, 1.0), Err(Error::AtBreakpoint(_))));
        let g = 0.4;
        assert!((riesz_potential(&f, g, 0.0).unwrap() - riesz_constant(g) * 2.0 / g).abs() < 1e-14);
        assert_eq!(riesz_potential(&LineStepFunction::zero(), g, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn empirical_indicator() {
        let f = LineStepFunction::indicator(0.0, 1.0).unwrap();
        let grid: Vec<f64> = (0..=40).map(|k| -1.0 + 0.05 * k as f64).collect();
        let r = empirical_rearrangement(|x| f.eval(x), &grid).unwrap();
        assert!((r.support_measure() - 1.0).abs() < 1e-12 && r.sup() == 1.0);
        let r = empirical_rearrangement(|_| 0.0, &grid).unwrap();
        assert!(r.is_zero());
        let wide = line_grid(-10.0, 10.0, 0.1, 1e4);
        assert!(matches!(empirical_rearrangement(|_| 1.0, &wide), Err(Error::InfiniteRearrangement)));
    }

    #[test]
    fn json_offset() {
        let f: LineStepFunction = serde_json::from_str(r#"{"offset":-2,"breakpoints":[1,3],"values":[0,1]}"#).unwrap();
        assert_eq!(f.knots(), vec![-1.0, 1.0]);
    }
}
