//! Nonnegative, compactly supported step functions on (0, ∞).

use crate::error::{Error, Result};
use crate::expr::PiecewiseExpr;
use serde::{Deserialize, Serialize};

/// `values[i]` is the value on `(breakpoints[i-1], breakpoints[i])`, with an
/// implicit left endpoint 0; the function vanishes beyond the last breakpoint.
///
/// Canonical form: adjacent equal values are merged and trailing zero
/// segments dropped, so structural equality is equality of functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStep")]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawStep {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawStep> for StepFunction {
    type Error = Error;
    fn try_from(r: RawStep) -> Result<Self> {
        StepFunction::new(r.breakpoints, r.values)
    }
}

/// Outcome of the Hardy-Littlewood-Pólya comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Hlp {
    Holds,
    FailsAt(f64),
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidFunction(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        let mut prev = 0.0;
        for &t in &breakpoints {
            if !(t.is_finite() && t > prev) {
                return Err(Error::InvalidFunction(
                    "breakpoints must be finite, positive and strictly increasing".into(),
                ));
            }
            prev = t;
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidFunction("values must be finite and nonnegative".into()));
        }
        Ok(Self::canonical(breakpoints, values))
    }

    fn canonical(breakpoints: Vec<f64>, values: Vec<f64>) -> Self {
        let mut b: Vec<f64> = Vec::with_capacity(breakpoints.len());
        let mut v: Vec<f64> = Vec::with_capacity(values.len());
        for (t, x) in breakpoints.into_iter().zip(values) {
            if let Some(last) = v.last() {
                if *last == x {
                    *b.last_mut().unwrap() = t;
                    continue;
                }
            }
            b.push(t);
            v.push(x);
        }
        while v.last() == Some(&0.0) {
            v.pop();
            b.pop();
        }
        StepFunction { breakpoints: b, values: v }
    }

    pub fn zero() -> Self {
        StepFunction { breakpoints: vec![], values: vec![] }
    }

    /// χ_(a,b) for 0 ≤ a < b.
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && b > a && b.is_finite()) {
            return Err(Error::InvalidFunction(format!("bad interval ({a}, {b})")));
        }
        if a == 0.0 {
            Self::new(vec![b], vec![1.0])
        } else {
            Self::new(vec![a, b], vec![0.0, 1.0])
        }
    }

    /// Builds a function from consecutive `(length, value)` blocks starting at 0.
    pub fn from_blocks(blocks: &[(f64, f64)]) -> Result<Self> {
        let mut t = 0.0;
        let mut b = Vec::with_capacity(blocks.len());
        let mut v = Vec::with_capacity(blocks.len());
        for &(len, val) in blocks {
            if !(len > 0.0) {
                return Err(Error::InvalidFunction("block lengths must be positive".into()));
            }
            t += len;
            b.push(t);
            v.push(val);
        }
        Self::new(b, v)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Iterates `(left, right, value)` over all segments, zero ones included.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints.iter().enumerate().map(move |(i, &r)| {
            let l = if i == 0 { 0.0 } else { self.breakpoints[i - 1] };
            (l, r, self.values[i])
        })
    }

    /// Value at `t`, using the segment `(t_{i-1}, t_i]`.
    pub fn eval(&self, t: f64) -> f64 {
        let i = self.breakpoints.partition_point(|&b| b < t);
        self.values.get(i).copied().unwrap_or(0.0)
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn support_measure(&self) -> f64 {
        self.segments().filter(|s| s.2 > 0.0).map(|(l, r, _)| r - l).sum()
    }

    pub fn integral(&self) -> f64 {
        self.segments().map(|(l, r, v)| v * (r - l)).sum()
    }

    /// ∫_0^t f.
    pub fn primitive(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for (l, r, v) in self.segments() {
            if t <= l {
                break;
            }
            acc += v * (r.min(t) - l);
        }
        acc
    }

    /// ∫_a^b f, allowing `b = ∞`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        self.primitive(b.min(self.end())) - self.primitive(a.min(self.end()))
    }

    /// Right end of the support hull.
    pub fn end(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    /// Lebesgue measure of {f > λ}.
    pub fn distribution(&self, lambda: f64) -> f64 {
        self.segments().filter(|s| s.2 > lambda).map(|(l, r, _)| r - l).sum()
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    /// The nonincreasing rearrangement f*.
    pub fn rearrange(&self) -> StepFunction {
        if self.is_nonincreasing() {
            return self.clone();
        }
        let mut blocks: Vec<(f64, f64)> =
            self.segments().filter(|s| s.2 > 0.0).map(|(l, r, v)| (r - l, v)).collect();
        blocks.sort_by(|x, y| y.1.total_cmp(&x.1));
        // merging equal levels before accumulating keeps the breakpoints exact sums
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(blocks.len());
        for (len, v) in blocks {
            match merged.last_mut() {
                Some(last) if last.1 == v => last.0 += len,
                _ => merged.push((len, v)),
            }
        }
        Self::from_blocks(&merged).expect("rearrangement of a valid function is valid")
    }

    /// f** = (1/t)∫_0^t f*, exactly.
    pub fn doublestar(&self) -> PiecewiseExpr {
        crate::operators::apply_p(&self.rearrange())
    }

    /// (D_a f)(t) = f(a t).
    pub fn dilate(&self, a: f64) -> Result<StepFunction> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(crate::error::invalid(format!("dilation factor must be positive, got {a}")));
        }
        Ok(Self::canonical(self.breakpoints.iter().map(|t| t / a).collect(), self.values.clone()))
    }

    pub fn scale(&self, c: f64) -> StepFunction {
        assert!(c >= 0.0 && c.is_finite(), "scale factor must be finite and nonnegative");
        Self::canonical(self.breakpoints.clone(), self.values.iter().map(|v| v * c).collect())
    }

    /// Union of both breakpoint sets.
    pub fn common_grid(&self, other: &StepFunction) -> Vec<f64> {
        let mut g: Vec<f64> = self.breakpoints.iter().chain(&other.breakpoints).copied().collect();
        g.sort_by(f64::total_cmp);
        g.dedup();
        g
    }

    fn zip_with(&self, other: &StepFunction, op: impl Fn(f64, f64) -> f64) -> StepFunction {
        let grid = self.common_grid(other);
        let values = grid.iter().map(|&t| op(self.eval(t), other.eval(t))).collect();
        Self::canonical(grid, values)
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn min(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, f64::min)
    }

    pub fn max(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, f64::max)
    }

    /// f ≤ g everywhere.
    pub fn le(&self, other: &StepFunction) -> bool {
        self.common_grid(other).iter().all(|&t| self.eval(t) <= other.eval(t))
    }

    /// ∫ f g.
    pub fn inner(&self, other: &StepFunction) -> f64 {
        self.mul(other).integral()
    }

    /// Decides ∫_0^t f* ≤ ∫_0^t g* for all t. Both sides are piecewise linear,
    /// so the union grid of the rearrangements decides it. A relative slack of
    /// 1e-12 absorbs rounding in the partial sums.
    pub fn hlp_compare(f: &StepFunction, g: &StepFunction) -> Hlp {
        let fs = f.rearrange();
        let gs = g.rearrange();
        for t in fs.common_grid(&gs) {
            let a = fs.primitive(t);
            let b = gs.primitive(t);
            if a > b + 1e-12 * (a.abs() + b.abs()) {
                return Hlp::FailsAt(t);
            }
        }
        Hlp::Holds
    }

    pub fn to_expr(&self) -> PiecewiseExpr {
        PiecewiseExpr::from_step(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(b: &[f64], v: &[f64]) -> StepFunction {
        StepFunction::new(b.to_vec(), v.to_vec()).unwrap()
    }

    #[test]
    fn rearrange_examples() {
        let f = sf(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]);
        assert_eq!(f.rearrange(), sf(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]));
        let g = sf(&[1.0, 2.0], &[2.0, 1.0]);
        assert_eq!(g.rearrange(), g);
        let h = sf(&[0.5, 1.25], &[0.0, 2.0]);
        assert_eq!(h.rearrange(), sf(&[0.75], &[2.0]));
    }

    #[test]
    fn canonical_merging() {
        let f = sf(&[1.0, 2.0, 3.0, 4.0], &[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(f.breakpoints(), &[2.0]);
        assert_eq!(f.values(), &[1.0]);
        assert!(sf(&[1.0], &[0.0]).is_zero());
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(StepFunction::new(vec![1.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(StepFunction::new(vec![1.0], vec![-1.0]).is_err());
        assert!(StepFunction::new(vec![0.0], vec![1.0]).is_err());
        assert!(StepFunction::new(vec![1.0, 2.0], vec![1.0]).is_err());
    }

    #[test]
    fn dilation() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        assert_eq!(chi.dilate(2.0).unwrap(), StepFunction::indicator(0.0, 0.5).unwrap());
        assert_eq!(chi.dilate(1.0).unwrap(), chi);
        assert!(chi.dilate(0.0).is_err());
        assert!(chi.dilate(-1.0).is_err());
    }

    #[test]
    fn distribution_examples() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        assert_eq!(chi.distribution(0.5), 1.0);
        assert_eq!(chi.distribution(1.0), 0.0);
        assert_eq!(sf(&[1.0, 4.0], &[3.0, 1.0]).distribution(0.5), 4.0);
    }

    #[test]
    fn hlp_examples() {
        let a = StepFunction::indicator(0.0, 2.0).unwrap();
        let b = StepFunction::indicator(0.0, 1.0).unwrap().scale(2.0);
        assert_eq!(StepFunction::hlp_compare(&a, &a), Hlp::Holds);
        assert_eq!(StepFunction::hlp_compare(&a, &b), Hlp::Holds);
        assert_eq!(StepFunction::hlp_compare(&b, &a), Hlp::FailsAt(1.0));
    }

    #[test]
    fn json_form() {
        let f: StepFunction = serde_json::from_str(r#"{"breakpoints":[1,2],"values":[2,1]}"#).unwrap();
        assert_eq!(f, sf(&[1.0, 2.0], &[2.0, 1.0]));
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"breakpoints":[1.0,2.0],"values":[2.0,1.0]}"#);
        assert!(serde_json::from_str::<StepFunction>(r#"{"breakpoints":[2,1],"values":[1,1]}"#).is_err());
    }
}
