//! Averaging and supremum operators on the half-line, exact on step inputs.

use crate::error::{invalid, Result};
use crate::expr::{PiecewiseExpr, Segment, Term};
use crate::stepfn::StepFunction;
use crate::value::Extended;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorKind {
    P,
    Q,
    S,
    SAlpha(f64),
    TAlpha(f64),
    R { gamma: f64, n: f64 },
    RPrime { gamma: f64, n: f64 },
}

impl OperatorKind {
    pub fn apply(&self, f: &StepFunction) -> Result<PiecewiseExpr> {
        match *self {
            OperatorKind::P => Ok(apply_p(f)),
            OperatorKind::Q => Ok(apply_q(f)),
            OperatorKind::S => Ok(apply_s(f)),
            OperatorKind::SAlpha(a) => apply_s_alpha(f, a),
            OperatorKind::TAlpha(a) => apply_t_alpha(f, a),
            OperatorKind::R { gamma, n } => apply_r(f, gamma, n),
            OperatorKind::RPrime { gamma, n } => apply_rprime(f, gamma, n),
        }
    }
}

fn tail(from: f64, terms: Vec<Term>) -> Segment {
    Segment { from, to: f64::INFINITY, terms }
}

/// Pf(t) = (1/t)∫_0^t f.
pub fn apply_p(f: &StepFunction) -> PiecewiseExpr {
    let mut mass = 0.0;
    let mut segs = Vec::new();
    for (l, r, v) in f.segments() {
        segs.push(Segment { from: l, to: r, terms: vec![Term::constant(v), Term::pow(mass - v * l, -1.0)] });
        mass += v * (r - l);
    }
    segs.push(tail(f.end(), vec![Term::pow(mass, -1.0)]));
    PiecewiseExpr::build(segs)
}

/// Qf(t) = ∫_t^∞ f(s) ds/s.
pub fn apply_q(f: &StepFunction) -> PiecewiseExpr {
    let segs: Vec<(f64, f64, f64)> = f.segments().collect();
    let mut out = vec![tail(f.end(), vec![])];
    let mut g = 0.0;
    for &(l, r, v) in segs.iter().rev() {
        out.push(Segment { from: l, to: r, terms: vec![Term::constant(v * r.ln() + g), Term::log(-v)] });
        if l > 0.0 {
            g += v * (r / l).ln();
        }
    }
    out.reverse();
    PiecewiseExpr::build(out)
}

/// Sf = Pf + Qf.
pub fn apply_s(f: &StepFunction) -> PiecewiseExpr {
    apply_p(f).add(&apply_q(f))
}

fn check_exponent(gamma: f64, n: f64) -> Result<f64> {
    if !(n > 0.0 && gamma > 0.0 && gamma < n && n.is_finite()) {
        return Err(invalid(format!("need 0 < γ < n, got γ = {gamma}, n = {n}")));
    }
    Ok(gamma / n)
}

/// S_α f(t) = t^{1/α−1}∫_0^t f + ∫_t^∞ f(s)s^{1/α−1} ds for α > 1.
pub fn apply_s_alpha(f: &StepFunction, alpha: f64) -> Result<PiecewiseExpr> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(invalid(format!("S_α needs α > 1, got {alpha}")));
    }
    let e = 1.0 / alpha;
    let segs: Vec<(f64, f64, f64)> = f.segments().collect();
    let mut heads = Vec::with_capacity(segs.len());
    let mut mass = 0.0;
    for &(l, r, v) in &segs {
        heads.push(mass);
        mass += v * (r - l);
    }
    let mut out = vec![tail(f.end(), vec![Term::pow(mass, e - 1.0)])];
    let mut g = 0.0;
    for (i, &(l, r, v)) in segs.iter().enumerate().rev() {
        let rpow = r.powf(e);
        out.push(Segment {
            from: l,
            to: r,
            terms: vec![
                Term::pow(v * (1.0 - alpha), e),
                Term::pow(heads[i] - v * l, e - 1.0),
                Term::constant(v * alpha * rpow + g),
            ],
        });
        g += v * alpha * (rpow - l.powf(e));
    }
    out.reverse();
    Ok(PiecewiseExpr::build(out))
}

/// T_α f(t) = t^{−α} sup_{s≥t} s^α f*(s) for α ≥ 0.
///
/// On each level interval of f* the supremum of s^α f*(s) is approached at
/// the right endpoint, so on level i the result is `max_{j≥i} t_j^α v_j · t^{−α}`.
pub fn apply_t_alpha(f: &StepFunction, alpha: f64) -> Result<PiecewiseExpr> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(invalid(format!("T_α needs α ≥ 0, got {alpha}")));
    }
    let fs = f.rearrange();
    let segs: Vec<(f64, f64, f64)> = fs.segments().collect();
    let mut out = vec![tail(fs.end(), vec![])];
    let mut m: f64 = 0.0;
    for &(l, r, v) in segs.iter().rev() {
        m = m.max(r.powf(alpha) * v);
        out.push(Segment { from: l, to: r, terms: vec![Term::pow(m, -alpha)] });
    }
    out.reverse();
    Ok(PiecewiseExpr::build(out))
}

/// Rg(t) = ∫_t^∞ g(s) s^{γ/n−1} ds.
pub fn apply_r(g: &StepFunction, gamma: f64, n: f64) -> Result<PiecewiseExpr> {
    let b = check_exponent(gamma, n)?;
    let segs: Vec<(f64, f64, f64)> = g.segments().collect();
    let mut out = vec![tail(g.end(), vec![])];
    let mut acc = 0.0;
    for &(l, r, v) in segs.iter().rev() {
        let rb = r.powf(b);
        out.push(Segment {
            from: l,
            to: r,
            terms: vec![Term::constant(v * rb / b + acc), Term::pow(-v / b, b)],
        });
        acc += v * (rb - l.powf(b)) / b;
    }
    out.reverse();
    Ok(PiecewiseExpr::build(out))
}

/// R′g(t) = t^{γ/n−1}∫_0^t g.
pub fn apply_rprime(g: &StepFunction, gamma: f64, n: f64) -> Result<PiecewiseExpr> {
    let b = check_exponent(gamma, n)?;
    let mut mass = 0.0;
    let mut segs = Vec::new();
    for (l, r, v) in g.segments() {
        segs.push(Segment { from: l, to: r, terms: vec![Term::pow(v, b), Term::pow(mass - v * l, b - 1.0)] });
        mass += v * (r - l);
    }
    segs.push(tail(g.end(), vec![Term::pow(mass, b - 1.0)]));
    Ok(PiecewiseExpr::build(segs))
}

/// Q(f**) in closed form.
pub fn q_of_doublestar(f: &StepFunction) -> PiecewiseExpr {
    f.doublestar().weighted_tail_integral(-1.0).expect("f** has only constant and t^-1 terms")
}

/// P(Qf) in closed form.
pub fn p_of_q(f: &StepFunction) -> PiecewiseExpr {
    apply_q(f).head_average().expect("Qf has only constant and log terms")
}

/// Q(Pf) in closed form.
pub fn q_of_p(f: &StepFunction) -> PiecewiseExpr {
    apply_p(f).weighted_tail_integral(-1.0).expect("Pf has only constant and t^-1 terms")
}

/// c_α ∫_t^∞ (Pf)(s) s^{1/α−1} ds with c_α = (α−1)/α; equals S_α f.
pub fn s_alpha_via_p(f: &StepFunction, alpha: f64) -> Result<PiecewiseExpr> {
    if !(alpha > 1.0) {
        return Err(invalid(format!("S_α needs α > 1, got {alpha}")));
    }
    Ok(apply_p(f).weighted_tail_integral(1.0 / alpha - 1.0)?.scale((alpha - 1.0) / alpha))
}

/// Absolute defect |∫(Pf)g − ∫f(Qg)| together with both sides.
pub fn check_pq_duality(f: &StepFunction, g: &StepFunction) -> (f64, f64, f64) {
    let lhs = apply_p(f).mul_step(g).integral().to_f64();
    let rhs = apply_q(g).mul_step(f).integral().to_f64();
    ((lhs - rhs).abs(), lhs, rhs)
}

/// Both sides of ∫(R′f)g = ∫f(Rg).
pub fn rprime_r_duality(f: &StepFunction, g: &StepFunction, gamma: f64, n: f64) -> Result<(f64, f64)> {
    let lhs = apply_rprime(f, gamma, n)?.mul_step(g).integral();
    let rhs = apply_r(g, gamma, n)?.mul_step(f).integral();
    Ok((finite(lhs), finite(rhs)))
}

fn finite(x: Extended) -> f64 {
    x.finite().expect("products with compactly supported step functions are integrable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(b: &[f64], v: &[f64]) -> StepFunction {
        StepFunction::new(b.to_vec(), v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + a.abs() + b.abs())
    }

    #[test]
    fn p_examples() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        let p = apply_p(&chi);
        for t in [0.1, 0.5, 1.0, 2.0, 10.0] {
            assert!(close(p.eval(t), (1.0f64).min(1.0 / t)));
        }
        assert!(apply_p(&StepFunction::zero()).is_zero());
        let p = apply_p(&StepFunction::indicator(1.0, 2.0).unwrap());
        for t in [2.0, 3.0, 50.0] {
            assert!(close(p.eval(t), 1.0 / t));
        }
        // f** for {2 on (0,1), 1 on (1,3)}: 2; 1 + 1/t; 4/t
        let d = sf(&[1.0, 3.0], &[2.0, 1.0]).doublestar();
        assert!(close(d.eval(0.5), 2.0));
        assert!(close(d.eval(2.0), 1.5));
        assert!(close(d.eval(4.0), 1.0));
    }

    #[test]
    fn q_examples() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        let q = apply_q(&chi);
        for t in [0.01, 0.5, 0.99] {
            assert!(close(q.eval(t), -t.ln()));
        }
        assert_eq!(q.eval(2.0), 0.0);
        let f = sf(&[1.0, 3.0], &[2.0, 1.0]);
        assert!(close(apply_q(&f).eval(1.0), 3f64.ln()));
        assert!(apply_q(&StepFunction::zero()).is_zero());
    }

    #[test]
    fn s_of_indicator_is_eta() {
        let s = apply_s(&StepFunction::indicator(0.0, 1.0).unwrap());
        for t in [0.01, 0.3, 1.0] {
            assert!(close(s.eval(t), 1.0 - t.ln()));
        }
        for t in [1.5, 7.0] {
            assert!(close(s.eval(t), 1.0 / t));
        }
    }

    #[test]
    fn s_alpha_examples() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        let s = apply_s_alpha(&chi, 2.0).unwrap();
        assert!(close(s.eval(1.0), 1.0));
        assert!(apply_s_alpha(&chi, 1.0).is_err());
        assert!(apply_s_alpha(&StepFunction::zero(), 3.0).unwrap().is_zero());
    }

    #[test]
    fn t_alpha_examples() {
        let a = 2.5;
        let chi = StepFunction::indicator(0.0, a).unwrap();
        let t = apply_t_alpha(&chi, 0.5).unwrap();
        for s in [0.1, 1.0, 2.4] {
            assert!(close(t.eval(s), a.sqrt() / s.sqrt()));
        }
        assert_eq!(t.eval(3.0), 0.0);
        let f = sf(&[1.0, 4.0], &[2.0, 1.0]);
        let t = apply_t_alpha(&f, 0.5).unwrap();
        for s in [0.25, 1.0, 2.0, 3.9] {
            assert!(close(t.eval(s), 2.0 / s.sqrt()));
        }
        let t0 = apply_t_alpha(&sf(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]), 0.0).unwrap();
        for s in [0.5, 1.5, 2.5] {
            assert_eq!(t0.eval(s), sf(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).eval(s));
        }
    }

    #[test]
    fn r_examples() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        let (gamma, n) = (1.0, 3.0);
        let r = apply_r(&chi, gamma, n).unwrap();
        for t in [0.001, 0.2, 0.9] {
            assert!(close(r.eval(t), 3.0 * (1.0 - t.powf(1.0 / 3.0))));
        }
        assert_eq!(r.eval(1.5), 0.0);
        assert!(apply_r(&chi, 3.0, 3.0).is_err());
    }

    #[test]
    fn duality_on_indicator() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        let (d, l, r) = check_pq_duality(&chi, &chi);
        assert!(d < 1e-15 && close(l, 1.0) && close(r, 1.0));
        let (d, _, _) = check_pq_duality(&StepFunction::zero(), &chi);
        assert_eq!(d, 0.0);
    }
}
