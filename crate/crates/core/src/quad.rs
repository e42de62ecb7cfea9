//! Double-exponential quadrature.
//!
//! `tanh_sinh` handles finite intervals with integrable endpoint singularities,
//! `exp_sinh` the half-line `[0, ∞)` with exponential or algebraic decay.

use std::f64::consts::FRAC_PI_2;

const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 4;

/// Result of a quadrature with a crude error estimate (difference of the last
/// two refinement levels).
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

fn refine<F: FnMut(f64) -> f64>(mut node: F, umax: f64, tol: f64) -> Quadrature {
    // level 0: step 1 over [-umax, umax]
    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut j = 1.0;
    while j <= umax {
        sum += node(j) + node(-j);
        j += 1.0;
    }
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut u = h;
        let mut add = 0.0;
        while u <= umax {
            add += node(u) + node(-u);
            u += 2.0 * h;
        }
        sum += add;
        let cur = sum * h;
        err = (cur - prev).abs();
        if level >= MIN_LEVEL && err <= tol * cur.abs() {
            return Quadrature { value: cur, error: err };
        }
        if level >= MIN_LEVEL && cur == 0.0 && prev == 0.0 {
            return Quadrature { value: 0.0, error: 0.0 };
        }
        prev = cur;
    }
    Quadrature { value: prev, error: err }
}

/// ∫_a^b f(x) dx for finite `a < b`. Non-finite samples are dropped, which is
/// the right treatment for integrable endpoint singularities.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Quadrature {
    if !(b > a) {
        return Quadrature { value: 0.0, error: 0.0 };
    }
    let half = 0.5 * (b - a);
    let node = |u: f64| {
        let s = FRAC_PI_2 * u.sinh();
        let cs = s.cosh();
        let w = FRAC_PI_2 * u.cosh() / (cs * cs);
        if w == 0.0 || !w.is_finite() {
            return 0.0;
        }
        // distance from the nearer endpoint, computed without cancellation
        let comp = 2.0 / ((2.0 * s.abs()).exp() + 1.0);
        let x = if u >= 0.0 { b - half * comp } else { a + half * comp };
        if !(x > a && x < b) {
            return 0.0;
        }
        let y = f(x);
        if y.is_finite() { half * w * y } else { 0.0 }
    };
    refine(node, 4.0, tol)
}

/// ∫_0^∞ f(x) dx.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F, tol: f64) -> Quadrature {
    let node = |u: f64| {
        let s = FRAC_PI_2 * u.sinh();
        let x = s.exp();
        let w = FRAC_PI_2 * u.cosh() * x;
        if x == 0.0 || !x.is_finite() || !w.is_finite() {
            return 0.0;
        }
        let y = f(x);
        if y.is_finite() { w * y } else { 0.0 }
    };
    refine(node, 5.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_integrals() {
        let q = tanh_sinh(|x| x * x, 0.0, 3.0, 1e-12);
        assert!((q.value - 9.0).abs() < 1e-11);
        let q = exp_sinh(|x| (-x).exp(), 1e-12);
        assert!((q.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn endpoint_singularities() {
        // ∫_0^1 log(1/x) dx = 1 and ∫_0^1 x^{-1/2} dx = 2
        let q = tanh_sinh(|x| -x.ln(), 0.0, 1.0, 1e-12);
        assert!((q.value - 1.0).abs() < 1e-11, "{}", q.value);
        let q = tanh_sinh(|x| x.powf(-0.5), 0.0, 1.0, 1e-12);
        assert!((q.value - 2.0).abs() < 1e-10, "{}", q.value);
    }

    #[test]
    fn slow_algebraic_decay() {
        // ∫_0^∞ (1+x)^{-2} dx = 1, ∫_0^∞ e^{-x/100} dx = 100
        let q = exp_sinh(|x| (1.0 + x).powi(-2), 1e-12);
        assert!((q.value - 1.0).abs() < 1e-9, "{}", q.value);
        let q = exp_sinh(|x| (-x / 100.0).exp(), 1e-12);
        assert!((q.value - 100.0).abs() < 1e-7, "{}", q.value);
    }
}
