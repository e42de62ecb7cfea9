//! Browser bindings: LZ norms, optimal partner lookup and the exact maximal
//! function of a step function on the line.

use ricalc::euclid::{fractional_maximal_function, maximal_function, LineStepFunction};
use ricalc::lz::{lz_norm, LZParams};
use ricalc::optimal::{optimal_partner_lookup, ClassicalOperator, Direction};
use ricalc::{Extended, StepFunction};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn num(v: Extended) -> serde_json::Value {
    match v {
        Extended::Finite(x) => json!(x),
        Extended::Infinite => json!("inf"),
    }
}

pub fn norm_json(function: &str, space: &str) -> Result<String, String> {
    let f: StepFunction = serde_json::from_str(function).map_err(|e| format!("function: {e}"))?;
    let x: LZParams = serde_json::from_str(space).map_err(|e| format!("space: {e}"))?;
    let v = lz_norm(&f, &x).map_err(|e| e.to_string())?;
    Ok(json!({"value": num(v), "space": x.to_string(), "rearrangement": f.rearrange()}).to_string())
}

pub fn optimal_json(op: &str, space: &str, direction: &str, gamma: f64, n: f64) -> Result<String, String> {
    let x: LZParams = serde_json::from_str(space).map_err(|e| format!("space: {e}"))?;
    let op = match op {
        "M" => ClassicalOperator::MaximalM,
        "Mgamma" => ClassicalOperator::FractionalM { gamma, n },
        "H" => ClassicalOperator::HilbertH,
        "I" => ClassicalOperator::RieszI { gamma, n },
        _ => return Err(format!("unknown operator {op:?}")),
    };
    let dir = match direction {
        "range" => Direction::Range,
        "domain" => Direction::Domain,
        _ => return Err(format!("unknown direction {direction:?}")),
    };
    let r = optimal_partner_lookup(op, &x, dir).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

/// Samples of M_γ f on the line and of its rearrangement, for plotting.
/// γ = 0 gives the Hardy-Littlewood maximal function.
pub fn maximal_json(function: &str, gamma: f64, samples: usize) -> Result<String, String> {
    let f: LineStepFunction = serde_json::from_str(function).map_err(|e| format!("function: {e}"))?;
    let m = if gamma == 0.0 {
        maximal_function(&f)
    } else {
        fractional_maximal_function(&f, gamma).map_err(|e| e.to_string())?
    };
    let k = f.knots();
    let (lo, hi) = if k.len() > 1 { (k[0], k[k.len() - 1]) } else { (0.0, 1.0) };
    let pad = (hi - lo).max(1.0);
    let samples = samples.clamp(2, 5000);
    let xs: Vec<f64> = (0..samples).map(|i| lo - pad + 3.0 * pad * i as f64 / (samples - 1) as f64).collect();
    let fx: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    let mx: Vec<f64> = xs.iter().map(|&x| m.eval(x)).collect();
    let ts: Vec<f64> = (1..=samples).map(|i| 3.0 * pad * i as f64 / samples as f64).collect();
    let ms: Vec<f64> = ts.iter().map(|&t| m.rearrangement_at(t)).collect();
    let fss = f.rearrange().doublestar();
    let fs: Vec<f64> = ts.iter().map(|&t| fss.eval(t)).collect();
    Ok(json!({"x": xs, "f": fx, "Mf": mx, "t": ts, "Mf_star": ms, "f_doublestar": fs}).to_string())
}

#[wasm_bindgen]
pub fn norm(function: &str, space: &str) -> Result<String, JsValue> {
    norm_json(function, space).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn optimal(op: &str, space: &str, direction: &str, gamma: f64, n: f64) -> Result<String, JsValue> {
    optimal_json(op, space, direction, gamma, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn maximal(function: &str, gamma: f64, samples: usize) -> Result<String, JsValue> {
    maximal_json(function, gamma, samples).map_err(|e| JsValue::from_str(&e))
}
