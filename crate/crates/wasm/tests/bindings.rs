use ricalc_wasm::{maximal_json, norm_json, optimal_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn norm_of_two_level_function() {
    let v = parse(&norm_json(r#"{"breakpoints":[1,3],"values":[2,1]}"#, r#"{"p":2,"q":1,"A":[0,0]}"#).unwrap());
    // ∫ t^{-1/2} f* = 2·2 + 2(√3 − 1)
    let want = 4.0 + 2.0 * (3f64.sqrt() - 1.0);
    assert!((v["value"].as_f64().unwrap() - want).abs() < 1e-12);
    let v = parse(&norm_json(r#"{"breakpoints":[1],"values":[1]}"#, r#"{"p":"inf","q":"inf","A":[0,0]}"#).unwrap());
    assert_eq!(v["value"], 1.0);
}

#[test]
fn infinite_norm_is_a_string() {
    let v = parse(&norm_json(r#"{"breakpoints":[1],"values":[1]}"#, r#"{"p":1,"q":1,"A":[-1,0]}"#).unwrap());
    assert!(v["value"].is_number() || v["value"] == "inf");
}

#[test]
fn optimal_lookup_and_errors() {
    let v = parse(&optimal_json("M", r#"{"p":1,"q":1,"A":[1.5,-2]}"#, "range", 1.0, 2.0).unwrap());
    assert_eq!(v["kind"], "lz");
    assert_eq!(v["params"]["A"], serde_json::json!([0.5, -3.0]));
    assert!(optimal_json("Z", r#"{"p":2,"q":2,"A":[0,0]}"#, "range", 1.0, 2.0).is_err());
    assert!(norm_json("{", "{}").is_err());
}

#[test]
fn maximal_samples_match_closed_form() {
    let v = parse(&maximal_json(r#"{"offset":0,"breakpoints":[1],"values":[1]}"#, 0.0, 5).unwrap());
    let mf: Vec<f64> = serde_json::from_value(v["Mf"].clone()).unwrap();
    assert_eq!(mf, vec![0.5, 0.8, 1.0, 0.8, 0.5]);
    let t: Vec<f64> = serde_json::from_value(v["t"].clone()).unwrap();
    let ms: Vec<f64> = serde_json::from_value(v["Mf_star"].clone()).unwrap();
    for (t, m) in t.iter().zip(ms) {
        assert!((m - (2.0 / (t + 1.0)).min(1.0)).abs() < 1e-9);
    }
}
