//! Acceptance criteria, one PASS/FAIL line each.

use ricalc::verify::{self, Report, Row, Suite, SuiteConfig};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

fn run(suite: Suite) -> (Report, Duration) {
    let start = Instant::now();
    let r = verify::run(&SuiteConfig { suite, n: 1000, seed: 0, tol: None, jobs: 0 }).expect("suite runs");
    (r, start.elapsed())
}

fn rows<'a>(r: &'a Report, names: &[&str]) -> Vec<&'a Row> {
    r.rows.iter().filter(|x| names.contains(&x.check.as_str())).collect()
}

fn all_pass(rs: &[&Row]) -> bool {
    !rs.is_empty() && rs.iter().all(|r| r.pass)
}

struct Tally(Vec<(usize, bool)>);

impl Tally {
    fn record(&mut self, id: usize, ok: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.0.push((id, ok));
    }
}

#[test]
fn acceptance() {
    let mut t = Tally(Vec::new());
    let (pre, pre_time) = run(Suite::Preliminaries);

    // 1: exact identities
    let duality = rows(&pre, &["pq_duality"]);
    let stieltjes = rows(&pre, &["s_equals_p_plus_q", "s_star_equals_q_doublestar"]);
    let worst = duality.iter().chain(&stieltjes).map(|r| r.constant).fold(0.0, f64::max);
    let ok = duality.len() == 1000 && all_pass(&duality) && all_pass(&stieltjes) && pre_time < Duration::from_secs(10);
    t.record(1, ok, format!("{} duality pairs, worst relative defect {worst:e} (< 1e-9), suite time {pre_time:.2?} (< 10 s)", duality.len()));

    // 2: rearrangement axioms and HLP monotonicity
    let names = ["equimeasurable", "rearrange_idempotent", "doublestar_subadditive", "hardy_littlewood", "hardy_lemma"];
    let ax = rows(&pre, &names);
    let hlp = rows(&pre, &["hlp_monotone"]);
    let pairs = rows(&pre, &["equimeasurable"]).len();
    let hlp_pairs = hlp.len() / 5;
    let ok = pairs == 1000 && hlp_pairs == 200 && all_pass(&ax) && all_pass(&hlp);
    t.record(2, ok, format!("{pairs} pairs on rearrangement axioms, {hlp_pairs} HLP pairs x 5 spaces, failures {}", ax.iter().chain(&hlp).filter(|r| !r.pass).count()));

    let (lem, _) = run(Suite::Lemmas);
    // 3: explicit constant 6
    let un = rows(&lem, &["unsup"]);
    let max_ratio = un.iter().map(|r| r.constant).fold(0.0, f64::max);
    let ok = un.len() == 1000 && all_pass(&un) && max_ratio <= 6.0 && all_pass(&rows(&lem, &["unsup_indicator"]));
    t.record(3, ok, format!("{} triples, max lhs/rhs = {max_ratio:.6} (<= 6)", un.len()));

    // 4: Lenka ratio intervals
    let st = rows(&lem, &["lenka_stability"]);
    let drift = st.iter().map(|r| r.constant).fold(0.0, f64::max);
    let span = st.iter().fold((f64::INFINITY, 0.0f64), |(a, b), r| (a.min(r.lhs), b.max(r.rhs)));
    let ok = st.len() == 12 && all_pass(&st) && all_pass(&rows(&lem, &["lenka", "lenka_exact_ratio"]));
    t.record(4, ok, format!("12 cells x 200 instances, ratios in [{:.4}, {:.4}], max endpoint drift {:.2}% (< 10%)", span.0, span.1, drift * 100.0));

    let (max, _) = run(Suite::Maximal);
    // 5: Herz sandwich
    let ind = rows(&max, &["herz_indicator"]);
    let st = rows(&max, &["herz_stability"]);
    let ok = ind.len() == 50 && all_pass(&ind) && all_pass(&st) && all_pass(&rows(&max, &["herz_sandwich", "f_le_maximal"]));
    t.record(5, ok, format!("indicator case exact on 50 points; corpus interval [{:.4}, {:.4}], drift {:.2}%", st[0].lhs, st[0].rhs, st[0].constant * 100.0));

    let (frac, _) = run(Suite::Fractional);
    // 6: T-boundedness sweep
    let sw = rows(&frac, &["t_predicate_sweep"]);
    let mismatches = sw.iter().filter(|r| !r.pass).count();
    t.record(6, sw.len() == 60 && mismatches == 0, format!("{} parameter tuples, {mismatches} mismatches", sw.len()));

    let (riesz, _) = run(Suite::Riesz);
    // 7: table consistency
    let mut glz = rows(&max, &["glz_maximal_interval"]);
    glz.extend(rows(&frac, &["glz_fractional_interval"]));
    glz.extend(rows(&riesz, &["glz_riesz_interval"]));
    let lo = glz.iter().map(|r| r.lhs).fold(f64::INFINITY, f64::min);
    let hi = glz.iter().map(|r| r.rhs).fold(0.0, f64::max);
    let ok = glz.len() == 9 && all_pass(&glz);
    t.record(7, ok, format!("9 tabulated cases x 20 functions, ratios in [{lo:.4}, {hi:.4}] within [1e-2, 1e2]"));

    // 8: nonexistence witnesses
    let m = rows(&max, &["nonexistence_maximal"]);
    let f = rows(&frac, &["nonexistence_fractional"]);
    let growth: Vec<String> = f.iter().map(|r| format!("{:.2}>={:.2}", r.constant, r.tolerance)).collect();
    let ok = m.len() == 2 && f.len() == 3 && all_pass(&m) && all_pass(&f);
    t.record(8, ok, format!("maximal witnesses infinite; translated-block growth {}", growth.join(", ")));

    // 9: determinism and exit codes of the command line
    let base = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let start = Instant::now();
    let verify = |dir: &str, extra: &[&str]| {
        let out = base.join(dir);
        let mut args = vec!["verify", "all", "--seed", "1", "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let st = Command::new(env!("CARGO_BIN_EXE_ricalc")).args(&args).output().unwrap().status;
        (st, out)
    };
    let (s1, o1) = verify("accept-a", &[]);
    let elapsed = start.elapsed();
    let (s2, o2) = verify("accept-b", &["--jobs", "2"]);
    let same = ["report.csv", "summary.json"]
        .iter()
        .all(|f| std::fs::read(o1.join(f)).unwrap() == std::fs::read(o2.join(f)).unwrap());
    let forced = Command::new(env!("CARGO_BIN_EXE_ricalc"))
        .args(["verify", "preliminaries", "--n", "20", "--tol", "-1", "--out", base.join("accept-c").to_str().unwrap()])
        .output()
        .unwrap()
        .status;
    let ok = s1.success() && s2.success() && same && forced.code() == Some(1) && elapsed < Duration::from_secs(300);
    t.record(9, ok, format!("identical reports: {same}, exit codes {:?}/{:?}, forced failure exit {:?}, verify all {elapsed:.2?}", s1.code(), s2.code(), forced.code()));

    let failed: Vec<usize> = t.0.iter().filter(|x| !x.1).map(|x| x.0).collect();
    assert_eq!(t.0.len(), 9);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
