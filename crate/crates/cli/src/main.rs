use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ricalc::lz::{lz_norm, LZParams, Variant};
use ricalc::optimal::{self, ClassicalOperator, Direction};
use ricalc::verify::{self, Suite, SuiteConfig};
use ricalc::{Extended, StepFunction};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ricalc", version, about = "Rearrangement-invariant norms, operators and optimal partner spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a Lorentz-Zygmund norm or a range/domain functional of a step function.
    Norm(NormArgs),
    /// Look up the optimal range or domain partner of an LZ space.
    Optimal(OptimalArgs),
    /// Run a verification suite and write report.csv and summary.json.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Functional {
    MaximalRange,
    MaximalDomain,
    FracRange,
    FracRangeSup,
    FracDomain,
    HilbertRange,
    HilbertDomain,
    RieszRange,
    RieszDomain,
}

#[derive(clap::Args)]
struct NormArgs {
    /// Function spec: {"breakpoints": [...], "values": [...]}.
    file: PathBuf,
    /// LZ parameters, e.g. '{"p":2,"q":1,"A":[0,0]}'.
    #[arg(long, conflicts_with = "functional")]
    space: Option<String>,
    #[arg(long, requires = "x")]
    functional: Option<Functional>,
    /// Parameters of X (range functionals) or Y (domain functionals).
    #[arg(long = "X", id = "x")]
    x: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long = "dim", default_value_t = 1.0)]
    dim: f64,
    /// Evaluation budget of the equimeasurable supremum search.
    #[arg(long, default_value_t = 400)]
    budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    #[value(name = "M")]
    M,
    #[value(name = "Mgamma")]
    Mgamma,
    #[value(name = "H")]
    H,
    #[value(name = "I")]
    I,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Range,
    Domain,
}

#[derive(clap::Args)]
struct OptimalArgs {
    op: OpName,
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long = "A", value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0")]
    a: Vec<f64>,
    #[arg(long = "B", value_delimiter = ',', allow_hyphen_values = true)]
    b: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long = "dim", default_value_t = 2.0)]
    dim: f64,
    #[arg(long, value_enum, default_value = "range")]
    direction: Dir,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(value_parser = Suite::NAMES)]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Tolerance override for exact-identity checks.
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long, default_value = "ricalc-report")]
    out: PathBuf,
    #[arg(long, env = "RICALC_JOBS", default_value_t = 0)]
    jobs: usize,
}

fn parse_exponent(s: &str) -> Result<f64> {
    match s {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        _ => s.parse().with_context(|| format!("bad exponent {s:?}")),
    }
}

fn show(v: Extended) -> serde_json::Value {
    match v {
        Extended::Finite(x) => json!(x),
        Extended::Infinite => json!("inf"),
    }
}

/// Closed-form evaluation path of `lz_norm`.
fn closed_form(x: &LZParams) -> bool {
    let int_ok = |a: f64| (a * x.q).fract() == 0.0 && (0.0..=30.0).contains(&(a * x.q));
    x.variant == Variant::Star
        && x.b.is_none()
        && if x.q.is_finite() { int_ok(x.a[0]) && int_ok(x.a[1]) } else { x.a == [0.0, 0.0] }
}

fn cmd_norm(a: NormArgs) -> Result<()> {
    let text = std::fs::read_to_string(&a.file).with_context(|| format!("reading {}", a.file.display()))?;
    let f: StepFunction = serde_json::from_str(&text).context("malformed function spec")?;
    let (value, exact, label) = if let Some(s) = &a.space {
        let x: LZParams = serde_json::from_str(s).context("malformed space spec")?;
        (lz_norm(&f, &x)?, closed_form(&x), x.to_string())
    } else if let (Some(func), Some(xs)) = (a.functional, &a.x) {
        let x: LZParams = serde_json::from_str(xs).context("malformed space spec")?;
        let (g, n) = (a.gamma, a.dim);
        let v = match func {
            Functional::MaximalRange => optimal::maximal_range_norm(&f, &x)?,
            Functional::MaximalDomain => optimal::maximal_domain_norm(&f, &x)?,
            Functional::FracRange => optimal::frac_range_norm_simple(&f, &x, g, n)?,
            Functional::FracRangeSup => optimal::frac_range_norm_sup_estimate(&f, &x, g, n, a.budget)?.lower,
            Functional::FracDomain => optimal::frac_domain_norm(&f, &x, g, n)?,
            Functional::HilbertRange => optimal::hilbert_range_norm(&f, &x)?,
            Functional::HilbertDomain => optimal::hilbert_domain_norm(&f, &x)?,
            Functional::RieszRange => optimal::riesz_range_norm(&f, &x, g, n)?,
            Functional::RieszDomain => optimal::riesz_domain_norm(&f, &x, g, n)?,
        };
        let name = func.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
        (v, false, name)
    } else {
        bail!("give either --space or --functional with --X");
    };
    println!("{value}");
    println!("{}", json!({"value": show(value), "exact": exact, "of": label}));
    Ok(())
}

fn cmd_optimal(a: OptimalArgs) -> Result<()> {
    if a.a.len() != 2 {
        bail!("--A takes two comma-separated numbers");
    }
    let mut x = LZParams::new(parse_exponent(&a.p)?, parse_exponent(&a.q)?, [a.a[0], a.a[1]])?;
    if let Some(b) = a.b {
        if b.len() != 2 {
            bail!("--B takes two comma-separated numbers");
        }
        x = x.with_b([b[0], b[1]]);
    }
    let op = match a.op {
        OpName::M => ClassicalOperator::MaximalM,
        OpName::Mgamma => ClassicalOperator::FractionalM { gamma: a.gamma, n: a.dim },
        OpName::H => ClassicalOperator::HilbertH,
        OpName::I => ClassicalOperator::RieszI { gamma: a.gamma, n: a.dim },
    };
    let dir = match a.direction {
        Dir::Range => Direction::Range,
        Dir::Domain => Direction::Domain,
    };
    let r = optimal::optimal_partner_lookup(op, &x, dir)?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let cfg = SuiteConfig { suite: a.suite.parse()?, n: a.n, seed: a.seed, tol: a.tol, jobs: a.jobs };
    let report = verify::run(&cfg)?;
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    std::fs::write(a.out.join("report.csv"), report.to_csv())?;
    let summary = report.summary();
    std::fs::write(a.out.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    for r in report.rows.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {} {} lhs={} rhs={} constant={}", r.check, r.inputs_digest, r.lhs, r.rhs, r.constant);
    }
    println!("{}: {} rows, {} failed", a.suite, report.rows.len(), report.failures());
    Ok(report.failures() == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Norm(a) => cmd_norm(a).map(|_| true),
        Cmd::Optimal(a) => cmd_optimal(a).map(|_| true),
        Cmd::Verify(a) => cmd_verify(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
