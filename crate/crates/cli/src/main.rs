//! `expsum`: checks, sweeps, extremal values and witnesses from the command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expsum_core::acceptance::run_all;
use expsum_core::extremal::{christoffel_sup, gram, Basis, Functional};
use expsum_core::theorems::exact::{check_exact, ExactInput};
use expsum_core::theorems::report::{fmt_f64, render, Format};
use expsum_core::theorems::sigma::{sigma_closed, sigma_minimax, DEFAULT_GRID};
use expsum_core::theorems::{
    check_random, rhs_bound, sweep, trend, witness, CheckReport, Extras, RandomModel, Status, TheoremId,
};
use expsum_core::{Error, ExponentSet, NormSpec};
use num_complex::Complex64;
use serde_json::{json, Value};

const EXIT_VIOLATED: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "expsum", version, about = "Extremal constants for inequalities on exponential sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one theorem at one dimension.
    Check(CheckArgs),
    /// Check one theorem over a range of dimensions.
    Sweep(CheckArgs),
    /// Exact sup of a point or derivative evaluation over a span.
    Extremal(ExtremalArgs),
    /// Minimax solve for σ_k.
    Sigma(SigmaArgs),
    /// Construct the extremal witness of a theorem.
    Witness(WitnessArgs),
    /// Run the acceptance suite and print a pass/fail table.
    Table,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Truncation point of the infinite-finite range check.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Use the proof constant 27² in T5_1/T5_2 instead of the stated 27.
    #[arg(long)]
    proof_constant: bool,
}

impl ParamArgs {
    fn extras(&self) -> Extras {
        Extras {
            q: self.q,
            p: self.p,
            lambda: self.lambda,
            y: self.y,
            a: self.a,
            b: self.b,
            alpha: self.alpha,
            beta: self.beta,
            delta: self.delta,
            t: self.t,
            gamma: self.gamma,
            proof_constant: self.proof_constant,
            ..Extras::default()
        }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct CheckArgs {
    #[arg(long)]
    theorem: TheoremId,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Random samples per dimension; 0 runs one default configuration of an exact check.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Exponent set file for exact checks.
    #[arg(long)]
    exponents: Option<PathBuf>,
    #[arg(long)]
    imag_range: Option<f64>,
    #[arg(long)]
    min_gap: Option<f64>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long)]
    exponents: PathBuf,
    /// Finite interval of the norm; the half-line when omitted.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    weight_rate: f64,
    #[arg(long, default_value = "point:0")]
    functional: Functional,
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SigmaArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    theorem: TheoremId,
    #[arg(long)]
    n: usize,
    /// Also write the witness exponents to this file.
    #[arg(long)]
    exponents_out: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed command with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else if matches!(e, Error::Io(_)) {
            EXIT_IO
        } else {
            EXIT_USAGE
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    let r = match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    r.map_err(|e| Failure {
        code: EXIT_IO,
        message: e.to_string(),
    })
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// Serializes with every float at 17 significant digits.
fn to_json_text(v: &Value) -> String {
    fn walk(v: &Value, out: &mut String, indent: usize) {
        let pad = |k: usize| "  ".repeat(k);
        match v {
            Value::Object(m) => {
                out.push_str("{\n");
                for (i, (k, x)) in m.iter().enumerate() {
                    out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                    walk(x, out, indent + 1);
                    out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push('}');
            }
            Value::Array(a) if a.is_empty() => out.push_str("[]"),
            Value::Array(a) => {
                out.push_str("[\n");
                for (i, x) in a.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    walk(x, out, indent + 1);
                    out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
            Value::Number(n) if n.is_f64() => out.push_str(&fmt_f64(n.as_f64().expect("f64 number"))),
            other => out.push_str(&other.to_string()),
        }
    }
    let mut s = String::new();
    walk(v, &mut s, 0);
    s.push('\n');
    s
}

fn complex_list(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| json!({"re": num(z.re), "im": num(z.im)})).collect())
}

fn status_code(reports: &[CheckReport]) -> u8 {
    for r in reports.iter().filter(|r| r.status == Status::Inconclusive) {
        eprintln!("inconclusive: {} n={} seed={}: {}", r.theorem, r.n, r.seed, r.note.as_deref().unwrap_or("non-finite margin"));
    }
    if reports.iter().any(|r| r.status == Status::Violated) {
        for r in reports.iter().filter(|r| r.status == Status::Violated) {
            eprintln!("VIOLATED: {} n={} seed={} lhs={} rhs={}", r.theorem, r.n, r.seed, fmt_f64(r.lhs), fmt_f64(r.rhs));
        }
        EXIT_VIOLATED
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_NUMERICAL
    } else {
        0
    }
}

fn n_list(args: &CheckArgs, range: bool) -> Result<Vec<usize>, Failure> {
    match (args.n, args.n_min, args.n_max) {
        (Some(n), None, None) => Ok(vec![n]),
        (None, Some(lo), Some(hi)) if range && lo <= hi => Ok((lo..=hi).collect()),
        (None, Some(_), Some(_)) if range => Err(usage("--n-min must not exceed --n-max")),
        _ if range => Err(usage("give --n or both --n-min and --n-max")),
        _ => Err(usage("check needs --n; use sweep for ranges")),
    }
}

fn run_check(args: CheckArgs, range: bool) -> CmdResult {
    let id = args.theorem;
    let ns = n_list(&args, range)?;
    if ns.contains(&0) {
        return Err(usage("n must be at least 1"));
    }
    let extras = args.params.extras();
    let mut model = RandomModel::new(ns[0], args.seed);
    model.imag_range = args.imag_range;
    if let Some(g) = args.min_gap {
        model.min_gap = g;
    }
    match id {
        TheoremId::T2_7 | TheoremId::T7_2 => return run_trend(id, &args.output),
        TheoremId::SIGMA_K => {
            return run_sigma(SigmaArgs {
                k: extras.k.unwrap_or(ns[0]),
                grid: DEFAULT_GRID,
                out: args.output.out.clone(),
            })
        }
        TheoremId::T2_2 => {
            let rows: Vec<Value> = ns
                .iter()
                .map(|&n| Ok(json!({"theorem": id.name(), "n": n, "rhs": num(rhs_bound(id, n, None, &extras)?)})))
                .collect::<Result<_, Error>>()?;
            emit(&args.output.out, &to_json_text(&Value::Array(rows)))?;
            return Ok(0);
        }
        _ => {}
    }
    let reports = if let Some(path) = &args.exponents {
        if !id.is_exact() {
            return Err(usage(format!("{id} is checked on random samples; --exponents applies to exact checks")));
        }
        let exps = ExponentSet::read_file(path)?;
        vec![check_exact(id, &ExactInput::Exponents(exps), &extras, args.seed)?]
    } else if !range && id.is_random() {
        check_random(id, &model, args.samples, &extras)?
    } else {
        sweep(id, &ns, &model, args.samples, &extras)?
    };
    emit(&args.output.out, &render(&reports, args.output.format))?;
    Ok(status_code(&reports))
}

fn run_trend(id: TheoremId, output: &OutputArgs) -> CmdResult {
    let results = trend(id)?;
    let mut ok = true;
    let text = match output.format {
        Format::Csv => {
            let mut s = String::from("theorem,label,n,value,slope,expected\n");
            for t in &results {
                ok &= t.passes();
                for (n, v) in t.ns.iter().zip(&t.values) {
                    s.push_str(&format!("{},{},{},{},{},{}\n", id, t.label, n, fmt_f64(*v), fmt_f64(t.slope), fmt_f64(t.expected)));
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|t| {
                    ok &= t.passes();
                    json!({
                        "theorem": id.name(),
                        "label": t.label,
                        "ns": t.ns,
                        "values": t.values.iter().map(|v| num(*v)).collect::<Vec<_>>(),
                        "slope": num(t.slope),
                        "expected": num(t.expected),
                        "passes": t.passes(),
                    })
                })
                .collect();
            to_json_text(&Value::Array(rows))
        }
    };
    emit(&output.out, &text)?;
    Ok(if ok { 0 } else { EXIT_VIOLATED })
}

fn run_extremal(args: ExtremalArgs) -> CmdResult {
    let exps = ExponentSet::read_file(&args.exponents)?;
    let spec = match &args.interval {
        Some(v) => NormSpec::interval(v[0], v[1], args.weight_rate, args.q)?,
        None => NormSpec::half_line(args.weight_rate).with_q(args.q)?,
    };
    let g = gram(&exps, &spec)?;
    let r = christoffel_sup(&g, &Basis::Exponential(exps), args.functional)?;
    let v = json!({
        "value": num(r.value),
        "condition": num(r.gram_condition),
        "witness_coeffs": complex_list(&r.witness),
    });
    emit(&args.out, &to_json_text(&v))?;
    Ok(0)
}

fn run_sigma(args: SigmaArgs) -> CmdResult {
    let closed = sigma_closed(args.k)?;
    match sigma_minimax(args.k, args.grid) {
        Ok(r) => {
            let v = json!({
                "k": args.k,
                "grid": args.grid,
                "value": num(r.value),
                "lower": num(r.lower),
                "closed_form": num(closed),
                "iterations": r.iterations,
                "coeffs": complex_list(&r.coeffs),
            });
            emit(&args.out, &to_json_text(&v))?;
            Ok(0)
        }
        Err(Error::MinimaxStall { best, iterations }) => {
            let v = json!({
                "k": args.k,
                "grid": args.grid,
                "value": num(best),
                "closed_form": num(closed),
                "iterations": iterations,
                "status": "Inconclusive",
            });
            emit(&args.out, &to_json_text(&v))?;
            eprintln!("minimax iteration stalled after {iterations} iterations");
            Ok(EXIT_NUMERICAL)
        }
        Err(e) => Err(e.into()),
    }
}

fn run_witness(args: WitnessArgs) -> CmdResult {
    let w = witness(args.theorem, args.n, &args.params.extras())?;
    if let Some(path) = &args.exponents_out {
        w.exps.write_file(path)?;
    }
    let details: serde_json::Map<String, Value> = w.details.iter().map(|(k, v)| (k.to_string(), num(*v))).collect();
    let mut v = json!({
        "theorem": w.theorem.name(),
        "n": w.n,
        "ratio": num(w.ratio),
        "lower_bound": num(w.lower_bound),
        "meets_bound": w.meets_bound(1e-9),
        "details": Value::Object(details),
    });
    if let Some(f) = &w.expsum {
        v["exponents"] = complex_list(f.exps().as_slice());
        v["coeffs"] = complex_list(f.coeffs());
    }
    if let Some(p) = &w.poly {
        v["poly_coeffs"] = complex_list(p);
    }
    emit(&args.out, &to_json_text(&v))?;
    Ok(if w.meets_bound(1e-9) { 0 } else { EXIT_VIOLATED })
}

fn run_table() -> CmdResult {
    let results = run_all();
    let mut text = String::new();
    for r in &results {
        text.push_str(&r.line());
        text.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    text.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
    emit(&None, &text)?;
    Ok(if failed == 0 { 0 } else { EXIT_VIOLATED })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("EXPSUM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| usage(format!("EXPSUM_THREADS must be a non-negative integer, got {v:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Check(a) => run_check(a, false),
        Command::Sweep(a) => run_check(a, true),
        Command::Extremal(a) => run_extremal(a),
        Command::Sigma(a) => run_sigma(a),
        Command::Witness(a) => run_witness(a),
        Command::Table => run_table(),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
