//! Command-line front end: L-polynomials, class numbers, theorem checks,
//! bounded searches and the characteristic counterexample family.
//!
//! [`run`] is the whole program; `main` only forwards the process arguments
//! and exit code, so tests drive it in-process.

use std::io::Write;

use catalan_ff::catalan::{PairCheck, SearchReport, TheoremVerdict};
use catalan_ff::zeta::{zeta_of_curve, ClassNumbers, ZetaData};
use catalan_ff::{
    budget_from_env, check_theorem, counterexample, search, CurveSpec, Error, Parallelism,
    Polynomial, RingElement, SearchConfig, Status,
};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Number, Value};

/// Exit code for a non-constant solution found by `search`.
pub const EXIT_NONCONSTANT: i32 = 4;
/// Exit code for invalid input or a failed computation.
pub const EXIT_ERROR: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "catalan", version, about = "Catalan's equation over function fields")]
struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Candidate and field-size budget (default: $CATALAN_BUDGET or 10^7).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for point counting and search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CurveArg {
    /// Curve spec, e.g. "char=5;deg=1;e=2;f=x^3+x+1".
    #[arg(long)]
    curve: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Point counts, L-polynomial and class number.
    Lpoly {
        #[command(flatten)]
        curve: CurveArg,
    },
    /// Class numbers of constant field extensions.
    Classnum {
        #[command(flatten)]
        curve: CurveArg,
        /// Extension degrees (default 1 2 3 4).
        #[arg(long = "n", num_args = 1..)]
        degrees: Vec<u64>,
        /// Also report h(F(mu_p)) for these p.
        #[arg(long = "mu", num_args = 1..)]
        mu: Vec<u64>,
    },
    /// Whether the class-number criterion applies to X^m - Y^n = 1.
    Check {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(short = 'm')]
        m: u64,
        #[arg(short = 'n')]
        n: u64,
    },
    /// Bounded search for solutions of X^m = rhs(Y), rhs defaulting to Y^n + 1.
    Search {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(short = 'm')]
        m: u64,
        #[arg(short = 'n')]
        n: u64,
        /// Pole-order bound on Y.
        #[arg(long)]
        bound: u64,
        /// Right-hand side as a polynomial in Y.
        #[arg(long)]
        rhs: Option<String>,
        /// Report elapsed_s as null.
        #[arg(long)]
        omit_timing: bool,
    },
    /// X = 1 + z^n, Y = z^ℓ solving X^ℓ - Y^n = 1.
    Counterexample {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(short = 'n')]
        n: u64,
        /// Non-constant element z in x (or T) and y.
        #[arg(long)]
        z: String,
    },
}

struct Context {
    json: bool,
    budget: u64,
    par: Parallelism,
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let ctx = Context {
        json: cli.json,
        budget: cli.budget.unwrap_or_else(budget_from_env),
        par: Parallelism::from_threads(cli.threads),
    };
    match dispatch(&ctx, cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn dispatch(ctx: &Context, command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Lpoly { curve } => {
            let spec = CurveSpec::parse(&curve.curve)?;
            let zeta = zeta_of_curve(&*spec.to_curve()?, ctx.budget, ctx.par)?;
            let mut classes = ClassNumbers::new(zeta.lpoly.clone());
            let table = vec![(1, classes.at_degree(1))];
            emit_lpoly(ctx, out, &spec, &zeta, &table, &[])?;
            Ok(0)
        }
        Command::Classnum {
            curve,
            degrees,
            mu,
        } => {
            let spec = CurveSpec::parse(&curve.curve)?;
            let zeta = zeta_of_curve(&*spec.to_curve()?, ctx.budget, ctx.par)?;
            let mut classes = ClassNumbers::new(zeta.lpoly.clone());
            let mut degrees = if degrees.is_empty() {
                vec![1, 2, 3, 4]
            } else {
                degrees
            };
            degrees.sort_unstable();
            degrees.dedup();
            if degrees.contains(&0) {
                return Err(Error::InvalidArgument("extension degree must be positive".into()).into());
            }
            let table: Vec<(u64, BigInt)> =
                degrees.iter().map(|&n| (n, classes.at_degree(n))).collect();
            let mut mu = mu;
            mu.sort_unstable();
            mu.dedup();
            let mu_table = mu
                .iter()
                .map(|&p| Ok((p, classes.with_roots_of_unity(p)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            emit_lpoly(ctx, out, &spec, &zeta, &table, &mu_table)?;
            Ok(0)
        }
        Command::Check { curve, m, n } => {
            let spec = CurveSpec::parse(&curve.curve)?;
            let verdict = check_theorem(&*spec.to_curve()?, m, n, ctx.budget, ctx.par)?;
            emit_verdict(ctx, out, &spec, &verdict)?;
            Ok(verdict_exit_code(verdict.status))
        }
        Command::Search {
            curve,
            m,
            n,
            bound,
            rhs,
            omit_timing,
        } => {
            let spec = CurveSpec::parse(&curve.curve)?;
            let model = spec.to_curve()?;
            let rhs = rhs
                .map(|s| Polynomial::parse_vars(model.field(), &s, &["Y", "T", "x"]))
                .transpose()?;
            let config = SearchConfig {
                budget: ctx.budget,
                parallelism: ctx.par,
            };
            let report = search(&model, m, n, bound, rhs.as_ref(), &config)?;
            emit_search(ctx, out, &spec, &report, omit_timing)?;
            Ok(search_exit_code(&report))
        }
        Command::Counterexample { curve, n, z } => {
            let spec = CurveSpec::parse(&curve.curve)?;
            let model = spec.to_curve()?;
            let z = RingElement::parse(&model, &z)?;
            let (x, y) = counterexample(&model, n, &z)?;
            let ell = spec.characteristic;
            if ctx.json {
                let v = json!({
                    "curve": spec.to_string(),
                    "ell": ell,
                    "n": n,
                    "z": z.to_string(),
                    "x": x.to_string(),
                    "y": y.to_string(),
                    "verified": true,
                });
                write_json(out, &v)?;
            } else {
                writeln!(out, "X^{ell} - Y^{n} = 1 in O_F")?;
                writeln!(out, "  X = {x}")?;
                writeln!(out, "  Y = {y}")?;
            }
            Ok(0)
        }
    }
}

/// `0` when the criterion applies, `2` when inconclusive, `3` when every
/// prime pair involves the characteristic.
pub fn verdict_exit_code(status: Status) -> i32 {
    match status {
        Status::TheoremApplies => 0,
        Status::Inconclusive => 2,
        Status::CharDividesBothSidesImpossible => 3,
    }
}

/// `4` if the report has a non-constant solution, else `0`.
pub fn search_exit_code(report: &SearchReport) -> i32 {
    if report.has_nonconstant() {
        EXIT_NONCONSTANT
    } else {
        0
    }
}

fn big(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integer literal"))
}

fn write_json(out: &mut dyn Write, v: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(std::io::Error::other)?;
    writeln!(out)
}

fn format_lpoly(coeffs: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c == &BigInt::from(0) {
            continue;
        }
        let t = match i {
            0 => c.to_string(),
            1 => format!("{c}*t"),
            _ => format!("{c}*t^{i}"),
        };
        terms.push(t);
    }
    terms.join(" + ").replace("+ -", "- ")
}

/// Report for `lpoly` and `classnum`.
fn emit_lpoly(
    ctx: &Context,
    out: &mut dyn Write,
    spec: &CurveSpec,
    zeta: &ZetaData,
    table: &[(u64, BigInt)],
    mu_table: &[(u64, BigInt)],
) -> std::io::Result<()> {
    let l = &zeta.lpoly;
    let h = zeta.class_number();
    if ctx.json {
        let mut h_n = Map::new();
        for (n, hn) in table {
            h_n.insert(n.to_string(), big(hn));
        }
        let mut v = json!({
            "curve": spec.to_string(),
            "q": l.q(),
            "genus": l.genus(),
            "counts": zeta.counts,
            "coeffs": l.coeffs().iter().map(big).collect::<Vec<_>>(),
            "h": big(&h),
            "h_n": h_n,
        });
        if !mu_table.is_empty() {
            let mut mu = Map::new();
            for (p, hp) in mu_table {
                mu.insert(format!("h(F(mu_{p}))"), big(hp));
            }
            v["h_mu"] = Value::Object(mu);
        }
        return write_json(out, &v);
    }
    let counts: Vec<String> = zeta.counts.iter().map(u64::to_string).collect();
    writeln!(out, "curve   {spec}")?;
    writeln!(out, "q       {}", l.q())?;
    writeln!(out, "genus   {}", l.genus())?;
    writeln!(out, "N_k     {}", counts.join(" "))?;
    writeln!(out, "L(t)    {}", format_lpoly(l.coeffs()))?;
    writeln!(out, "h       {h}")?;
    if table.len() > 1 || table.first().is_some_and(|t| t.0 != 1) {
        writeln!(out)?;
        writeln!(out, "{:>4}  h_n", "n")?;
        for (n, hn) in table {
            writeln!(out, "{n:>4}  {hn}")?;
        }
    }
    if !mu_table.is_empty() {
        writeln!(out)?;
        for (p, hp) in mu_table {
            writeln!(out, "h(F(mu_{p}))  {hp}")?;
        }
    }
    Ok(())
}

fn condition_json(c: &PairCheck) -> Value {
    let opt = |b: Option<bool>| b.map(Value::Bool).unwrap_or(Value::Null);
    json!({ "1": c.c1, "2": opt(c.c2), "3": opt(c.c3) })
}

/// The verdict as `{status, pair, conditions, h_values}`.
pub fn verdict_json(verdict: &TheoremVerdict) -> Value {
    let mut conditions = Map::new();
    for c in &verdict.pairs {
        conditions.insert(format!("{},{}", c.p, c.q), condition_json(c));
    }
    let mut h_values = Map::new();
    for (k, v) in &verdict.h_values {
        h_values.insert(k.clone(), big(v));
    }
    json!({
        "status": verdict.status.as_str(),
        "pair": verdict.pair.map(|(p, q)| vec![p, q]),
        "conditions": conditions,
        "h_values": h_values,
    })
}

fn emit_verdict(
    ctx: &Context,
    out: &mut dyn Write,
    spec: &CurveSpec,
    verdict: &TheoremVerdict,
) -> std::io::Result<()> {
    if ctx.json {
        return write_json(out, &verdict_json(verdict));
    }
    let show = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    };
    writeln!(out, "curve   {spec}")?;
    writeln!(out, "m, n    {}, {}", verdict.m, verdict.n)?;
    writeln!(out)?;
    writeln!(out, "{:>4} {:>4}  (1)  (2)  (3)", "p", "q")?;
    for c in &verdict.pairs {
        writeln!(
            out,
            "{:>4} {:>4}  {:<4} {:<4} {:<4}",
            c.p,
            c.q,
            show(Some(c.c1)),
            show(c.c2),
            show(c.c3)
        )?;
    }
    if !verdict.h_values.is_empty() {
        writeln!(out)?;
        for (k, v) in &verdict.h_values {
            writeln!(out, "{k}  {v}")?;
        }
    }
    writeln!(out)?;
    match verdict.pair {
        Some((p, q)) => writeln!(out, "status  {} (p, q) = ({p}, {q})", verdict.status.as_str()),
        None => writeln!(out, "status  {}", verdict.status.as_str()),
    }
}

/// The report as `{params, candidates_examined, solutions, elapsed_s}`.
pub fn search_json(spec: &CurveSpec, report: &SearchReport, omit_timing: bool) -> Value {
    let solutions: Vec<Value> = report
        .solutions
        .iter()
        .map(|s| {
            json!({
                "x": s.x.to_string(),
                "y": s.y.to_string(),
                "constant": s.constant,
            })
        })
        .collect();
    let elapsed = if omit_timing {
        Value::Null
    } else {
        json!(report.elapsed.as_secs_f64())
    };
    json!({
        "params": {
            "curve": spec.to_string(),
            "m": report.m,
            "n": report.n,
            "bound": report.bound,
            "rhs": report.rhs.format_with("Y"),
        },
        "candidates_examined": Value::Number(report.candidates_examined.to_string().parse::<Number>().expect("integer literal")),
        "solutions": solutions,
        "elapsed_s": elapsed,
    })
}

fn emit_search(
    ctx: &Context,
    out: &mut dyn Write,
    spec: &CurveSpec,
    report: &SearchReport,
    omit_timing: bool,
) -> std::io::Result<()> {
    if ctx.json {
        return write_json(out, &search_json(spec, report, omit_timing));
    }
    writeln!(out, "curve       {spec}")?;
    writeln!(out, "equation    X^{} = {}", report.m, report.rhs.format_with("Y"))?;
    writeln!(out, "bound       d(Y) <= {}", report.bound)?;
    writeln!(out, "candidates  {}", report.candidates_examined)?;
    if !omit_timing {
        writeln!(out, "elapsed     {:.3} s", report.elapsed.as_secs_f64())?;
    }
    writeln!(out)?;
    let rows: Vec<(String, String)> = report
        .solutions
        .iter()
        .map(|s| (s.x.to_string(), s.y.to_string()))
        .collect();
    let wx = rows.iter().map(|r| r.0.len()).max().unwrap_or(1).max(1);
    let wy = rows.iter().map(|r| r.1.len()).max().unwrap_or(1).max(1);
    writeln!(out, "{:<wx$}  {:<wy$}  kind", "X", "Y")?;
    for ((x, y), s) in rows.iter().zip(&report.solutions) {
        let kind = if s.constant { "constant" } else { "non-constant" };
        writeln!(out, "{x:<wx$}  {y:<wy$}  {kind}")?;
    }
    let nonconstant = report.solutions.iter().filter(|s| !s.constant).count();
    writeln!(out)?;
    writeln!(
        out,
        "{} solutions, {} non-constant",
        report.solutions.len(),
        nonconstant
    )
}
