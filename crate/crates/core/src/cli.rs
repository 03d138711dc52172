//! The `polyfun` command line: input parsing, dispatch and JSON reports.
//!
//! Text input is a header line `p=<int> n=<int> m=<int>` followed by the
//! `q^m` table values, whitespace separated, in lexicographic argument order.
//! JSON input is `{"p": .., "n": .., "m": .., "values": [..]}`.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bench;
use crate::decide::{decide_with, DecideOptions, Decision, Stage, TwoStageOutcome, Verdict};
use crate::error::{Error, Result};
use crate::funcspace::FuncTable;
use crate::gens::build_generators;
use crate::oracle::{
    count_polynomial_functions, enumerate_polynomial_functions, log10_all_functions,
    span_enumerate, DEFAULT_BUDGET,
};
use crate::poly::Polynomial;
use crate::synth::synthesize;
use crate::zring::RingCtx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A parsed, validated function table description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSpec {
    pub p: u64,
    pub n: u32,
    pub m: usize,
    pub values: Vec<u64>,
}

#[derive(Deserialize)]
struct RawJsonInput {
    p: u64,
    n: u32,
    m: usize,
    values: Vec<i128>,
}

impl InputSpec {
    pub fn ctx(&self) -> Result<RingCtx> {
        RingCtx::new(self.p, self.n)
    }

    pub fn to_table(&self) -> Result<FuncTable> {
        FuncTable::new(self.ctx()?, self.m, self.values.clone())
    }

    pub fn from_table(f: &FuncTable) -> Self {
        let ctx = f.ctx();
        InputSpec { p: ctx.p(), n: ctx.n(), m: f.arity(), values: f.values().to_vec() }
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let values: Vec<String> = self.values.iter().map(u64::to_string).collect();
                format!("p={} n={} m={}\n{}\n", self.p, self.n, self.m, values.join(" "))
            }
            Format::Json => serde_json::to_string(self).expect("input spec serializes"),
        }
    }
}

/// Parses and validates an input table.
pub fn parse_input(source: &[u8], format: Format) -> Result<InputSpec> {
    let text = std::str::from_utf8(source).map_err(|e| Error::parse(format!("byte {}", e.valid_up_to()), "input is not UTF-8"))?;
    if text.trim().is_empty() {
        return Err(Error::parse("line 1", "empty input"));
    }
    let (p, n, m, values) = match format {
        Format::Text => parse_text(text)?,
        Format::Json => {
            let raw: RawJsonInput = serde_json::from_str(text)
                .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
            (raw.p, raw.n, raw.m, raw.values)
        }
    };
    let ctx = RingCtx::new(p, n).map_err(|e| Error::parse("header", e.to_string()))?;
    if m == 0 {
        return Err(Error::parse("header", "m must be positive"));
    }
    let expected = crate::funcspace::table_len(ctx, m)?;
    if let Some((position, &value)) = values.iter().enumerate().find(|(_, &v)| v < 0 || v >= ctx.q() as i128) {
        return Err(Error::Range { value, position, modulus: ctx.q() });
    }
    if values.len() != expected {
        return Err(Error::Count { expected, found: values.len() });
    }
    Ok(InputSpec { p, n, m, values: values.into_iter().map(|v| v as u64).collect() })
}

fn parse_text(text: &str) -> Result<(u64, u32, usize, Vec<i128>)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines.next().expect("non-empty input has a line");
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("line {}, token '{token}'", header_line + 1), "expected key=value"))?;
        if !matches!(key, "p" | "n" | "m") {
            return Err(Error::parse(format!("line {}, token '{token}'", header_line + 1), "unknown header key"));
        }
        if fields.insert(key, value).is_some() {
            return Err(Error::parse(format!("line {}, token '{token}'", header_line + 1), "duplicate header key"));
        }
    }
    let field = |key: &str| -> Result<u64> {
        let raw = fields
            .get(key)
            .ok_or_else(|| Error::parse(format!("line {}", header_line + 1), format!("missing '{key}=' in header")))?;
        raw.parse()
            .map_err(|_| Error::parse(format!("line {}, token '{key}={raw}'", header_line + 1), "expected a non-negative integer"))
    };
    let (p, n, m) = (field("p")?, field("n")?, field("m")?);
    let n = u32::try_from(n).map_err(|_| Error::parse("header", "n is too large"))?;
    let mut values = Vec::new();
    for (line_no, line) in lines {
        for (col, token) in line.split_whitespace().enumerate() {
            let v: i128 = token.parse().map_err(|_| {
                Error::parse(format!("line {}, token {} '{token}'", line_no + 1, col + 1), "expected an integer")
            })?;
            values.push(v);
        }
    }
    Ok((p, n, m as usize, values))
}

#[derive(Debug, Parser)]
#[command(name = "polyfun", version, about = "Polynomial functions over Z/p^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Cap on brute-force enumeration size.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the input table is a polynomial function.
    Decide(DecideArgs),
    /// Decide, then construct an inducing polynomial.
    Synth(DecideArgs),
    /// Dump the generating set.
    Gens(RingArgs),
    /// Brute-force membership of an input, or an enumeration summary for a ring.
    Oracle(OracleArgs),
    /// Number of polynomial functions, cross-checked by enumeration.
    Count(RingArgs),
    /// Timing table of the decision procedure.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Also run the square-system-then-residual variant and report disagreements.
    #[arg(long)]
    pub two_stage: bool,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub vars: usize,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub vars: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long, default_value_t = 10)]
    pub n_min: u32,
    #[arg(long, default_value_t = 20)]
    pub n_max: u32,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    /// Inputs used for the brute-force comparison on Z/8.
    #[arg(long, default_value_t = 100)]
    pub oracle_samples: usize,
}

#[derive(Debug, Serialize)]
struct RingReport {
    p: u64,
    n: u32,
    q: u64,
    m: usize,
}

impl RingReport {
    fn new(ctx: RingCtx, m: usize) -> Self {
        RingReport { p: ctx.p(), n: ctx.n(), q: ctx.q(), m }
    }
}

#[derive(Debug, Serialize)]
struct TimingReport {
    split_ns: u128,
    divisibility_ns: u128,
    solve_ns: u128,
    residual_ns: u128,
}

#[derive(Debug, Serialize)]
struct PolynomialReport {
    terms: BTreeMap<String, u64>,
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

impl PolynomialReport {
    fn new(poly: &Polynomial, verified: Option<bool>) -> Self {
        PolynomialReport { terms: poly.exponent_map(), text: poly.to_string(), verified }
    }
}

#[derive(Debug, Serialize)]
struct Counterexample {
    index: usize,
    args: Vec<u64>,
}

/// Output of `decide` and `synth`.
#[derive(Debug, Serialize)]
struct Report {
    command: &'static str,
    ring: RingReport,
    verdict: Verdict,
    stage: Stage,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<BTreeMap<String, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<PolynomialReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_stage: Option<TwoStageOutcome>,
    diagnostics: Vec<String>,
    timings: TimingReport,
}

impl Report {
    fn from_decision(command: &'static str, f: &FuncTable, d: &Decision) -> Self {
        Report {
            command,
            ring: RingReport::new(f.ctx(), f.arity()),
            verdict: d.verdict,
            stage: d.stage,
            counterexample: d.counterexample.map(|index| Counterexample { index, args: f.args_of(index) }),
            witness: d.witness.as_ref().map(|w| w.string_map()),
            polynomial: None,
            two_stage: d.two_stage.clone(),
            diagnostics: d.diagnostics.clone(),
            timings: TimingReport {
                split_ns: d.timings.split.as_nanos(),
                divisibility_ns: d.timings.divisibility.as_nanos(),
                solve_ns: d.timings.solve.as_nanos(),
                residual_ns: d.timings.residual.as_nanos(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct GeneratorReport {
    degree: Vec<u32>,
    shift: Vec<u64>,
    table: Vec<u64>,
    polynomial: PolynomialReport,
}

#[derive(Debug, Serialize)]
struct GensReport {
    command: &'static str,
    ring: RingReport,
    count: usize,
    generators: Vec<GeneratorReport>,
}

#[derive(Debug, Serialize)]
struct MembershipReport {
    command: &'static str,
    ring: RingReport,
    method: &'static str,
    set_size: usize,
    member: bool,
    decide_verdict: Verdict,
    agree: bool,
}

#[derive(Debug, Serialize)]
struct EnumerationReport {
    command: &'static str,
    ring: RingReport,
    method: &'static str,
    degree_bound: Option<u64>,
    size: usize,
}

#[derive(Debug, Serialize)]
struct CountReport {
    command: &'static str,
    ring: RingReport,
    formula: Option<u128>,
    formula_power: String,
    formula_log10: f64,
    all_functions_log10: f64,
    enumerated: Option<usize>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

#[derive(Debug, Serialize)]
struct BenchReport {
    command: &'static str,
    scaling: bench::ScalingReport,
    oracle: bench::OracleComparison,
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    let res = if path == "-" { stdin.read_to_end(&mut buf).map(|_| ()) } else { std::fs::File::open(path).and_then(|mut f| f.read_to_end(&mut buf).map(|_| ())) };
    res.map_err(|e| Error::parse(path.to_string(), e.to_string()))?;
    Ok(buf)
}

fn read_table(input: &InputArgs, stdin: &mut dyn Read) -> Result<FuncTable> {
    parse_input(&read_source(&input.input, stdin)?, input.format)?.to_table()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String> {
    match &cli.command {
        Command::Decide(args) | Command::Synth(args) => {
            let f = read_table(&args.input, stdin)?;
            let d = decide_with(&f, DecideOptions { two_stage: args.two_stage, trace: false })?;
            let synth = matches!(cli.command, Command::Synth(_));
            let mut report = Report::from_decision(if synth { "synth" } else { "decide" }, &f, &d);
            if synth {
                if let Some(w) = &d.witness {
                    let basis = build_generators(f.ctx(), f.arity())?;
                    let s = synthesize(w, &basis)?;
                    let reproduces = crate::synth::eval_polynomial(&s.polynomial)? == f;
                    report.polynomial = Some(PolynomialReport::new(&s.polynomial, Some(s.verified && reproduces)));
                }
            }
            Ok(to_json(&report))
        }
        Command::Gens(r) => {
            let ctx = RingCtx::new(r.p, r.n)?;
            let basis = build_generators(ctx, r.vars)?;
            let generators = basis
                .entries()
                .iter()
                .map(|g| GeneratorReport {
                    degree: g.degree.clone(),
                    shift: g.shift.clone(),
                    table: g.table.values().to_vec(),
                    polynomial: PolynomialReport::new(&g.polynomial, None),
                })
                .collect();
            Ok(to_json(&GensReport { command: "gens", ring: RingReport::new(ctx, r.vars), count: basis.len(), generators }))
        }
        Command::Oracle(o) => {
            if let Some(path) = &o.input {
                let f = parse_input(&read_source(path, stdin)?, o.format)?.to_table()?;
                let (method, set) = oracle_set(f.ctx(), f.arity(), cli.budget)?;
                let member = set.contains(&f);
                let verdict = decide_with(&f, DecideOptions::default())?.verdict;
                Ok(to_json(&MembershipReport {
                    command: "oracle",
                    ring: RingReport::new(f.ctx(), f.arity()),
                    method,
                    set_size: set.len(),
                    member,
                    decide_verdict: verdict,
                    agree: member == (verdict == Verdict::Polynomial),
                }))
            } else {
                let (Some(p), Some(n)) = (o.p, o.n) else {
                    return Err(Error::parse("arguments", "oracle needs --input or both --p and --n"));
                };
                let ctx = RingCtx::new(p, n)?;
                let (method, set) = oracle_set(ctx, o.vars, cli.budget)?;
                Ok(to_json(&EnumerationReport {
                    command: "oracle",
                    ring: RingReport::new(ctx, o.vars),
                    method,
                    degree_bound: set.source_degree_bound,
                    size: set.len(),
                }))
            }
        }
        Command::Count(r) => {
            let ctx = RingCtx::new(r.p, r.n)?;
            let count = count_polynomial_functions(ctx);
            let enumerated = match enumerate_polynomial_functions(ctx, 1, cli.budget) {
                Ok(set) => Some(set.len()),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            let formula = count.value();
            Ok(to_json(&CountReport {
                command: "count",
                ring: RingReport::new(ctx, 1),
                formula,
                formula_power: format!("{}^{}", count.p, count.exponent),
                formula_log10: count.log10(),
                all_functions_log10: log10_all_functions(ctx, 1),
                enumerated,
                matches: enumerated.map(|e| formula == Some(e as u128)),
            }))
        }
        Command::Bench(b) => {
            let scaling = bench::scaling(b.p, b.n_min..=b.n_max, b.reps, cli.seed)?;
            let oracle = bench::oracle_comparison(RingCtx::new(2, 3)?, b.oracle_samples, b.reps, cli.seed, cli.budget)?;
            Ok(to_json(&BenchReport { command: "bench", scaling, oracle }))
        }
    }
}

/// Univariate rings are enumerated directly; several variables go through
/// the generator span.
fn oracle_set(ctx: RingCtx, arity: usize, budget: u128) -> Result<(&'static str, crate::oracle::PolyFunctionSet)> {
    if arity == 1 {
        Ok(("enumeration", enumerate_polynomial_functions(ctx, 1, budget)?))
    } else {
        Ok(("span", span_enumerate(&build_generators(ctx, arity)?, budget)?))
    }
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } | Error::CapacityExceeded { .. } => 3,
        _ => 2,
    }
}

/// Runs the CLI with explicit streams and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => {
            let _ = writeln!(stdout, "{out}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
