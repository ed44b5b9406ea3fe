//! Command definitions and their execution.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use density_core::abundant::abundant_bits;
use density_core::density::{log_spaced, lower_density, prefix_trace, upper_density};
use density_core::diagonal::{construct_limit, select_indices, verify_convergence, CauchySeq, CutIndices};
use density_core::metric::{dist, in_d, leq};
use density_core::nets::{ap0_check, net_converged, net_values, theorem_condition_check, NetKind, NetVerdict};
use density_core::rational::{format_float, format_rational, parse_rational, ratio};
use density_core::setfun::{read_table, show_mask, Check, SetFunError, SetFunctionTable, Side};
use density_core::{DensityEstimate, DensitySet, Rational, Ternary};
use serde_json::{json, Value};

use crate::dsl;
use crate::suites;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_WINDOW: u64 = 1 << 20;
const DEFAULT_NET_WINDOW: u64 = 10;
const DEFAULT_SIEVE: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Union,
    Intersection,
}

#[derive(Debug, Parser)]
#[command(
    name = "density",
    version,
    about = "Exact and certified asymptotic densities of subsets of ℕ"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Estimation window, net size J, or sieve bound, depending on the command.
    #[arg(long, global = true)]
    pub window: Option<u64>,
    /// Tolerance as p/q.
    #[arg(long, global = true, value_parser = parse_eps)]
    pub eps: Option<Rational>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print decimals (6 significant digits) instead of fractions.
    #[arg(long, global = true)]
    pub float: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper and lower density of a set.
    Density {
        expr: String,
        /// Emit ν_n at log-spaced n up to the window instead.
        #[arg(long)]
        trace: bool,
    },
    /// Distance ν⁺(A △ B).
    Dist { a: String, b: String },
    /// Whether [A] ≤ [B] in the quotient order.
    Leq { a: String, b: String },
    /// Whether the set has an asymptotic density.
    InD { expr: String },
    /// Diagonal limit of B_1, …, B_K with a full verification report.
    Diagonal {
        #[arg(required = true)]
        sets: Vec<String>,
        /// Replace the selected cut indices.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<u64>>,
    },
    /// Value nets of B_ij over A_1, …, A_J.
    Net {
        #[arg(required = true)]
        sets: Vec<String>,
        #[arg(long, value_enum, default_value_t = Kind::Union)]
        kind: Kind,
        /// Test convergence to this value instead of searching for a limit.
        #[arg(long, value_parser = parse_eps)]
        limit: Option<Rational>,
    },
    /// Completion property of an increasing sequence in 𝒟.
    Ap0 {
        #[arg(required = true)]
        sets: Vec<String>,
    },
    /// Check a set-function table, or run the random suites when no file is given.
    SetfunVerify {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// ν_n of the abundant numbers by divisor-sum sieve.
    AbundantSieve,
}

fn parse_eps(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.into() + "\n",
        }
    }
}

struct Ctx {
    format: Format,
    float: bool,
    out: String,
    err: String,
}

impl Ctx {
    fn num(&self, r: &Rational) -> String {
        if self.float {
            format_float(r)
        } else {
            format_rational(r)
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn record(&mut self, v: Value) {
        let s = v.to_string();
        self.line(s);
    }

    fn estimate_text(&self, e: &DensityEstimate) -> String {
        if self.float {
            e.display_float()
        } else {
            e.to_string()
        }
    }

    /// Compact value for tables: `p/q`, `[lo;hi]`, or `~v`.
    fn estimate_cell(&self, e: &DensityEstimate) -> String {
        match e {
            DensityEstimate::Exact(v) => self.num(v),
            DensityEstimate::Bounded { lo, hi, .. } => format!("[{};{}]", self.num(lo), self.num(hi)),
            DensityEstimate::Sampled(values) => match values.last() {
                Some((_, v)) => format!("~{}", self.num(v)),
                None => String::new(),
            },
        }
    }

    fn estimate_json(&self, e: &DensityEstimate) -> Value {
        match e {
            DensityEstimate::Exact(v) => json!({"level": "exact", "value": self.num(v)}),
            DensityEstimate::Bounded { lo, hi, window } => {
                json!({"level": "bounded", "lo": self.num(lo), "hi": self.num(hi), "window": window})
            }
            DensityEstimate::Sampled(values) => match values.last() {
                Some((n, v)) => json!({"level": "sampled", "value": self.num(v), "n": n}),
                None => json!({"level": "sampled"}),
            },
        }
    }
}

enum Failure {
    Usage(String),
}

type Run = Result<i32, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_set(text: &str) -> Result<DensitySet, Failure> {
    let ast = dsl::parse(text).map_err(|e| usage(format!("{text}: {e}")))?;
    ast.to_set().map_err(|e| usage(format!("{text}: {e}")))
}

fn parse_sets(texts: &[String]) -> Result<Vec<DensitySet>, Failure> {
    texts.iter().map(|t| parse_set(t)).collect()
}

fn exit_for(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text.trim_end())
            }
        }
    }
}

pub fn execute(cli: Cli) -> Outcome {
    let mut ctx = Ctx {
        format: cli.format,
        float: cli.float,
        out: String::new(),
        err: String::new(),
    };
    let window = cli.window;
    let eps = cli.eps;
    let result = match &cli.command {
        Command::Density { expr, trace } => density_cmd(&mut ctx, expr, *trace, window.unwrap_or(DEFAULT_WINDOW)),
        Command::Dist { a, b } => dist_cmd(&mut ctx, a, b, window.unwrap_or(DEFAULT_WINDOW)),
        Command::Leq { a, b } => ternary_cmd(&mut ctx, "leq", &[a, b], window.unwrap_or(DEFAULT_WINDOW)),
        Command::InD { expr } => ternary_cmd(&mut ctx, "in-d", &[expr], window.unwrap_or(DEFAULT_WINDOW)),
        Command::Diagonal { sets, indices } => {
            diagonal_cmd(&mut ctx, sets, indices.as_deref(), window.unwrap_or(DEFAULT_WINDOW))
        }
        Command::Net { sets, kind, limit } => net_cmd(
            &mut ctx,
            sets,
            *kind,
            *limit,
            window.unwrap_or(DEFAULT_NET_WINDOW),
            eps.unwrap_or_else(|| ratio(1, 100)),
        ),
        Command::Ap0 { sets } => ap0_cmd(
            &mut ctx,
            sets,
            window.unwrap_or(DEFAULT_NET_WINDOW),
            eps.unwrap_or_else(|| ratio(1, 100)),
        ),
        Command::SetfunVerify { file, samples } => match file {
            Some(path) => setfun_file_cmd(&mut ctx, path),
            None => setfun_suite_cmd(&mut ctx, cli.seed, *samples),
        },
        Command::AbundantSieve => abundant_cmd(&mut ctx, window.unwrap_or(DEFAULT_SIEVE)),
    };
    match result {
        Ok(code) => Outcome {
            code,
            stdout: ctx.out,
            stderr: ctx.err,
        },
        Err(Failure::Usage(m)) => Outcome {
            code: EXIT_USAGE,
            stdout: ctx.out,
            stderr: ctx.err + "error: " + &m + "\n",
        },
    }
}

fn density_cmd(ctx: &mut Ctx, expr: &str, trace: bool, window: u64) -> Run {
    let s = parse_set(expr)?;
    if trace {
        let points = log_spaced(1, window, 32);
        let rows = prefix_trace(&s, &points);
        if ctx.format == Format::Jsonl {
            for (n, v) in &rows {
                let nu = ctx.num(v);
                ctx.record(json!({"n": n, "nu_n": nu}));
            }
        } else {
            ctx.line("n,nu_n");
            for (n, v) in &rows {
                let nu = ctx.num(v);
                ctx.line(format!("{n},{nu}"));
            }
        }
        return Ok(EXIT_PASS);
    }
    let (up, lo) = (upper_density(&s, window), lower_density(&s, window));
    match ctx.format {
        Format::Text => {
            let line = format!("upper={}, lower={}", ctx.estimate_text(&up), ctx.estimate_text(&lo));
            ctx.line(line);
        }
        Format::Csv => {
            ctx.line("set,upper,upper_level,lower,lower_level");
            let row = format!(
                "\"{expr}\",{},{},{},{}",
                ctx.estimate_cell(&up),
                up.level(),
                ctx.estimate_cell(&lo),
                lo.level()
            );
            ctx.line(row);
        }
        Format::Jsonl => {
            let v = json!({"set": expr, "upper": ctx.estimate_json(&up), "lower": ctx.estimate_json(&lo)});
            ctx.record(v);
        }
    }
    Ok(EXIT_PASS)
}

fn dist_cmd(ctx: &mut Ctx, a: &str, b: &str, window: u64) -> Run {
    let (sa, sb) = (parse_set(a)?, parse_set(b)?);
    let d = dist(&sa, &sb, window);
    match ctx.format {
        Format::Text => {
            let line = ctx.estimate_text(&d);
            ctx.line(line);
        }
        Format::Csv => {
            ctx.line("a,b,distance,level");
            let row = format!("\"{a}\",\"{b}\",{},{}", ctx.estimate_cell(&d), d.level());
            ctx.line(row);
        }
        Format::Jsonl => {
            let v = json!({"a": a, "b": b, "distance": ctx.estimate_json(&d)});
            ctx.record(v);
        }
    }
    Ok(EXIT_PASS)
}

/// `yes` exits 0; `no` and `unknown` exit 1.
fn ternary_cmd(ctx: &mut Ctx, name: &str, args: &[&String], window: u64) -> Run {
    let sets: Vec<DensitySet> = args.iter().map(|t| parse_set(t)).collect::<Result<_, _>>()?;
    let answer: Ternary = match sets.as_slice() {
        [s] => in_d(s, window),
        [a, b] => leq(a, b, window),
        _ => unreachable!("one or two operands"),
    };
    match ctx.format {
        Format::Text => ctx.line(answer.to_string()),
        Format::Csv => {
            ctx.line("query,answer");
            ctx.line(format!("{name},{answer}"));
        }
        Format::Jsonl => ctx.record(json!({"query": name, "answer": answer.to_string()})),
    }
    Ok(exit_for(answer.is_yes()))
}

fn diagonal_cmd(ctx: &mut Ctx, texts: &[String], indices: Option<&[u64]>, window: u64) -> Run {
    let sets = parse_sets(texts)?;
    let cs = CauchySeq::deduplicated(sets, window).map_err(usage)?;
    let idx = match indices {
        Some(n) => CutIndices {
            n: n.to_vec(),
            minimal: false,
        },
        None => select_indices(&cs).map_err(usage)?,
    };
    if idx.n.len() + 1 != cs.len() {
        return Err(usage(format!(
            "expected {} cut indices for {} distinct sets, got {}",
            cs.len() - 1,
            cs.len(),
            idx.n.len()
        )));
    }
    if idx.n.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("cut indices must be strictly increasing"));
    }
    let b = construct_limit(&cs, &idx).map_err(usage)?;
    let report = verify_convergence(&cs, &idx, &b).map_err(usage)?;

    // Block k covers (n_{k−1}, n_k], the last block is unbounded.
    let blocks: Vec<(usize, usize, u64, Option<u64>)> = (1..=cs.len())
        .map(|k| {
            let from = (idx.get(k - 1) + 1) as u64;
            let to = idx.n.get(k - 1).copied();
            (k, cs.source()[k - 1] + 1, from, to)
        })
        .collect();
    let eps: Vec<String> = cs.epsilons().iter().map(|e| ctx.num(e)).collect();
    match ctx.format {
        Format::Text => {
            let joined: Vec<String> = idx.n.iter().map(u64::to_string).collect();
            ctx.line(format!("indices: {}", joined.join(",")));
            ctx.line(format!("minimal: {}", idx.minimal));
            ctx.line(format!("epsilons: {}", eps.join(",")));
            for (k, src, from, to) in &blocks {
                let to = to.map_or("inf".to_string(), |t| t.to_string());
                ctx.line(format!("block {k}: [{from}, {to}] from input {src}"));
            }
            for l in &report.lines {
                let text = if ctx.float {
                    format!(
                        "{} k={} j={} n={} lhs={} rhs={} {}",
                        l.kind.name(),
                        l.k,
                        l.j,
                        l.n,
                        format_float(&l.lhs),
                        format_float(&l.rhs),
                        if l.pass { "pass" } else { "FAIL" }
                    )
                } else {
                    l.to_string()
                };
                ctx.line(text);
            }
        }
        Format::Csv => {
            ctx.line("record,kind,k,j,n,lhs,rhs,pass");
            for (k, n) in idx.n.iter().enumerate() {
                ctx.line(format!("cut,,{},,{n},,,", k + 1));
            }
            for (k, src, from, _) in &blocks {
                ctx.line(format!("block,,{k},{src},{from},,,"));
            }
            for l in &report.lines {
                let row = format!(
                    "check,{},{},{},{},{},{},{}",
                    l.kind.name(),
                    l.k,
                    l.j,
                    l.n,
                    ctx.num(&l.lhs),
                    ctx.num(&l.rhs),
                    l.pass
                );
                ctx.line(row);
            }
        }
        Format::Jsonl => {
            for (k, n) in idx.n.iter().enumerate() {
                ctx.record(json!({"record": "cut", "k": k + 1, "n": n, "epsilon": eps[k]}));
            }
            for (k, src, from, to) in &blocks {
                ctx.record(json!({"record": "block", "k": k, "source": src, "from": from, "to": to}));
            }
            for l in &report.lines {
                let v = json!({
                    "record": "check", "kind": l.kind.name(), "k": l.k, "j": l.j, "n": l.n,
                    "lhs": ctx.num(&l.lhs), "rhs": ctx.num(&l.rhs), "pass": l.pass,
                });
                ctx.record(v);
            }
        }
    }
    let failures = report.failures().count();
    if ctx.format == Format::Text {
        ctx.line(format!("checks: {}, failures: {failures}", report.lines.len()));
    } else {
        ctx.err
            .push_str(&format!("{} checks, {failures} failed\n", report.lines.len()));
    }
    Ok(exit_for(report.passed()))
}

fn net_window(window: u64, count: usize) -> Result<usize, Failure> {
    let j = usize::try_from(window).map_err(usage)?;
    if j == 0 || j > count {
        return Err(usage(format!("net window J={j} needs 1 ≤ J ≤ {count} sets")));
    }
    Ok(j)
}

fn net_kind(kind: Kind) -> NetKind {
    match kind {
        Kind::Union => NetKind::Union,
        Kind::Intersection => NetKind::Intersection,
    }
}

fn verdict_json(v: &NetVerdict) -> Value {
    match v {
        NetVerdict::HoldsAtWindow { i0, j0, window } => {
            json!({"verdict": "holds-at-window", "i0": i0, "j0": j0, "window": window})
        }
        NetVerdict::Fails { i, j, window, .. } => json!({"verdict": "fails", "i": i, "j": j, "window": window}),
        NetVerdict::Inconclusive { window } => json!({"verdict": "inconclusive", "window": window}),
    }
}

fn net_cmd(ctx: &mut Ctx, texts: &[String], kind: Kind, limit: Option<Rational>, window: u64, eps: Rational) -> Run {
    let seq = parse_sets(texts)?;
    let j = net_window(window, seq.len())?;
    let kind = net_kind(kind);
    let plus = net_values(&seq, Side::Plus, j, kind).map_err(usage)?;
    let minus = net_values(&seq, Side::Minus, j, kind).map_err(usage)?;
    match ctx.format {
        Format::Text => {}
        Format::Csv => ctx.line("i,j,upper,lower"),
        Format::Jsonl => {}
    }
    if ctx.format != Format::Text {
        for ((i, jj, up), (_, _, lo)) in plus.entries().zip(minus.entries()) {
            let (u, l) = (ctx.num(&up), ctx.num(&lo));
            if ctx.format == Format::Csv {
                ctx.line(format!("{i},{jj},{u},{l}"));
            } else {
                ctx.record(json!({"i": i, "j": jj, "upper": u, "lower": l}));
            }
        }
    }

    if let Some(l) = limit {
        let (vp, vm) = (net_converged(&plus, l, eps), net_converged(&minus, l, eps));
        let pass = vp.holds() && vm.holds();
        match ctx.format {
            Format::Jsonl => ctx.record(json!({"record": "verdict", "limit": ctx.num(&l), "upper": verdict_json(&vp), "lower": verdict_json(&vm)})),
            Format::Text => {
                ctx.line(format!("upper: {vp}"));
                ctx.line(format!("lower: {vm}"));
            }
            Format::Csv => ctx.err.push_str(&format!("upper: {vp}\nlower: {vm}\n")),
        }
        return Ok(exit_for(pass));
    }

    let member = |s: &DensitySet| in_d(s, 1) == Ternary::Yes;
    let report = theorem_condition_check(&seq, &member, j, eps, kind).map_err(usage)?;
    let mut summary = vec![format!("upper: {}", report.plus), format!("lower: {}", report.minus)];
    match &report.limit {
        Some(l) => summary.push(format!("limit: {}", ctx.num(l))),
        None => summary.push("limit: none".to_string()),
    }
    if let Some(c) = &report.candidate {
        summary.push(format!(
            "candidate: {} ({}), upper={}, terminal residual={}, max residual={}",
            describe(&c.set),
            c.source.name(),
            ctx.num(&c.upper),
            ctx.num(&c.terminal_residual),
            ctx.num(&c.max_residual)
        ));
    }
    if let Some(r) = &report.cauchy {
        summary.push(format!(
            "cauchy from {}: max symdiff={} vs 4*{} {}",
            r.start,
            ctx.num(&r.max_symdiff),
            ctx.num(&r.max_deviation),
            if r.pass { "pass" } else { "FAIL" }
        ));
    }
    summary.push(format!("condition: {}", if report.passed() { "pass" } else { "FAIL" }));
    match ctx.format {
        Format::Text => summary.iter().for_each(|s| ctx.line(s)),
        Format::Csv => summary.iter().for_each(|s| {
            ctx.err.push_str(s);
            ctx.err.push('\n');
        }),
        Format::Jsonl => {
            let v = json!({
                "record": "condition",
                "upper": verdict_json(&report.plus),
                "lower": verdict_json(&report.minus),
                "limit": report.limit.as_ref().map(|l| ctx.num(l)),
                "candidate": report.candidate.as_ref().map(|c| describe(&c.set)),
                "pass": report.passed(),
            });
            ctx.record(v);
        }
    }
    Ok(exit_for(report.passed()))
}

/// Short human description of a periodic-tier set.
fn describe(s: &DensitySet) -> String {
    match s.as_periodic() {
        Some(p) => {
            let residues: Vec<String> = p.residues().iter().map(u64::to_string).collect();
            let extra: Vec<String> = p.finite_members().iter().map(u64::to_string).collect();
            let mut text = format!("residues {{{}}} mod {}", residues.join(","), p.period());
            if p.threshold() > 0 {
                text.push_str(&format!(
                    " from {} (members below: {{{}}})",
                    p.threshold(),
                    extra.join(",")
                ));
            }
            text
        }
        None => format!("{s:?}"),
    }
}

fn ap0_cmd(ctx: &mut Ctx, texts: &[String], window: u64, eps: Rational) -> Run {
    let seq = parse_sets(texts)?;
    let j = net_window(window, seq.len())?;
    let report = ap0_check(&seq, j, eps).map_err(usage)?;
    match ctx.format {
        Format::Text => {
            ctx.line(format!("set: {}", describe(&report.set)));
            let d = ctx.num(&report.density);
            ctx.line(format!("density: {d}"));
            let left: Vec<String> = report.leftovers.iter().map(|v| ctx.num(v)).collect();
            ctx.line(format!("leftovers: {}", left.join(",")));
            let gap = ctx.num(&report.density_gap);
            ctx.line(format!("density gap: {gap}"));
            ctx.line(format!("ap0: {}", if report.passed() { "pass" } else { "FAIL" }));
        }
        Format::Csv => {
            ctx.line("i,leftover");
            for (i, v) in report.leftovers.iter().enumerate() {
                let v = ctx.num(v);
                ctx.line(format!("{},{v}", i + 1));
            }
        }
        Format::Jsonl => {
            for (i, v) in report.leftovers.iter().enumerate() {
                let v = ctx.num(v);
                ctx.record(json!({"i": i + 1, "leftover": v}));
            }
            let v = json!({
                "record": "ap0", "set": describe(&report.set), "density": ctx.num(&report.density),
                "density_gap": ctx.num(&report.density_gap), "pass": report.passed(),
            });
            ctx.record(v);
        }
    }
    Ok(exit_for(report.passed()))
}

struct Finding {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn from_check(name: &'static str, c: Result<Check, SetFunError>) -> Result<Finding, Failure> {
    let c = c.map_err(usage)?;
    Ok(Finding {
        name,
        pass: c.holds(),
        detail: c.counterexample.map(|t| t.to_string()).unwrap_or_default(),
    })
}

fn from_pair(name: &'static str, r: Result<Option<(u64, u64)>, SetFunError>) -> Result<Finding, Failure> {
    let r = r.map_err(usage)?;
    Ok(Finding {
        name,
        pass: r.is_none(),
        detail: r
            .map(|(a, b)| format!("A={}, B={}", show_mask(a), show_mask(b)))
            .unwrap_or_default(),
    })
}

/// Every property of a table that the framework talks about.
fn table_findings(t: &SetFunctionTable) -> Result<Vec<Finding>, Failure> {
    let mut out = vec![
        from_check("subadditive", t.is_subadditive())?,
        from_check("superadditive", t.is_superadditive())?,
    ];
    if t.has_lower() {
        out.push(from_check("co-subadditive", t.is_co_subadditive())?);
        out.push(from_check("co-superadditive", t.is_co_superadditive())?);
    }
    let tri = t.triangle_violation().map_err(usage)?;
    out.push(Finding {
        name: "d-triangle",
        pass: tri.is_none(),
        detail: tri.map(|x| x.to_string()).unwrap_or_default(),
    });
    out.push(from_pair("monotone-plus", t.monotonicity_violation(Side::Plus))?);
    out.push(from_pair("continuity-plus", t.continuity_violation(Side::Plus))?);
    if t.has_lower() {
        out.push(from_pair("monotone-minus", t.monotonicity_violation(Side::Minus))?);
        out.push(from_pair("continuity-minus", t.continuity_violation(Side::Minus))?);
    }
    let cover = t.countable_subadditivity_violation().map_err(usage)?;
    out.push(Finding {
        name: "countably-subadditive",
        pass: cover.is_none(),
        detail: cover
            .map(|v| {
                let parts: Vec<String> = v.cover.iter().map(|&m| show_mask(m)).collect();
                format!(
                    "A={} value={} cover=[{}] total={}",
                    show_mask(v.set),
                    format_rational(&v.value),
                    parts.join(", "),
                    format_rational(&v.cover_total)
                )
            })
            .unwrap_or_default(),
    });
    Ok(out)
}

fn setfun_file_cmd(ctx: &mut Ctx, path: &PathBuf) -> Run {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let table = read_table(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let findings = table_findings(&table)?;
    emit_findings(ctx, &findings);
    Ok(exit_for(findings.iter().all(|f| f.pass)))
}

fn emit_findings(ctx: &mut Ctx, findings: &[Finding]) {
    match ctx.format {
        Format::Text => {
            for f in findings {
                let mut line = format!("{}: {}", f.name, if f.pass { "pass" } else { "FAIL" });
                if !f.detail.is_empty() {
                    let _ = write!(line, " ({})", f.detail);
                }
                ctx.line(line);
            }
        }
        Format::Csv => {
            ctx.line("check,pass,detail");
            for f in findings {
                ctx.line(format!("{},{},\"{}\"", f.name, f.pass, f.detail));
            }
        }
        Format::Jsonl => {
            for f in findings {
                ctx.record(json!({"check": f.name, "pass": f.pass, "detail": f.detail}));
            }
        }
    }
}

fn setfun_suite_cmd(ctx: &mut Ctx, seed: u64, samples: usize) -> Run {
    let results = suites::all_suites(seed, samples);
    let findings: Vec<Finding> = results
        .iter()
        .map(|r| Finding {
            name: r.name,
            pass: r.passed(),
            detail: match r.failures.first() {
                Some(f) => format!("{} cases, {} failures, first: {f}", r.cases, r.failures.len()),
                None => format!("{} cases", r.cases),
            },
        })
        .collect();
    emit_findings(ctx, &findings);
    Ok(exit_for(findings.iter().all(|f| f.pass)))
}

fn abundant_cmd(ctx: &mut Ctx, window: u64) -> Run {
    if window == 0 {
        return Err(usage("window must be positive"));
    }
    let count = abundant_bits(window).into_iter().filter(|&b| b).count() as u64;
    let nu = ctx.num(&ratio(count, window));
    match ctx.format {
        Format::Text => ctx.line(format!("n={window} count={count} nu_n={nu}")),
        Format::Csv => {
            ctx.line("n,count,nu_n");
            ctx.line(format!("{window},{count},{nu}"));
        }
        Format::Jsonl => ctx.record(json!({"n": window, "count": count, "nu_n": nu})),
    }
    Ok(EXIT_PASS)
}
