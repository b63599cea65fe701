use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hopfore::characters::{context_from_json, Context};
use hopfore::green::{eval_green_expr, structure_table};
use hopfore::labels::{parse_label, ModuleLabel};
use hopfore::rules::tensor_decompose;
use hopfore::scalar::parse_scalar;
use hopfore::sweep::{enumerate_pairs, run_sweep, SweepConfig};
use hopfore::Error;

#[derive(Parser)]
#[command(name = "hopfore", version, about = "Tensor products of weight modules over a Hopf-Ore extension")]
struct Cli {
    /// Context file (JSON)
    #[arg(long, global = true)]
    ctx: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Cmd {
    /// Context utilities
    Ctx {
        #[command(subcommand)]
        action: CtxCmd,
    },
    /// Decompose A (x) B: `tensor [CTX] A B`
    Tensor { args: Vec<String> },
    /// Evaluate a Green-ring expression: `green [CTX] EXPR`
    Green { args: Vec<String> },
    /// Multiplication table of the given generators: `table [CTX] G1 G2 ...`
    Table { args: Vec<String> },
    /// Compare the closed-form rules with the oracle on all pairs within bounds
    Verify {
        ctx_file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_nil_t: u64,
        #[arg(long, default_value_t = 3)]
        max_nonnil_t: u64,
        /// Comma-separated scalar literals
        #[arg(long, default_value = "1,-1,2")]
        betas: String,
        #[arg(long)]
        no_degenerate: bool,
        /// Characters drawn when the group has too many to list
        #[arg(long, default_value_t = 3)]
        panel: usize,
    },
    /// Run a small built-in verification battery
    Selftest,
}

#[derive(Subcommand)]
enum CtxCmd {
    /// Check a context file and print its regime and q
    Validate { file: Option<PathBuf> },
}

/// A failure with its exit code: 1 for usage and parse errors, 2 for semantic ones.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: 1, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Syntax { .. }) { 1 } else { 2 };
        Self { code, msg: e.to_string() }
    }
}

type CliResult = Result<u8, Failure>;

/// Adds the offending input and a caret under the error position.
fn with_caret(e: Error, input: &str) -> Failure {
    match &e {
        Error::Syntax { pos, .. } => {
            let caret = format!("{}^", " ".repeat(*pos));
            Failure { code: 1, msg: format!("{e}\n  {input}\n  {caret}") }
        }
        _ => e.into(),
    }
}

fn load_ctx(path: &Path) -> Result<Arc<Context>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    context_from_json(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

/// Resolves the context from `--ctx` or the first positional argument.
fn ctx_and_rest<'a>(flag: &Option<PathBuf>, args: &'a [String], wanted: Option<usize>) -> Result<(Arc<Context>, &'a [String]), Failure> {
    let (path, rest) = match flag {
        Some(p) => (p.clone(), args),
        None => {
            let (first, rest) = args.split_first().ok_or_else(|| Failure::usage("missing context file"))?;
            (PathBuf::from(first), rest)
        }
    };
    if let Some(n) = wanted {
        if rest.len() != n {
            return Err(Failure::usage(format!("expected {n} argument(s) after the context, got {}", rest.len())));
        }
    }
    Ok((load_ctx(&path)?, rest))
}

fn label(text: &str, ctx: &Context) -> Result<ModuleLabel, Failure> {
    parse_label(text, ctx).map_err(|e| with_caret(e, text))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn run(cli: Cli) -> CliResult {
    if cli.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    match &cli.cmd {
        Cmd::Ctx { action: CtxCmd::Validate { file } } => {
            let path = file.clone().or_else(|| cli.ctx.clone()).ok_or_else(|| Failure::usage("missing context file"))?;
            let ctx = load_ctx(&path)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => print_json(&json!({
                    "regime": ctx.regime().to_string(),
                    "s": ctx.s().ok(),
                    "q": ctx.q().to_string(),
                    "conductor": ctx.field().conductor(),
                })),
                _ => println!("regime={}, q={}", ctx.regime(), ctx.q()),
            }
            Ok(0)
        }
        Cmd::Tensor { args } => {
            let (ctx, rest) = ctx_and_rest(&cli.ctx, args, Some(2))?;
            let a = label(&rest[0], &ctx)?;
            let b = label(&rest[1], &ctx)?;
            let d = tensor_decompose(&a, &b, &ctx)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => print_json(&d.to_json(&ctx)),
                _ => println!("{}", d.to_text(&ctx)),
            }
            Ok(0)
        }
        Cmd::Green { args } => {
            let (ctx, rest) = ctx_and_rest(&cli.ctx, args, Some(1))?;
            let e = eval_green_expr(&rest[0], &ctx).map_err(|e| with_caret(e, &rest[0]))?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => print_json(&e.to_json()),
                _ => println!("{}", e.to_text()),
            }
            Ok(0)
        }
        Cmd::Table { args } => {
            let (ctx, rest) = ctx_and_rest(&cli.ctx, args, None)?;
            if rest.is_empty() {
                return Err(Failure::usage("table needs at least one generator"));
            }
            let gens = rest.iter().map(|g| label(g, &ctx)).collect::<Result<Vec<_>, _>>()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.jobs)
                .build()
                .map_err(|e| Failure::usage(e.to_string()))?;
            let table = pool.install(|| structure_table(&gens, &ctx))?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => print!("{}", table.to_csv(&ctx)),
                Format::Md | Format::Text => print!("{}", table.to_markdown(&ctx)),
                Format::Json => print_json(&table.to_json(&ctx)),
            }
            Ok(0)
        }
        Cmd::Verify { ctx_file, max_nil_t, max_nonnil_t, betas, no_degenerate, panel } => {
            let path = ctx_file.clone().or_else(|| cli.ctx.clone()).ok_or_else(|| Failure::usage("missing context file"))?;
            let ctx = load_ctx(&path)?;
            let beta_panel = betas
                .split(',')
                .map(|b| parse_scalar(b.trim(), ctx.field()).map_err(|e| with_caret(e, b.trim())))
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = SweepConfig {
                max_nil_t: *max_nil_t,
                max_nonnil_t: *max_nonnil_t,
                beta_panel,
                include_degenerate: !no_degenerate,
                seed: cli.seed,
                parallelism: cli.jobs,
                character_panel: *panel,
            };
            let d = verify(&ctx, &cfg, betas)?;
            Ok(if d == 0 { 0 } else { 3 })
        }
        Cmd::Selftest => selftest(cli.jobs),
    }
}

/// Streams sorted report lines followed by the summary; returns the disagreement count.
fn verify(ctx: &Arc<Context>, cfg: &SweepConfig, betas: &str) -> Result<usize, Failure> {
    println!(
        "{}",
        json!({
            "seed": cfg.seed,
            "max_nil_t": cfg.max_nil_t,
            "max_nonnil_t": cfg.max_nonnil_t,
            "betas": betas,
            "include_degenerate": cfg.include_degenerate,
            "character_panel": cfg.character_panel,
        })
    );
    let reports = run_sweep(ctx, cfg)?;
    let mut lines: Vec<String> = reports.iter().map(|r| r.to_json(ctx).to_string()).collect();
    lines.sort();
    for l in &lines {
        println!("{l}");
    }
    let d = reports.iter().filter(|r| !r.agree).count();
    println!("{}", json!({"pairs": reports.len(), "disagreements": d}));
    Ok(d)
}

fn selftest(jobs: usize) -> CliResult {
    let cases = [
        (r#"{"group": [0], "a": [1], "chi": ["1/2"]}"#, 6, 1),
        (r#"{"group": [2], "a": [1], "chi": ["-1"]}"#, 6, 3),
        (r#"{"group": [3], "a": [1], "chi": ["z"]}"#, 5, 2),
        (r#"{"group": [4], "a": [1], "chi": ["-1"]}"#, 4, 2),
    ];
    let mut failed = 0;
    for (text, nil_t, nonnil_t) in cases {
        let ctx = context_from_json(text)?;
        let f = ctx.field().clone();
        let mut cfg = SweepConfig::new(nil_t, nonnil_t, vec![f.one(), f.from_int(-1), f.zeta()]);
        cfg.parallelism = jobs;
        let reports = run_sweep(&ctx, &cfg)?;
        let bad = reports.iter().filter(|r| !r.agree).count();
        let status = if bad == 0 { "ok" } else { "FAILED" };
        println!("{status} {text}: {} pairs, {bad} disagreements", reports.len());
        failed += bad;
        debug_assert_eq!(reports.len(), enumerate_pairs(&ctx, &cfg)?.len());
    }
    Ok(if failed == 0 { 0 } else { 3 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
