//! `ncproj`: batch front end for the noncommutative projective geometry core.
//!
//! Every command prints one JSON report on stdout (or a short text rendering
//! with `--text`). Exit codes: 0 success, 1 computation error, 2 parse or
//! usage error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ncproj_core::parse::parse_field_spec;
use ncproj_core::{Arity, FieldSpec};

use commands::{Context, SOp};
use report::{render_json, render_text, CliError, CliResult, Outcome, EXIT_COMPUTATION, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "ncproj", version, about = "Exact computations on the noncommutative projective line")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Number of variables; must match input files that declare it
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Coefficient field: QQ or GF:p (overrides the field a file declares)
    #[arg(long, global = true)]
    field: Option<String>,
    /// Highest degree a command may examine
    #[arg(long, global = true, default_value_t = 8)]
    degree_cap: i64,
    /// Highest level of the matrix algebra tower a command may use
    #[arg(long, global = true, default_value_t = 3)]
    level_cap: u32,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit a JSON report (default)
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit a short human-readable rendering
    #[arg(long, global = true)]
    text: bool,
    /// Add wall-clock timings to the report (makes output run-dependent)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dim_k M_j of a presented module
    Hilbert { file: PathBuf, j: i64 },
    /// Stable-free profile (i0, t_i)
    Profile { file: PathBuf },
    /// K0 class in Z[1/d]
    K0 { file: PathBuf },
    /// Torsion submodule and the profile of the torsion-free quotient
    Torsion { file: PathBuf },
    /// Whether two modules become isomorphic in qgr
    Iso { a: PathBuf, b: PathBuf },
    /// Class and normal-form witness of the associated qgr object
    QgrClass { file: PathBuf },
    /// Multiplicity r with the object isomorphic to O(i)^r
    Decompose {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        i: i64,
    },
    /// Normal form of a Leavitt algebra expression
    LeavittEval {
        expr: String,
        /// Rewrite every graded component at this level
        #[arg(long)]
        level: Option<usize>,
    },
    /// Arithmetic in the matrix algebra tower (elements are JSON files)
    SCalc {
        #[command(subcommand)]
        op: SCommand,
    },
    /// Run the acceptance checks
    Verify {
        /// all, or one suite name
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest degree for degree-indexed sweeps
        #[arg(long)]
        max_degree: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum SCommand {
    /// The matrix unit E_pq at a level
    Unit {
        level: u32,
        p: usize,
        q: usize,
    },
    Mul {
        a: PathBuf,
        b: PathBuf,
    },
    Add {
        a: PathBuf,
        b: PathBuf,
    },
    /// The image at a higher level
    Embed {
        a: PathBuf,
        #[arg(long)]
        to: u32,
    },
    /// K0 class of an idempotent
    K0 {
        a: PathBuf,
    },
    /// Trace divided by the matrix size
    Trace {
        a: PathBuf,
    },
    /// An x with a x a = a
    Regular {
        a: PathBuf,
    },
    /// Elements u_i, v_i with sum u_i a v_i = 1
    Simplicity {
        a: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Hilbert { .. } => "hilbert",
            Command::Profile { .. } => "profile",
            Command::K0 { .. } => "k0",
            Command::Torsion { .. } => "torsion",
            Command::Iso { .. } => "iso",
            Command::QgrClass { .. } => "qgr-class",
            Command::Decompose { .. } => "decompose",
            Command::LeavittEval { .. } => "leavitt-eval",
            Command::SCalc { .. } => "s-calc",
            Command::Verify { .. } => "verify",
        }
    }
}

fn context(g: &GlobalArgs) -> CliResult<Context> {
    let d = g.d.map(Arity::new).transpose().map_err(|e| CliError::usage(e.to_string()))?;
    let field: Option<FieldSpec> = match &g.field {
        None => None,
        Some(s) => Some(parse_field_spec(s).ok_or_else(|| CliError::usage(format!("unsupported field {s:?}")))?),
    };
    if g.degree_cap < 0 {
        return Err(CliError::usage("--degree-cap must be nonnegative"));
    }
    Ok(Context { d, field, degree_cap: g.degree_cap, level_cap: g.level_cap, seed: g.seed })
}

fn run(ctx: &Context, command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Hilbert { file, j } => commands::hilbert(ctx, file, *j),
        Command::Profile { file } => commands::profile(ctx, file),
        Command::K0 { file } => commands::k0(ctx, file),
        Command::Torsion { file } => commands::torsion(ctx, file),
        Command::Iso { a, b } => commands::iso(ctx, a, b),
        Command::QgrClass { file } => commands::qgr_class(ctx, file),
        Command::Decompose { file, i } => commands::decompose(ctx, file, *i),
        Command::LeavittEval { expr, level } => commands::leavitt_eval(ctx, expr, *level),
        Command::SCalc { op } => {
            let op = match op {
                SCommand::Unit { level, p, q } => SOp::Unit { level: *level, p: *p, q: *q },
                SCommand::Mul { a, b } => SOp::Mul { a: a.clone(), b: b.clone() },
                SCommand::Add { a, b } => SOp::Add { a: a.clone(), b: b.clone() },
                SCommand::Embed { a, to } => SOp::Embed { a: a.clone(), to: *to },
                SCommand::K0 { a } => SOp::K0 { a: a.clone() },
                SCommand::Trace { a } => SOp::Trace { a: a.clone() },
                SCommand::Regular { a } => SOp::Regular { a: a.clone() },
                SCommand::Simplicity { a } => SOp::Simplicity { a: a.clone() },
            };
            commands::s_calc(ctx, &op)
        }
        Command::Verify { suite, max_degree } => commands::verify(ctx, suite, *max_degree),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let start = Instant::now();
    let ctx = context(&cli.global);
    let config = ctx.as_ref().map(Context::config_json).unwrap_or(serde_json::Value::Null);
    let outcome = ctx.and_then(|ctx| run(&ctx, &cli.command));
    let timing = cli.global.timings.then(|| start.elapsed().as_micros());

    let rendered = if cli.global.text {
        render_text(name, &outcome, timing)
    } else {
        render_json(name, &config, &outcome, timing)
    };
    // a closed pipe downstream is not an error worth a panic
    let _ = writeln!(std::io::stdout(), "{rendered}");

    let code = match &outcome {
        Ok(o) if o.failed => EXIT_COMPUTATION,
        Ok(_) => 0,
        Err(e) => {
            eprintln!("ncproj {name}: {}", e.message);
            if e.code == EXIT_USAGE {
                EXIT_USAGE
            } else {
                EXIT_COMPUTATION
            }
        }
    };
    ExitCode::from(code as u8)
}
