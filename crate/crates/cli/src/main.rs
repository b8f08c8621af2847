use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use dimerlab::formulas::{
    pm_line_formula, pm_middle_cubic_minus_edge, predict_pm_middle, PredictionTag,
};
use dimerlab::io::{graph_from_json, graph_to_dot, graph_to_json, polynomial_to_json};
use dimerlab::lattices::{
    named_cubic, random_cubic, LatticeError, LatticeFamily, LatticeSpec, NamedCubic,
};
use dimerlab::matching::{
    count_pm_with_cap, structured_pm_families, weighted_pm_sum_with, EngineError,
    DEFAULT_FRONTIER_CAP, MAX_FRONTIER_CAP,
};
use dimerlab::transforms::{line_graph, middle_graph, reduce_to_base};
use dimerlab::verify::{run_suite, Suite, VerifyConfig};
use dimerlab::{Graph, Method};

const CAP_ENV: &str = "DIMERLAB_DP_CAP";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0} of {1} cases did not match")]
    Mismatch(usize, usize),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precondition(_) | CliError::Io(_) => 3,
            CliError::Capacity(_) => 4,
            CliError::Mismatch(..) => 5,
        }
    }
}

fn precondition(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "dimerlab",
    version,
    about = "Exact dimer-covering counts for line and middle graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as JSON.
    Gen(GenArgs),
    /// Read a graph on stdin and transform it.
    Transform(TransformArgs),
    /// Count perfect matchings of the graph on stdin.
    Count(CountArgs),
    /// Closed-form prediction for the graph on stdin.
    Predict(PredictArgs),
    /// Structured families of perfect matchings of M(G) for cubic G on stdin.
    Families,
    /// Run a verification suite against the enumeration oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeArg {
    Honeycomb,
    Kagome,
    Silicate,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["lattice", "named", "random_cubic"])))]
struct GenArgs {
    #[arg(long, value_enum, requires_all = ["rows", "cols"])]
    lattice: Option<LatticeArg>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Attach direction weights to lattice edges.
    #[arg(long)]
    weighted: bool,
    /// K4, K33, prism, cube, petersen, bridged10 or bridged14.
    #[arg(long)]
    named: Option<String>,
    #[arg(long, value_name = "N", requires = "seed")]
    random_cubic: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Line,
    Middle,
    Reduce,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Enum,
    Dp,
}

#[derive(Args)]
struct CountArgs {
    /// Output the weighted sum as a polynomial.
    #[arg(long)]
    weighted: bool,
    #[arg(long, value_enum, default_value = "enum")]
    method: MethodArg,
}

#[derive(Args)]
struct PredictArgs {
    /// Predict for M(G - e) with G cubic.
    #[arg(long, value_name = "E", conflicts_with = "line")]
    minus_edge: Option<usize>,
    /// Predict for the line graph instead of the middle graph.
    #[arg(long)]
    line: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record per-case wall time (the report is then no longer reproducible).
    #[arg(long)]
    timing: bool,
}

fn read_graph() -> Result<Graph, CliError> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text)?;
    graph_from_json(&text).map_err(|e| CliError::Usage(format!("bad graph input: {e}")))
}

fn write_graph(g: &Graph, format: Format) -> Result<(), CliError> {
    let text = match format {
        Format::Json => graph_to_json(g),
        Format::Dot => graph_to_dot(g),
    };
    emit(&text)
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn dp_cap() -> Result<usize, CliError> {
    match std::env::var(CAP_ENV) {
        Err(_) => Ok(DEFAULT_FRONTIER_CAP),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(cap) if (1..=MAX_FRONTIER_CAP).contains(&cap) => Ok(cap),
            _ => Err(CliError::Usage(format!(
                "{CAP_ENV} must be an integer in 1..={MAX_FRONTIER_CAP}, got {raw:?}"
            ))),
        },
    }
}

fn engine_error(e: EngineError) -> CliError {
    CliError::Capacity(e.to_string())
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let usage = |e: LatticeError| CliError::Usage(e.to_string());
    let g = if let Some(lattice) = args.lattice {
        let family = match lattice {
            LatticeArg::Honeycomb => LatticeFamily::Honeycomb,
            LatticeArg::Kagome => LatticeFamily::Kagome,
            LatticeArg::Silicate => LatticeFamily::Silicate,
        };
        let (rows, cols) = (args.rows.unwrap_or(0), args.cols.unwrap_or(0));
        LatticeSpec::new(family, rows, cols, args.weighted)
            .build()
            .map_err(usage)?
    } else if let Some(name) = &args.named {
        named_cubic(name.parse::<NamedCubic>().map_err(usage)?)
    } else {
        let n = args.random_cubic.expect("clap enforces one source");
        random_cubic(n, args.seed.expect("clap requires --seed")).map_err(|e| match e {
            LatticeError::BadCubicOrder(_) => usage(e),
            other => precondition(other),
        })?
    };
    write_graph(&g, args.format)
}

fn cmd_transform(args: TransformArgs) -> Result<(), CliError> {
    let g = read_graph()?;
    let out = match args.op {
        Op::Line => line_graph(&g),
        Op::Middle => middle_graph(&g),
        Op::Reduce => {
            let (base, trace) = reduce_to_base(&g).map_err(precondition)?;
            let doc = json!({ "trace": trace.steps, "base": trace.base });
            eprintln!("{doc}");
            base
        }
    };
    write_graph(&out, args.format)
}

fn cmd_count(args: CountArgs) -> Result<(), CliError> {
    let g = read_graph()?;
    let method = match args.method {
        MethodArg::Enum => Method::Enumerate,
        MethodArg::Dp => Method::FrontierDp,
    };
    let cap = dp_cap()?;
    if args.weighted {
        let p = weighted_pm_sum_with(&g, method, cap).map_err(engine_error)?;
        emit(&polynomial_to_json(&p))
    } else {
        let c = count_pm_with_cap(&g, method, cap).map_err(engine_error)?;
        emit(&json!({ "count": c.to_string() }).to_string())
    }
}

fn cmd_predict(args: PredictArgs) -> Result<(), CliError> {
    let g = read_graph()?;
    let doc = if args.line {
        let c = pm_line_formula(&g).map_err(precondition)?;
        json!({ "value": c.to_string(), "tag": PredictionTag::LineGraph })
    } else if let Some(e) = args.minus_edge {
        pm_middle_cubic_minus_edge(&g, e)
            .map_err(precondition)?
            .to_json()
    } else {
        predict_pm_middle(&g).map_err(precondition)?.to_json()
    };
    emit(&doc.to_string())
}

fn cmd_families() -> Result<(), CliError> {
    let g = read_graph()?;
    let families = structured_pm_families(&g).map_err(precondition)?;
    let reports: Vec<_> = families.iter().map(|f| f.report()).collect();
    emit(&serde_json::to_string(&reports).expect("reports serialize"))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let suite: Suite = args.suite.parse().map_err(CliError::Usage)?;
    let config = VerifyConfig {
        nmax: args.nmax,
        trials: args.trials,
        seed: args.seed,
        timing: args.timing,
    };
    let report = run_suite(suite, &config);
    emit(&serde_json::to_string_pretty(&report).expect("report serializes"))?;
    if report.all_matched() {
        Ok(())
    } else {
        Err(CliError::Mismatch(
            report.summary.total - report.summary.matched,
            report.summary.total,
        ))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Count(a) => cmd_count(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Families => cmd_families(),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dimerlab: {e}");
            ExitCode::from(e.code())
        }
    }
}
