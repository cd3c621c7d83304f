//! Command-line front end.
//!
//! Exit codes: 0 success or valid, 1 diagram invalid, 2 usage or
//! configuration error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::artifacts::{census_report, render_svg, DualGraph, Layout, LayoutOptions, Smoothing};
use crate::counting::k_point_table;
use crate::form::ClusterForm;
use crate::order::DiagramOrder;
use crate::search::checkpoint::write_results;
use crate::search::{resume, search_with, Prunes, SearchConfig, SearchError, UnitSelector};
use crate::sequence::{parse_sequence_lines, CrossingSequence};
use crate::trace::foata_normal_form;
use crate::validate::{validate_full, validate_symmetric, ValidDiagram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "crosscut", version, about = "Crossing sequences of symmetric Venn diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate free halves of valid canonical clusters.
    Search(SearchArgs),
    /// Check that sequences describe Venn diagrams.
    Validate(ValidateArgs),
    /// Draw a diagram as SVG.
    Render(RenderArgs),
    /// Export the dual graph.
    Dual(DualArgs),
    /// Print lengths, counting tables and, given a diagram, its census.
    Info(InfoArgs),
    /// Print the commutation normal form of a sequence.
    Canon(CanonArgs),
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(short = 'n')]
    n: u32,
    /// Stop after this many results.
    #[arg(long)]
    limit: Option<usize>,
    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    budget: Option<u64>,
    /// Fixed leading values of alpha.
    #[arg(long)]
    prefix: Option<String>,
    #[arg(long)]
    split_depth: Option<usize>,
    /// Run only units I, I+J, I+2J, ...
    #[arg(long = "unit")]
    unit: Option<String>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Checkpoint file; an existing one is resumed.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Resume the run recorded in this checkpoint, taking its configuration.
    #[arg(long, conflicts_with_all = ["prefix", "split_depth", "unit", "checkpoint", "raw", "no_prune"])]
    resume: Option<PathBuf>,
    /// Results file (sorted, one alpha per line) plus a `.json` sidecar.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit every valid alpha rather than one per diagram.
    #[arg(long)]
    raw: bool,
    /// Disable all pruning except the final validation.
    #[arg(long)]
    no_prune: bool,
    /// Stop after this many work units (the checkpoint stays resumable).
    #[arg(long)]
    max_units: Option<usize>,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Free half, e.g. 3,2,3,4.
    #[arg(long)]
    alpha: Option<String>,
    /// File of free halves, one per line.
    #[arg(long)]
    alpha_file: Option<PathBuf>,
    /// A raw cluster sequence instead of a free half.
    #[arg(long)]
    sigma: Option<String>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(short = 'n')]
    n: u32,
    #[command(flatten)]
    source: Source,
    /// Use only the full-sweep reference check.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LayoutArg {
    Radial,
    Cylinder,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(short = 'n')]
    n: u32,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "radial")]
    layout: LayoutArg,
    /// Shade faces by the number of curves containing them.
    #[arg(long)]
    shade: bool,
    /// Smooth curves with quadratic segments.
    #[arg(long)]
    smooth: bool,
    /// Mark crossings.
    #[arg(long)]
    crossings: bool,
    #[arg(long, default_value_t = 800.0)]
    size: f64,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DualFormat {
    Dot,
    Edges,
}

#[derive(Debug, Args)]
struct DualArgs {
    #[arg(short = 'n')]
    n: u32,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "edges")]
    format: DualFormat,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct InfoArgs {
    #[arg(short = 'n')]
    n: u32,
    #[arg(long, conflicts_with_all = ["alpha_file", "sigma"])]
    alpha: Option<String>,
    #[arg(long, conflicts_with = "sigma")]
    alpha_file: Option<PathBuf>,
    #[arg(long)]
    sigma: Option<String>,
}

#[derive(Debug, Args)]
struct CanonArgs {
    #[arg(long)]
    seq: String,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn io(path: &Path, e: impl std::fmt::Display) -> Failure {
        Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn order(n: u32) -> Result<DiagramOrder, Failure> {
    let order = DiagramOrder::new(n).map_err(Failure::usage)?;
    order.check_sweepable().map_err(Failure::usage)?;
    Ok(order)
}

fn parse_seq(text: &str) -> Result<CrossingSequence, Failure> {
    text.parse().map_err(Failure::usage)
}

/// Each candidate as a cluster sequence, with the free half when one was given.
fn load_sigmas(
    order: DiagramOrder,
    alpha: Option<&str>,
    alpha_file: Option<&Path>,
    sigma: Option<&str>,
) -> Result<Vec<(String, CrossingSequence)>, Failure> {
    let from_alpha = |alpha: CrossingSequence| -> Result<(String, CrossingSequence), Failure> {
        let form = ClusterForm::new(order, alpha.clone()).map_err(Failure::usage)?;
        Ok((format!("alpha=[{alpha}]"), form.sigma()))
    };
    if let Some(text) = alpha {
        return Ok(vec![from_alpha(parse_seq(text)?)?]);
    }
    if let Some(path) = alpha_file {
        let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        let alphas = parse_sequence_lines(&text, order.alpha_length() == 0)
            .map_err(|(line, e)| Failure::usage(format!("{}:{line}: {e}", path.display())))?;
        if alphas.is_empty() {
            return Err(Failure::usage(format!("{}: no sequences", path.display())));
        }
        return alphas.into_iter().map(from_alpha).collect();
    }
    let sigma = parse_seq(sigma.unwrap_or_default())?;
    Ok(vec![(format!("sigma=[{sigma}]"), sigma)])
}

fn load_diagram(order: DiagramOrder, source: &Source) -> Result<ValidDiagram, Failure> {
    let mut sigmas = load_sigmas(order, source.alpha.as_deref(), source.alpha_file.as_deref(), source.sigma.as_deref())?;
    if sigmas.len() != 1 {
        return Err(Failure::usage("expected exactly one diagram"));
    }
    let (label, sigma) = sigmas.remove(0);
    ValidDiagram::new(order, sigma).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{label}: {e}"),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::Io(io) => Failure {
            code: EXIT_IO,
            message: io.to_string(),
        },
        other => Failure::usage(other),
    }
}

fn cmd_search(args: SearchArgs, out: &mut dyn Write) -> Outcome {
    let order = order(args.n)?;
    let mut emit = |alpha: &CrossingSequence| {
        let _ = writeln!(out, "{alpha}");
    };
    let outcome = if let Some(path) = &args.resume {
        resume(path, args.threads, &mut emit).map_err(search_failure)?
    } else {
        let mut config = SearchConfig::new(order);
        config.limit = args.limit;
        config.budget = args.budget.map(Duration::from_millis);
        if let Some(prefix) = &args.prefix {
            config.prefix = parse_seq(prefix)?;
        }
        config.split_depth = args.split_depth;
        config.unit_selector = args.unit.as_deref().map(str::parse::<UnitSelector>).transpose().map_err(Failure::usage)?;
        config.threads = args.threads;
        config.checkpoint_path = args.checkpoint.clone();
        config.dedup = !args.raw;
        config.max_units = args.max_units;
        if args.no_prune {
            config.prunes = Prunes::NONE;
        }
        search_with(&config, &mut emit).map_err(search_failure)?
    };
    if let Some(path) = &args.out {
        write_results(path, order.get(), &outcome.results, &outcome.stats).map_err(|e| Failure::io(path, e))?;
    }
    let stats = &outcome.stats;
    let _ = writeln!(
        out,
        "# n={} results={} nodes={} units={}/{} complete={} elapsed_ms={}",
        order,
        stats.valid_count,
        stats.nodes,
        stats.units_done,
        stats.units_total,
        stats.complete,
        stats.elapsed_ms
    );
    Ok(EXIT_OK)
}

fn cmd_validate(args: ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let order = order(args.n)?;
    let source = &args.source;
    let sigmas = load_sigmas(order, source.alpha.as_deref(), source.alpha_file.as_deref(), source.sigma.as_deref())?;
    let mut code = EXIT_OK;
    for (label, sigma) in sigmas {
        let full = validate_full(order, &sigma);
        let report = if args.oracle {
            full
        } else {
            let fast = validate_symmetric(order, &sigma);
            if fast.is_valid() != full.is_valid() {
                let _ = writeln!(err, "{label}: validators disagree (full: {full}; symmetric: {fast})");
                code = EXIT_INVALID;
                continue;
            }
            fast
        };
        let _ = writeln!(out, "n={order} {label}: {report}");
        if !report.is_valid() {
            code = EXIT_INVALID;
        }
    }
    Ok(code)
}

fn cmd_render(args: RenderArgs) -> Outcome {
    let diagram = load_diagram(order(args.n)?, &args.source)?;
    let options = LayoutOptions {
        layout: match args.layout {
            LayoutArg::Radial => Layout::Radial,
            LayoutArg::Cylinder => Layout::Cylindrical,
        },
        size: args.size,
        smoothing: if args.smooth { Smoothing::Curve } else { Smoothing::Polyline },
        shade_by_cardinality: args.shade,
        show_crossings: args.crossings,
        ..LayoutOptions::default()
    };
    let svg = render_svg(&diagram, &options).map_err(Failure::usage)?;
    write_file(&args.output, &svg)?;
    Ok(EXIT_OK)
}

fn cmd_dual(args: DualArgs) -> Outcome {
    let diagram = load_diagram(order(args.n)?, &args.source)?;
    let graph = DualGraph::from_diagram(&diagram).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: e.to_string(),
    })?;
    let text = match args.format {
        DualFormat::Dot => graph.to_dot(),
        DualFormat::Edges => graph.to_edge_list(),
    };
    write_file(&args.output, &text)?;
    Ok(EXIT_OK)
}

fn cmd_info(args: InfoArgs, out: &mut dyn Write) -> Outcome {
    let order = order(args.n)?;
    let table = k_point_table(order);
    let _ = writeln!(out, "n = {order}");
    let _ = writeln!(out, "cluster length = {}", order.cluster_length());
    let _ = writeln!(out, "alpha length = {}", order.alpha_length());
    let _ = writeln!(out, "{:>3} {:>12} {:>12}", "k", "R_k", "alpha count");
    for row in &table.rows {
        let _ = writeln!(out, "{:>3} {:>12} {:>12}", row.k, row.left_points, row.alpha_count);
    }
    let source = Source {
        alpha: args.alpha,
        alpha_file: args.alpha_file,
        sigma: args.sigma,
    };
    if source.alpha.is_none() && source.alpha_file.is_none() && source.sigma.is_none() {
        return Ok(EXIT_OK);
    }
    let diagram = load_diagram(order, &source)?;
    if let Some(form) = diagram.form() {
        let mut counts = vec![0usize; order.n()];
        for &v in form.alpha().iter() {
            counts[v as usize] += 1;
        }
        let tally: Vec<String> = (1..order.n()).filter(|&k| counts[k] > 0).map(|k| format!("{k}:{}", counts[k])).collect();
        let _ = writeln!(out, "alpha value counts: {{{}}}", tally.join(", "));
    }
    let _ = writeln!(out, "{}", census_report(&diagram));
    Ok(EXIT_OK)
}

fn cmd_canon(args: CanonArgs, out: &mut dyn Write) -> Outcome {
    let seq = parse_seq(&args.seq)?;
    let _ = writeln!(out, "{}", foata_normal_form(&seq));
    Ok(EXIT_OK)
}

/// Runs the command line `argv` (including the program name).
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Search(args) => cmd_search(args, out),
        Command::Validate(args) => cmd_validate(args, out, err),
        Command::Render(args) => cmd_render(args),
        Command::Dual(args) => cmd_dual(args),
        Command::Info(args) => cmd_info(args, out),
        Command::Canon(args) => cmd_canon(args, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
