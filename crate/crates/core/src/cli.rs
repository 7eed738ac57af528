//! The `tmotif` command line. Reports go to stdout as one JSON document;
//! diagnostics and errors go to stderr.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 internal error or overflow.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::exact::{Algorithm, ExactCounter};
use crate::graph::{load_temporal_graph, EdgeListReader, TemporalGraph, TimeDelta};
use crate::motif::{parse_motif, Motif};
use crate::sampling::{diagnose, Estimator, SamplingConfig};
use crate::testkit::{self, BurstyGraphConfig, CliqueInstance};

#[derive(Debug, Parser)]
#[command(
    name = "tmotif",
    version,
    about = "Count and estimate temporal motifs in timestamped edge lists"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact count with a per-duration histogram.
    Count(CountArgs),
    /// Sampling estimate of the count.
    Estimate(EstimateArgs),
    /// Count every window of one shift and report q/Y statistics.
    Diagnose(DiagnoseArgs),
    /// Write a generated edge list.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
struct QueryArgs {
    /// Edge list: one `src dst t` per line.
    #[arg(long)]
    input: PathBuf,
    /// `m23`, `bifan`, `triangle`, `edge`, or a file of `u v` lines.
    #[arg(long)]
    motif: String,
    /// Time span in the input's native unit (`max` for unbounded).
    #[arg(long, value_parser = parse_delta)]
    delta: TimeDelta,
    /// bt, ex23, or auto.
    #[arg(long, default_value = "auto")]
    algo: String,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    query: QueryArgs,
}

#[derive(Debug, Args)]
struct SamplingArgs {
    /// Window width multiplier (windows are c·delta wide).
    #[arg(long, default_value_t = 32)]
    c: u64,
    /// Number of shifts.
    #[arg(long, default_value_t = 8)]
    b: usize,
    /// Sampling probability scale.
    #[arg(long, default_value_t = 32.0)]
    r: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target relative error, reported against the variance budget.
    #[arg(long)]
    epsilon: Option<f64>,
}

impl SamplingArgs {
    fn config(&self) -> SamplingConfig {
        SamplingConfig {
            c: self.c,
            b: self.b,
            r: self.r,
            seed: self.seed,
            target_epsilon: self.epsilon,
        }
    }
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[command(flatten)]
    query: QueryArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Worker threads (defaults to available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Read the input in one time-ordered pass, keeping only current windows.
    #[arg(long)]
    streaming: bool,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    #[command(flatten)]
    query: QueryArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Include the full q and Y vectors.
    #[arg(long)]
    vectors: bool,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Uniform endpoints and timestamps.
    Random {
        #[arg(long)]
        nodes: u32,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        t_range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Short exchanges between random node pairs.
    Bursty {
        #[arg(long)]
        nodes: u32,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        t_range: i64,
        #[arg(long, default_value_t = 6)]
        max_burst: usize,
        #[arg(long, default_value_t = 100)]
        burst_span: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Temporal-star instance that has a match iff the graph has a k-clique.
    Reduction {
        /// Undirected graph: `u v` per line, nodes numbered from 1.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// Node count (defaults to the largest id in the file).
        #[arg(long)]
        nodes: Option<u32>,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        motif_output: PathBuf,
    },
}

fn parse_delta(s: &str) -> Result<TimeDelta, String> {
    match s {
        "max" | "inf" => Ok(TimeDelta::MAX),
        _ => s.parse().map_err(|_| format!("`{s}` is not an integer time span")),
    }
}

/// Input statistics: nodes, temporal edges, static edges.
#[derive(Debug, Clone, Serialize)]
pub struct InputStats {
    pub nodes: usize,
    pub temporal_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub static_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_span: Option<i64>,
}

impl InputStats {
    fn of(g: &TemporalGraph) -> Self {
        Self {
            nodes: g.num_nodes(),
            temporal_edges: g.num_edges(),
            static_edges: Some(g.static_projection().num_edges()),
            time_span: g.t_min().zip(g.t_max()).map(|(a, b)| b - a),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MotifEcho {
    pub spec: String,
    pub nodes: usize,
    pub edges: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub load_ms: f64,
    pub compute_ms: f64,
}

/// Everything a subcommand prints.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub motif: Option<MotifEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<TimeDelta>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputStats>,
    pub result: serde_json::Value,
    pub timing: Timing,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Lib(Error::Config(_)) => 1,
            Failure::Lib(
                Error::Parse { .. }
                | Error::Motif(_)
                | Error::InvalidInput(_)
                | Error::StreamOrder { .. }
                | Error::Io(_),
            ) => 2,
            Failure::Lib(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn read_motif(spec: &str) -> Result<Motif, Failure> {
    match spec {
        "m23" | "bifan" | "triangle" | "edge" => Ok(parse_motif(spec)?),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Lib(Error::InvalidInput(format!("motif file `{path}`: {e}"))))?;
            Ok(parse_motif(&text)?)
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Lib(Error::InvalidInput(format!("{}: {e}", path.display()))))
}

fn echo(spec: &str, motif: &Motif) -> MotifEcho {
    MotifEcho {
        spec: spec.to_owned(),
        nodes: motif.num_nodes(),
        edges: motif.edges().to_vec(),
    }
}

/// Parses the motif and algorithm, rejecting `ex23` for motifs it cannot count.
fn prepare(q: &QueryArgs) -> Result<(Motif, Algorithm), Failure> {
    let motif = read_motif(&q.motif)?;
    let algo: Algorithm = q.algo.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let algo = algo.resolve(&motif).map_err(|e| Failure::Usage(e.to_string()))?;
    if q.delta < 0 {
        return Err(Failure::Usage(format!("--delta must be nonnegative, got {}", q.delta)));
    }
    Ok((motif, algo))
}

fn load(path: &Path) -> Result<(TemporalGraph, f64), Failure> {
    let t = Instant::now();
    let g = load_temporal_graph(open(path)?)?.normalize_timestamps();
    Ok((g, ms(t)))
}

fn cmd_count(args: &CountArgs) -> Result<RunReport, Failure> {
    let (motif, algo) = prepare(&args.query)?;
    let (g, load_ms) = load(&args.query.input)?;
    let t = Instant::now();
    let hist = algo.count(g.edges(), &motif, args.query.delta)?;
    let compute_ms = ms(t);
    Ok(RunReport {
        mode: "exact",
        motif: Some(echo(&args.query.motif, &motif)),
        delta: Some(args.query.delta),
        algorithm: Some(algo.name()),
        input: Some(InputStats::of(&g)),
        result: serde_json::to_value(&hist).map_err(|e| Failure::Lib(Error::Contract(e.to_string())))?,
        timing: Timing { load_ms, compute_ms },
    })
}

fn cmd_estimate(args: &EstimateArgs, err: &mut dyn Write) -> Result<RunReport, Failure> {
    let (motif, algo) = prepare(&args.query)?;
    let cfg = args.sampling.config();
    cfg.validate()?;
    if args.threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let estimator = Estimator::new(cfg).threads(args.threads);
    let delta = args.query.delta;

    let (estimate, input, load_ms, compute_ms, stream_stats) = if args.streaming {
        let t = Instant::now();
        let mut counting = EdgeListReader::new(open(&args.query.input)?);
        let mut total = 0usize;
        for e in counting.by_ref() {
            e?;
            total += 1;
        }
        let nodes = counting.labels().len();
        let load_ms = ms(t);
        let _ = writeln!(err, "streaming {total} edges");
        let t = Instant::now();
        let reader = EdgeListReader::new(open(&args.query.input)?);
        let (est, stats) = estimator.run_streaming(reader, total, &motif, delta, &algo)?;
        let input = InputStats {
            nodes,
            temporal_edges: total,
            static_edges: None,
            time_span: None,
        };
        (est, input, load_ms, ms(t), Some(stats))
    } else {
        let (g, load_ms) = load(&args.query.input)?;
        let t = Instant::now();
        let est = estimator.run(&g, &motif, delta, &algo)?;
        (est, InputStats::of(&g), load_ms, ms(t), None)
    };

    let mut result = serde_json::to_value(&estimate).map_err(|e| Failure::Lib(Error::Contract(e.to_string())))?;
    if let Some(stats) = stream_stats {
        result["stream"] = json!(stats);
    }
    Ok(RunReport {
        mode: "estimate",
        motif: Some(echo(&args.query.motif, &motif)),
        delta: Some(delta),
        algorithm: Some(algo.name()),
        input: Some(input),
        result,
        timing: Timing { load_ms, compute_ms },
    })
}

fn cmd_diagnose(args: &DiagnoseArgs) -> Result<RunReport, Failure> {
    let (motif, algo) = prepare(&args.query)?;
    let cfg = args.sampling.config();
    cfg.validate()?;
    let (g, load_ms) = load(&args.query.input)?;
    let t = Instant::now();
    let mut diag = diagnose(&Estimator::new(cfg), &g, &motif, args.query.delta, &algo)?;
    let compute_ms = ms(t);
    if !args.vectors {
        diag.q.clear();
        diag.y.clear();
    }
    let mut result = serde_json::to_value(&diag).map_err(|e| Failure::Lib(Error::Contract(e.to_string())))?;
    if !args.vectors {
        if let Some(obj) = result.as_object_mut() {
            obj.remove("q");
            obj.remove("y");
        }
    }
    result["config"] = json!(cfg);
    Ok(RunReport {
        mode: "diagnose",
        motif: Some(echo(&args.query.motif, &motif)),
        delta: Some(args.query.delta),
        algorithm: Some(algo.name()),
        input: Some(InputStats::of(&g)),
        result,
        timing: Timing { load_ms, compute_ms },
    })
}

fn write_graph(g: &TemporalGraph, path: &Path) -> Result<(), Failure> {
    let file = File::create(path)?;
    g.write_edge_list(BufWriter::new(file))?;
    Ok(())
}

fn read_clique_graph(path: &Path, nodes: Option<u32>, k: u32) -> Result<CliqueInstance, Failure> {
    let text = std::fs::read_to_string(path)?;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ids: Vec<u32> = line
            .split_whitespace()
            .map(|tok| tok.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Parse {
                line: i + 1,
                message: "expected two positive integers".into(),
            })?;
        if ids.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected `u v`, found {} fields", ids.len()),
            }
            .into());
        }
        edges.push((ids[0], ids[1]));
    }
    let n = nodes.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0));
    Ok(CliqueInstance::new(n, edges, k)?)
}

fn cmd_gen(cmd: &GenCommand) -> Result<RunReport, Failure> {
    let t = Instant::now();
    let (result, kind) = match cmd {
        GenCommand::Random {
            nodes,
            edges,
            t_range,
            seed,
            output,
        } => {
            if *nodes < 1 || *t_range < 1 {
                return Err(Failure::Usage("--nodes and --t-range must be positive".into()));
            }
            let g = testkit::random_temporal_graph(*nodes, *edges, *t_range, *seed);
            write_graph(&g, output)?;
            (
                json!({"output": output, "edges": g.num_edges(), "nodes": nodes}),
                "random",
            )
        }
        GenCommand::Bursty {
            nodes,
            edges,
            t_range,
            max_burst,
            burst_span,
            seed,
            output,
        } => {
            if *nodes < 2 || *t_range < 1 || *max_burst < 1 || *burst_span < 1 {
                return Err(Failure::Usage(
                    "bursty generator needs nodes >= 2 and positive sizes".into(),
                ));
            }
            let g = testkit::random_bursty_temporal_graph(&BurstyGraphConfig {
                nodes: *nodes,
                edges: *edges,
                t_range: *t_range,
                max_burst: *max_burst,
                burst_span: *burst_span,
                seed: *seed,
            });
            write_graph(&g, output)?;
            (
                json!({"output": output, "edges": g.num_edges(), "nodes": nodes}),
                "bursty",
            )
        }
        GenCommand::Reduction {
            graph,
            k,
            nodes,
            output,
            motif_output,
        } => {
            let inst = read_clique_graph(graph, *nodes, *k)?;
            let red = testkit::clique_reduction_instance(&inst);
            write_graph(&red.graph, output)?;
            let mut f = BufWriter::new(File::create(motif_output)?);
            for (u, v) in red.motif.edges() {
                writeln!(f, "{u} {v}")?;
            }
            f.flush()?;
            (
                json!({
                    "output": output,
                    "motif_output": motif_output,
                    "edges": red.graph.num_edges(),
                    "motif_edges": red.motif.num_edges(),
                    "delta": red.delta,
                    "n": inst.n(),
                    "k": inst.k(),
                }),
                "reduction",
            )
        }
    };
    let mut result = result;
    result["kind"] = json!(kind);
    Ok(RunReport {
        mode: "gen",
        motif: None,
        delta: None,
        algorithm: None,
        input: None,
        result,
        timing: Timing {
            load_ms: 0.0,
            compute_ms: ms(t),
        },
    })
}

/// Parses `args` (including the program name) and runs one subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let report = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Estimate(a) => cmd_estimate(a, err),
        Command::Diagnose(a) => cmd_diagnose(a),
        Command::Gen(g) => cmd_gen(g),
    };
    match report {
        Ok(report) => match serde_json::to_string_pretty(&report) {
            Ok(text) => {
                if writeln!(out, "{text}").is_err() {
                    return 3;
                }
                0
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                3
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}
