//! `graphmatch`: sample correlated graphs, match them, run benchmarks.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphmatch::experiment::{match_graphs, run_and_write, summarize, summary_path, Algo, ExperimentConfig, MatchOptions};
use graphmatch::graph::estimate_edge_probability;
use graphmatch::ingest::{ingest_edge_list, read_graph, read_permutation, write_edge_list, write_permutation};
use graphmatch::models::{sample_correlated_er, CorrelatedErParams};
use graphmatch::{accuracy, MatchResult};

#[derive(Parser)]
#[command(name = "graphmatch", version, about = "Matching of correlated random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a correlated Erdős–Rényi pair.
    Generate(GenerateArgs),
    /// Match two edge-list files.
    Match(MatchArgs),
    /// Run a benchmark described by a config file.
    Bench(BenchArgs),
    /// Normalize a SNAP edge list.
    Ingest(IngestArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    /// Marginal edge probability.
    #[arg(long)]
    q: f64,
    /// Edge retention probability.
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Directory receiving a.edges, b.edges and truth.perm.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct MatchArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, default_value = "dp")]
    algo: String,
    /// Retention probability, needed by the dense and seeded matchers.
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    /// Ground truth permutation; enables the accuracy report and seeded runs.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Number of correct seeds for `seeded`.
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides, `key=value`; these win over the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    input: PathBuf,
    /// Drop edges touching ids above this value.
    #[arg(long)]
    max_id: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    /// Writes `index external_id` lines.
    #[arg(long)]
    id_map: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<graphmatch::Error> for Failure {
    fn from(e: graphmatch::Error) -> Self {
        match e {
            graphmatch::Error::InvalidParameter(_) | graphmatch::Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn generate(args: GenerateArgs) -> Outcome {
    let pair = sample_correlated_er(&CorrelatedErParams::new(args.n, args.q, args.s, args.seed))?;
    fs::create_dir_all(&args.out_dir)?;
    write_edge_list(&pair.a, create(&args.out_dir.join("a.edges"))?)?;
    write_edge_list(&pair.b, create(&args.out_dir.join("b.edges"))?)?;
    write_permutation(&pair.pi_star, create(&args.out_dir.join("truth.perm"))?)?;
    println!("wrote {} vertices, {} and {} edges", args.n, pair.a.num_edges(), pair.b.num_edges());
    Ok(())
}

fn run_match(args: MatchArgs) -> Outcome {
    let algo: Algo = args.algo.parse()?;
    let a = read_graph(open(&args.a)?, None)?;
    let b = read_graph(open(&args.b)?, Some(a.n()))?;
    let a = if a.n() < b.n() { read_graph(open(&args.a)?, Some(b.n()))? } else { a };
    let truth = args.truth.as_deref().map(|p| read_permutation(open(p)?).map_err(Failure::from)).transpose()?;
    if algo == Algo::Seeded && truth.is_none() {
        return Err(Failure::Usage("the seeded matcher draws its seeds from --truth".into()));
    }
    let q = estimate_edge_probability(&a, &b);
    if !(q > 0.0 && q < 1.0) {
        return Err(Failure::Runtime(format!("estimated edge probability {q} leaves nothing to match")));
    }
    let opts = MatchOptions { seeds: args.seeds, ..MatchOptions::default() };
    let result = match_graphs(&a, &b, algo, q, args.s, truth.as_ref(), &opts, args.seed)?;
    let (perm, status) = match &result {
        MatchResult::Exact(p) => (p, "ok"),
        MatchResult::Fallback { permutation, reason } => {
            eprintln!("warning: {reason}; reporting a fallback permutation");
            (permutation, "fallback")
        }
        MatchResult::Failed(reason) => return Err(Failure::Runtime(format!("matching failed: {reason}"))),
    };
    write_permutation(perm, create(&args.out)?)?;
    match truth {
        Some(t) => println!("status {status} accuracy {}", accuracy(perm, &t)?),
        None => println!("status {status}"),
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Outcome {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::parse(&fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?)?,
        None => ExperimentConfig::default(),
    };
    for kv in &args.overrides {
        let (k, v) = kv.split_once('=').ok_or_else(|| Failure::Usage(format!("override {kv:?} is not key=value")))?;
        cfg.set(k, v)?;
    }
    if let Some(out) = args.output {
        cfg.output = Some(out);
    }
    let rows = run_and_write(&cfg)?;
    let mut stdout = std::io::stdout().lock();
    for s in summarize(&rows) {
        writeln!(stdout, "{} {}={} {}: median accuracy {}", s.model, s.param_name, s.param_value, s.algo, s.median_accuracy)?;
    }
    if let Some(path) = &cfg.output {
        writeln!(stdout, "wrote {} and {}", path.display(), summary_path(path).display())?;
    }
    Ok(())
}

fn ingest(args: IngestArgs) -> Outcome {
    let g = ingest_edge_list(open(&args.input)?, args.max_id)?;
    write_edge_list(&g.graph, create(&args.out)?)?;
    if let Some(path) = &args.id_map {
        let mut w = create(path)?;
        for (v, id) in g.ids.iter().enumerate() {
            writeln!(w, "{v} {id}")?;
        }
    }
    println!("{} vertices, {} edges", g.graph.n(), g.graph.num_edges());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Match(a) => run_match(a),
        Command::Bench(a) => bench(a),
        Command::Ingest(a) => ingest(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
