//! Benchmark runner: sample instances along a noise sweep, run matchers,
//! score them against the planted permutation and write CSV.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::baselines::{match_by_sorted_values, match_degree_sort, match_qp, match_spectral, QpParams};
use crate::dense::{match_dense, match_dense_wigner, DenseParams, WignerDenseParams};
use crate::dp::{match_degree_profile, match_row_profile};
use crate::error::{Error, Result};
use crate::graph::{estimate_edge_probability, Graph};
use crate::ingest::ingest_edge_list;
use crate::models::{sample_correlated_er, sample_correlated_wigner, CorrelatedErParams, SymMatrix, WignerParams};
use crate::outcome::MatchResult;
use crate::permutation::{accuracy, Permutation};
use crate::profiles::{CdfNorm, DegreeMode, Distance, ProfileConfig};
use crate::refine::{iterative_cleanup, iterative_cleanup_dense, CleanupParams, CleanupSolver};
use crate::rng::{derive_seed, stream_rng, Stream};
use crate::score::Selection;
use crate::seeded::{seeded_match_with, SeedMap, SeededParams};
use crate::sparse::{match_sparse, SparseParams};

pub const CSV_HEADER: [&str; 10] =
    ["model", "n", "param_name", "param_value", "algo", "trial", "seed", "accuracy", "runtime_ms", "status"];
pub const SUMMARY_HEADER: [&str; 8] =
    ["model", "n", "param_name", "param_value", "algo", "trials", "median_accuracy", "median_runtime_ms"];

macro_rules! keyword_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.trim() {
                    $($text => Ok($name::$variant),)+
                    other => {
                        let choices: Vec<&str> = Self::ALL.iter().map(|v| v.as_str()).collect();
                        Err(Error::InvalidParameter(format!(
                            "unknown {} {other:?}; expected one of {}",
                            stringify!($name).to_lowercase(),
                            choices.join(", ")
                        )))
                    }
                }
            }
        }
    };
}

keyword_enum!(Model { Er => "er", Wigner => "wigner", File => "file" });

keyword_enum!(SweepKind {
    S => "s",
    Delta => "delta",
    SqrtDelta => "sqrt_delta",
    SqrtDeltaLogN => "sqrt_delta_log_n",
    Sigma => "sigma",
    SigmaLogN => "sigma_log_n",
});

keyword_enum!(Algo {
    Dp => "dp",
    DpPlus => "dp-plus",
    Dense => "dense",
    Sparse => "sparse",
    Seeded => "seeded",
    Degree => "degree",
    Spectral => "spectral",
    Qp => "qp",
    QpPlus => "qp-plus",
    SpPlus => "sp-plus",
});

keyword_enum!(DistanceKind { W1 => "w1", BinnedL1 => "z" });

impl SweepKind {
    fn is_wigner(self) -> bool {
        matches!(self, SweepKind::Sigma | SweepKind::SigmaLogN)
    }

    /// Retention probability `s` (graph models) or noise `sigma` (Wigner)
    /// at sweep value `v`.
    pub fn noise(self, v: f64, n: usize) -> f64 {
        let ln = (n.max(2) as f64).ln();
        match self {
            SweepKind::S | SweepKind::Sigma => v,
            SweepKind::Delta => 1.0 - v,
            SweepKind::SqrtDelta => 1.0 - v * v,
            SweepKind::SqrtDeltaLogN => 1.0 - (v / ln).powi(2),
            SweepKind::SigmaLogN => v / ln,
        }
    }
}

/// Edge probability of the ER model, either marginal or of the parent graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeProbability {
    Marginal(f64),
    Parent(f64),
    /// Parent probability `ln²n / n`.
    ParentLogSquared,
}

impl EdgeProbability {
    /// Marginal `q` at retention `s`.
    pub fn marginal(self, n: usize, s: f64) -> f64 {
        match self {
            EdgeProbability::Marginal(q) => q,
            EdgeProbability::Parent(p) => p * s,
            EdgeProbability::ParentLogSquared => {
                let ln = (n as f64).ln();
                ln * ln / n as f64 * s
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub n: usize,
    pub edge_probability: EdgeProbability,
    pub sweep_kind: SweepKind,
    pub sweep: Vec<f64>,
    pub algos: Vec<Algo>,
    pub distance: DistanceKind,
    /// Bin count override; matchers pick their own default otherwise.
    pub bins: Option<usize>,
    pub outdegrees: bool,
    pub trials: usize,
    pub master_seed: u64,
    pub cleanup_iters: usize,
    /// Number of correct seeds handed to the seeded matcher.
    pub seeds: Option<usize>,
    pub input: Option<PathBuf>,
    pub max_id: Option<u64>,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            model: Model::Er,
            n: 1000,
            edge_probability: EdgeProbability::ParentLogSquared,
            sweep_kind: SweepKind::SqrtDeltaLogN,
            sweep: vec![0.25],
            algos: vec![Algo::Dp],
            distance: DistanceKind::W1,
            bins: None,
            outdegrees: false,
            trials: 10,
            master_seed: 1,
            cleanup_iters: CleanupParams::default().max_iters,
            seeds: None,
            input: None,
            max_id: None,
            output: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::InvalidParameter(format!("{key}: cannot parse {v:?}")))
}

fn parse_list<T, F: Fn(&str) -> Result<T>>(v: &str, f: F) -> Result<Vec<T>> {
    v.split(',').map(str::trim).filter(|t| !t.is_empty()).map(f).collect()
}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "model" => self.model = value.parse()?,
            "n" => self.n = parse_num(key, value)?,
            "q" => self.edge_probability = EdgeProbability::Marginal(parse_num(key, value)?),
            "p" if value == "log2n" => self.edge_probability = EdgeProbability::ParentLogSquared,
            "p" => self.edge_probability = EdgeProbability::Parent(parse_num(key, value)?),
            "sweep_kind" | "param" => self.sweep_kind = value.parse()?,
            "sweep" | "values" => self.sweep = parse_list(value, |t| parse_num(key, t))?,
            "algo" | "algos" => self.algos = parse_list(value, str::parse)?,
            "distance" => self.distance = value.parse()?,
            "bins" => self.bins = Some(parse_num(key, value)?),
            "outdegrees" => self.outdegrees = parse_num(key, value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "seed" | "master_seed" => self.master_seed = parse_num(key, value)?,
            "cleanup_iters" | "T" => self.cleanup_iters = parse_num(key, value)?,
            "seeds" => self.seeds = Some(parse_num(key, value)?),
            "input" => self.input = Some(PathBuf::from(value)),
            "max_id" => self.max_id = Some(parse_num(key, value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            other => return Err(Error::InvalidParameter(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Parses flat `key = value` lines; blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: "expected key = value".into(),
            })?;
            cfg.set(k, v).map_err(|e| Error::Parse { line: idx + 1, message: e.to_string() })?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.sweep.is_empty() {
            return bad("sweep must list at least one value".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.algos.is_empty() {
            return bad("no algorithm selected".into());
        }
        let wigner = self.model == Model::Wigner;
        if wigner != self.sweep_kind.is_wigner() {
            return bad(format!("sweep {} does not apply to model {}", self.sweep_kind, self.model));
        }
        if wigner {
            if let Some(a) = self.algos.iter().find(|a| matches!(a, Algo::Sparse | Algo::Seeded)) {
                return bad(format!("algorithm {a} needs graph inputs"));
            }
        }
        if self.model == Model::File && self.input.is_none() {
            return bad("model file needs an input path".into());
        }
        if self.model != Model::File && self.n < 2 {
            return bad("n must be at least 2".into());
        }
        for &v in &self.sweep {
            let x = self.sweep_kind.noise(v, self.n);
            let ok = if wigner { (0.0..1.0).contains(&x) } else { (0.0..=1.0).contains(&x) && x > 0.0 };
            if !ok {
                return bad(format!("sweep value {v} gives an invalid noise level {x}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fallback,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fallback => "fallback",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub model: Model,
    pub n: usize,
    pub param_name: SweepKind,
    pub param_value: f64,
    pub algo: Algo,
    pub trial: usize,
    pub seed: u64,
    pub accuracy: f64,
    pub runtime_ms: f64,
    pub status: Status,
}

impl ResultRow {
    fn record(&self) -> [String; 10] {
        [
            self.model.to_string(),
            self.n.to_string(),
            self.param_name.to_string(),
            self.param_value.to_string(),
            self.algo.to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            self.accuracy.to_string(),
            format!("{:.3}", self.runtime_ms),
            self.status.as_str().to_string(),
        ]
    }
}

/// Keeps every edge independently with probability `s`.
pub fn subsample_graph(g: &Graph, s: f64, seed: u64) -> Graph {
    subsample_with(g, s, seed, Stream::SubsampleA)
}

fn subsample_with(g: &Graph, s: f64, seed: u64, stream: Stream) -> Graph {
    let mut rng = stream_rng(seed, stream);
    let kept: Vec<(usize, usize)> = g.edges().filter(|_| rng.random_bool(s.clamp(0.0, 1.0))).collect();
    Graph::from_edges(g.n(), kept).expect("a subgraph of a valid graph is valid")
}

enum Instance {
    Graphs { a: Graph, b: Graph, q: f64, s: f64 },
    Matrices { a: SymMatrix, b: SymMatrix },
}

fn sample_instance(cfg: &ExperimentConfig, file_graph: Option<&Graph>, noise: f64, seed: u64) -> Result<(Instance, Permutation)> {
    Ok(match cfg.model {
        Model::Er => {
            let q = cfg.edge_probability.marginal(cfg.n, noise);
            let pair = sample_correlated_er(&CorrelatedErParams::new(cfg.n, q, noise, seed))?;
            (Instance::Graphs { a: pair.a, b: pair.b, q, s: noise }, pair.pi_star)
        }
        Model::Wigner => {
            let pair = sample_correlated_wigner(&WignerParams::new(cfg.n, noise, seed))?;
            (Instance::Matrices { a: pair.a, b: pair.b }, pair.pi_star)
        }
        Model::File => {
            let g = file_graph.expect("file graph loaded before sampling");
            let a = subsample_with(g, noise, seed, Stream::SubsampleA);
            let b_prime = subsample_with(g, noise, seed, Stream::SubsampleB);
            let pi = Permutation::random(g.n(), &mut stream_rng(seed, Stream::Permutation));
            let b = b_prime.permuted(&pi)?;
            let q = estimate_edge_probability(&a, &b).clamp(1e-9, 1.0 - 1e-9);
            (Instance::Graphs { a, b, q, s: noise }, pi)
        }
    })
}

/// Matcher settings shared by every run of an experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchOptions {
    pub distance: DistanceKind,
    pub bins: Option<usize>,
    pub outdegrees: bool,
    pub cleanup_iters: usize,
    pub seeds: Option<usize>,
}

impl Default for MatchOptions {
    fn default() -> Self {
        ExperimentConfig::default().match_options()
    }
}

impl ExperimentConfig {
    pub fn match_options(&self) -> MatchOptions {
        MatchOptions {
            distance: self.distance,
            bins: self.bins,
            outdegrees: self.outdegrees,
            cleanup_iters: self.cleanup_iters,
            seeds: self.seeds,
        }
    }
}

impl MatchOptions {
    fn cleanup(&self) -> CleanupParams {
        CleanupParams { max_iters: self.cleanup_iters, solver: CleanupSolver::Greedy }
    }
}

/// Re-wraps a cleaned-up permutation with the status of the initial match.
fn refine_result(initial: MatchResult, f: impl FnOnce(&Permutation) -> Result<Permutation>) -> Result<MatchResult> {
    Ok(match initial {
        MatchResult::Exact(p) => MatchResult::Exact(f(&p)?),
        MatchResult::Fallback { permutation, reason } => MatchResult::Fallback { permutation: f(&permutation)?, reason },
        failed => failed,
    })
}

/// Runs `algo` on two graphs with edge probability `q` and retention `s`.
///
/// Top-`n` selections run in permissive mode, so ties yield a flagged
/// fallback permutation rather than a failure. The seeded matcher draws
/// `opts.seeds` (default `n / 5`) correct seeds from `truth` using `seed`.
#[allow(clippy::too_many_arguments)]
pub fn match_graphs(
    a: &Graph,
    b: &Graph,
    algo: Algo,
    q: f64,
    s: f64,
    truth: Option<&Permutation>,
    opts: &MatchOptions,
    seed: u64,
) -> Result<MatchResult> {
    let n = a.n();
    let dp = || {
        let mut pc = ProfileConfig::new(n, q).with_distance(match opts.distance {
            DistanceKind::W1 => Distance::Wasserstein1,
            DistanceKind::BinnedL1 => Distance::BinnedL1,
        });
        pc = pc.with_mode(if opts.outdegrees { DegreeMode::Outdegree } else { DegreeMode::PlainDegree });
        if let Some(bins) = opts.bins {
            pc = pc.with_bins(bins);
        }
        match_degree_profile(a, b, &pc, Selection::Permissive)
    };
    let cleanup = |p: &Permutation| iterative_cleanup(a, b, p, opts.cleanup());
    let matrices = || (SymMatrix::adjacency(a), SymMatrix::adjacency(b));
    match algo {
        Algo::Dp => dp(),
        Algo::DpPlus => refine_result(dp()?, cleanup),
        Algo::Dense => match_dense(a, b, &DenseParams::new(q, s).with_selection(Selection::Permissive)),
        Algo::Sparse => {
            let mut sp = SparseParams::new(n, q).with_selection(Selection::Permissive);
            if let Some(bins) = opts.bins {
                sp = sp.with_bins(bins);
            }
            match_sparse(a, b, &sp)
        }
        Algo::Seeded => {
            let truth = truth.ok_or_else(|| Error::InvalidParameter("seeded matching needs the true permutation".into()))?;
            let count = opts.seeds.unwrap_or(n / 5).min(n);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut stream_rng(seed, Stream::Seeds));
            let seeds = SeedMap::from_permutation(truth, order.into_iter().take(count))?;
            let params = SeededParams::new(q, s).with_selection(Selection::Permissive);
            Ok(seeded_match_with(a, b, &seeds, &params)?.result)
        }
        Algo::Degree => match_degree_sort(a, b),
        Algo::Spectral => {
            let (ma, mb) = matrices();
            match_spectral(&ma, &mb)
        }
        Algo::SpPlus => {
            let (ma, mb) = matrices();
            refine_result(match_spectral(&ma, &mb)?, cleanup)
        }
        Algo::Qp => {
            let (ma, mb) = matrices();
            match_qp(&ma, &mb, &QpParams::default())
        }
        Algo::QpPlus => {
            let (ma, mb) = matrices();
            refine_result(match_qp(&ma, &mb, &QpParams::default())?, cleanup)
        }
    }
}

/// Runs `algo` on two weighted symmetric matrices.
pub fn match_matrices(a: &SymMatrix, b: &SymMatrix, algo: Algo, opts: &MatchOptions) -> Result<MatchResult> {
    let cleanup = |p: &Permutation| iterative_cleanup_dense(a, b, p, opts.cleanup());
    let dp = || match_row_profile(a, b, CdfNorm::L1, Selection::Permissive);
    match algo {
        Algo::Dp => dp(),
        Algo::DpPlus => refine_result(dp()?, cleanup),
        Algo::Dense => {
            let params = WignerDenseParams { selection: Selection::Permissive, ..WignerDenseParams::default() };
            match_dense_wigner(a, b, &params)
        }
        Algo::Degree => {
            let sums = |m: &SymMatrix| (0..m.n()).map(|i| m.row(i).iter().sum()).collect::<Vec<f64>>();
            Ok(MatchResult::Exact(match_by_sorted_values(&sums(a), &sums(b))?))
        }
        Algo::Spectral => match_spectral(a, b),
        Algo::SpPlus => refine_result(match_spectral(a, b)?, cleanup),
        Algo::Qp => match_qp(a, b, &QpParams::default()),
        Algo::QpPlus => refine_result(match_qp(a, b, &QpParams::default())?, cleanup),
        Algo::Sparse | Algo::Seeded => Err(Error::InvalidParameter(format!("algorithm {algo} needs graph inputs"))),
    }
}

fn load_file_graph(cfg: &ExperimentConfig) -> Result<Option<Graph>> {
    if cfg.model != Model::File {
        return Ok(None);
    }
    let path = cfg.input.as_ref().expect("validated");
    let reader = BufReader::new(File::open(path)?);
    Ok(Some(ingest_edge_list(reader, cfg.max_id)?.graph))
}

/// Runs every (sweep value, trial) and every algorithm on the same sampled
/// instance. Rows come back ordered by sweep value, trial, then algorithm in
/// config order. Failed matches without any permutation score 0.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let file_graph = load_file_graph(cfg)?;
    let n = file_graph.as_ref().map_or(cfg.n, Graph::n);
    let opts = cfg.match_options();
    let jobs: Vec<(usize, usize)> =
        (0..cfg.sweep.len()).flat_map(|point| (0..cfg.trials).map(move |trial| (point, trial))).collect();
    let blocks: Vec<Result<Vec<ResultRow>>> = jobs
        .into_par_iter()
        .map(|(point, trial)| {
            let value = cfg.sweep[point];
            let seed = derive_seed(cfg.master_seed, point as u64, trial as u64);
            let (instance, truth) = sample_instance(cfg, file_graph.as_ref(), cfg.sweep_kind.noise(value, n), seed)?;
            cfg.algos
                .iter()
                .map(|&algo| {
                    let start = Instant::now();
                    let result = match &instance {
                        Instance::Graphs { a, b, q, s } => match_graphs(a, b, algo, *q, *s, Some(&truth), &opts, seed)?,
                        Instance::Matrices { a, b } => match_matrices(a, b, algo, &opts)?,
                    };
                    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
                    let (accuracy, status) = match &result {
                        MatchResult::Exact(p) => (accuracy(p, &truth)?, Status::Ok),
                        MatchResult::Fallback { permutation, .. } => (accuracy(permutation, &truth)?, Status::Fallback),
                        MatchResult::Failed(_) => (0.0, Status::Failed),
                    };
                    Ok(ResultRow {
                        model: cfg.model,
                        n,
                        param_name: cfg.sweep_kind,
                        param_value: value,
                        algo,
                        trial,
                        seed,
                        accuracy,
                        runtime_ms,
                        status,
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for block in blocks {
        rows.extend(block?);
    }
    Ok(rows)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    match v.len() {
        0 => f64::NAN,
        len if len % 2 == 1 => v[len / 2],
        len => 0.5 * (v[len / 2 - 1] + v[len / 2]),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub model: Model,
    pub n: usize,
    pub param_name: SweepKind,
    pub param_value: f64,
    pub algo: Algo,
    pub trials: usize,
    pub median_accuracy: f64,
    pub median_runtime_ms: f64,
}

/// Per-point, per-algorithm medians, in first-appearance order.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut keys: Vec<(u64, Algo)> = Vec::new();
    for r in rows {
        let key = (r.param_value.to_bits(), r.algo);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(bits, algo)| {
            let group: Vec<&ResultRow> =
                rows.iter().filter(|r| r.param_value.to_bits() == bits && r.algo == algo).collect();
            let acc: Vec<f64> = group.iter().map(|r| r.accuracy).collect();
            let time: Vec<f64> = group.iter().map(|r| r.runtime_ms).collect();
            let first = group[0];
            SummaryRow {
                model: first.model,
                n: first.n,
                param_name: first.param_name,
                param_value: first.param_value,
                algo,
                trials: group.len(),
                median_accuracy: median(&acc),
                median_runtime_ms: median(&time),
            }
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in rows {
        w.write_record(r.record()).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER).map_err(csv_error)?;
    for r in rows {
        w.write_record([
            r.model.to_string(),
            r.n.to_string(),
            r.param_name.to_string(),
            r.param_value.to_string(),
            r.algo.to_string(),
            r.trials.to_string(),
            r.median_accuracy.to_string(),
            format!("{:.3}", r.median_runtime_ms),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// `results.csv` → `results.summary.csv`.
pub fn summary_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
    path.with_file_name(format!("{stem}.summary.csv"))
}

/// Runs the experiment and writes both CSV files when an output path is
/// configured.
pub fn run_and_write(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let rows = run_experiment(cfg)?;
    if let Some(path) = &cfg.output {
        write_csv(&rows, File::create(path)?)?;
        write_summary(&summarize(&rows), File::create(summary_path(path))?)?;
    }
    Ok(rows)
}
