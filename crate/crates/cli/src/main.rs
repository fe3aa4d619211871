//! `qmaxcut` command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 resource limit,
//! 4 partial benchmark failure, 1 anything else (I/O).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qmaxcut::sim::qubit_cap_from_env;
use qmaxcut::{
    brute_force_maxcut_capped, generate_random_graph, greedy_maxcut, read_edge_list, run_bench,
    run_pipeline, write_edge_list, Algorithm, BenchConfig, Graph, PipelineConfig, PipelineReport64,
    QaoaConfig, SolveResult,
};

#[derive(Parser, Debug)]
#[command(name = "qmaxcut", version, about = "QAOA and classical Max-Cut solvers and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one instance and print a report.
    Solve(SolveArgs),
    /// Run a size/depth sweep and emit CSV plus plot data.
    Bench(BenchArgs),
    /// Write a random graph in edge-list format.
    Gen(GenArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AlgoChoice {
    Brute,
    Greedy,
    Qaoa,
    All,
}

impl AlgoChoice {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgoChoice::Brute => vec![Algorithm::BruteForce],
            AlgoChoice::Greedy => vec![Algorithm::Greedy],
            AlgoChoice::Qaoa => vec![Algorithm::Qaoa],
            AlgoChoice::All => vec![Algorithm::BruteForce, Algorithm::Greedy, Algorithm::Qaoa],
        }
    }
}

#[derive(Args, Debug)]
struct QaoaArgs {
    /// Objective evaluations per depth.
    #[arg(long, default_value_t = 500)]
    budget: usize,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    /// 0 = exact extraction over the probability support.
    #[arg(long, default_value_t = 0)]
    shots: usize,
    /// Disable warm starts between depths.
    #[arg(long)]
    no_warm_start: bool,
}

impl QaoaArgs {
    fn config(&self, depth: usize, seed: u64, qubit_cap: usize) -> QaoaConfig {
        QaoaConfig {
            depth,
            budget: self.budget,
            restarts: self.restarts,
            shots: self.shots,
            seed,
            warm_start: !self.no_warm_start,
            qubit_cap,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    graph: Option<PathBuf>,
    /// Generate a random graph with `n,m`.
    #[arg(long, value_parser = parse_size)]
    gen: Option<(usize, usize)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = AlgoChoice::All)]
    algo: AlgoChoice,
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[command(flatten)]
    qaoa: QaoaArgs,
    /// Simulated seconds per quantum round trip.
    #[arg(long, default_value_t = 0.0)]
    latency: f64,
    /// Apply single-flip refinement to the QAOA cut.
    #[arg(long)]
    refine: bool,
    #[arg(long, default_value_t = qmaxcut::classical::DEFAULT_BRUTE_FORCE_CAP)]
    brute_cap: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Single cell `n,m` instead of the default schedule.
    #[arg(long, value_parser = parse_size, conflicts_with = "schedule")]
    gen: Option<(usize, usize)>,
    /// Cells as `n,m;n,m;...`.
    #[arg(long, value_parser = parse_schedule)]
    schedule: Option<Schedule>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = AlgoChoice::All)]
    algo: AlgoChoice,
    /// Depth or comma-separated depths.
    #[arg(long, value_parser = parse_depths, default_value = "1,2,3")]
    depth: Depths,
    #[command(flatten)]
    qaoa: QaoaArgs,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = qmaxcut::classical::DEFAULT_BRUTE_FORCE_CAP)]
    brute_cap: usize,
    /// CSV destination (stdout when absent).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Directory for plot data (`runtime_vs_n.dat`, `runtime_vs_depth.dat`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Destination file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected n,m but got {s:?}"))?;
    let n = a.trim().parse().map_err(|_| format!("bad vertex count {a:?}"))?;
    let m = b.trim().parse().map_err(|_| format!("bad edge count {b:?}"))?;
    Ok((n, m))
}

#[derive(Clone, Debug)]
struct Schedule(Vec<(usize, usize)>);

#[derive(Clone, Debug)]
struct Depths(Vec<usize>);

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    s.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(parse_size)
        .collect::<Result<_, _>>()
        .map(Schedule)
}

fn parse_depths(s: &str) -> Result<Depths, String> {
    s.split(',')
        .map(|d| d.trim().parse::<usize>().map_err(|_| format!("bad depth {d:?}")))
        .collect::<Result<_, _>>()
        .map(Depths)
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<qmaxcut::Error> for Failure {
    fn from(e: qmaxcut::Error) -> Self {
        let code = match e {
            qmaxcut::Error::ResourceLimit { .. } => 3,
            _ => 2,
        };
        Failure { code, err: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        // library errors wrapped with context keep their exit code
        let code = match err.downcast_ref::<qmaxcut::Error>() {
            Some(qmaxcut::Error::ResourceLimit { .. }) => 3,
            Some(_) => 2,
            None => 1,
        };
        Failure { code, err }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Gen(a) => gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .context("writing to stdout")
                .map_err(Failure::from)
        }
    }
}

fn load_graph(path: Option<&Path>, gen: Option<(usize, usize)>, seed: u64) -> Result<Graph, Failure> {
    match (path, gen) {
        (Some(p), _) => {
            let file = fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
            read_edge_list(file)
                .with_context(|| format!("reading {}", p.display()))
                .map_err(Failure::from)
        }
        (None, Some((n, m))) => Ok(generate_random_graph(n, m, seed)?),
        (None, None) => Err(Failure {
            code: 2,
            err: anyhow::anyhow!("one of --graph or --gen is required"),
        }),
    }
}

fn solve(a: SolveArgs) -> Result<u8, Failure> {
    let qubit_cap = qubit_cap_from_env()?;
    let g = load_graph(a.graph.as_deref(), a.gen, a.seed)?;
    let mut blocks = Vec::new();
    let classical_block = |r: SolveResult| {
        format!(
            "algorithm={}\ncut={}\nassignment={}\nruntime_s={:.6}\n",
            r.algorithm,
            r.assignment.cut_value(),
            r.assignment.signs(),
            r.elapsed
        )
    };
    for algo in a.algo.algorithms() {
        match algo {
            Algorithm::BruteForce => {
                blocks.push(classical_block(brute_force_maxcut_capped(&g, a.brute_cap)?))
            }
            Algorithm::Greedy => blocks.push(classical_block(greedy_maxcut(&g)?)),
            Algorithm::Qaoa => {
                let cfg = PipelineConfig {
                    qaoa: a.qaoa.config(a.depth, a.seed, qubit_cap),
                    offload_latency: a.latency,
                    postprocess_refine: a.refine,
                };
                let report: PipelineReport64 = run_pipeline(&g, &cfg)?;
                blocks.push(format!("algorithm=qaoa\n{}", report.to_key_value()));
            }
        }
    }
    let header = format!("graph n={} m={}\n", g.n(), g.m());
    emit(a.out.as_deref(), &format!("{header}\n{}", blocks.join("\n")))?;
    Ok(0)
}

fn bench(a: BenchArgs) -> Result<u8, Failure> {
    let qubit_cap = qubit_cap_from_env()?;
    let mut cfg = BenchConfig {
        depths: a.depth.0.clone(),
        algorithms: a.algo.algorithms(),
        seed: a.seed,
        trials: a.trials,
        brute_cap: a.brute_cap,
        qaoa: a.qaoa.config(1, a.seed, qubit_cap),
        ..Default::default()
    };
    if let Some(cell) = a.gen {
        cfg.schedule = vec![cell];
    } else if let Some(s) = a.schedule {
        cfg.schedule = s.0;
    }
    let outcome = run_bench(&cfg)?;
    emit(a.csv.as_deref(), &outcome.to_csv())?;
    if let Some(dir) = a.out.as_deref() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        emit(Some(&dir.join("runtime_vs_n.dat")), &outcome.runtime_by_size())?;
        emit(Some(&dir.join("runtime_vs_depth.dat")), &outcome.runtime_by_depth())?;
    }
    for row in &outcome.rows {
        if let qmaxcut::BenchRow::Failed { algorithm, n, m, depth, reason, .. } = row {
            eprintln!("cell {algorithm} n={n} m={m} depth={depth} failed: {reason}");
        }
    }
    Ok(if outcome.any_failed() { 4 } else { 0 })
}

fn gen(a: GenArgs) -> Result<u8, Failure> {
    let g = generate_random_graph(a.n, a.m, a.seed)?;
    emit(a.out.as_deref(), &write_edge_list(&g))?;
    Ok(0)
}
