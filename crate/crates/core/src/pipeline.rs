//! Three-stage hybrid workflow: classical pre-processing, quantum offload of
//! the variational loop, classical post-processing.
//!
//! Communication cost is modelled, not slept: every objective evaluation and
//! the final extraction count as one round trip to the quantum device, and
//! the reported overhead is `round trips * offload_latency`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use crate::bench::BenchRecord;
use crate::classical::{single_flip_refine, Algorithm};
use crate::driver::{run_qaoa, QaoaConfig, QaoaResult};
use crate::error::{Error, Result};
use crate::graph::{CutAssignment, Graph};
use crate::scalar::Scalar;

pub const STAGE_PREPROCESS: &str = "preprocess";
pub const STAGE_QUANTUM: &str = "quantum";
pub const STAGE_POSTPROCESS: &str = "postprocess";

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub qaoa: QaoaConfig,
    /// Simulated seconds per quantum round trip.
    pub offload_latency: f64,
    /// Run single-flip hill climbing on the extracted cut.
    pub postprocess_refine: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            qaoa: QaoaConfig::default(),
            offload_latency: 0.0,
            postprocess_refine: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport<T> {
    pub stage_timings: BTreeMap<String, f64>,
    pub offload_count: usize,
    pub offload_latency: f64,
    pub simulated_comm_overhead: f64,
    pub final_cut: CutAssignment,
    pub qaoa_result: QaoaResult<T>,
}

pub fn run_pipeline<T: Scalar>(g: &Graph, cfg: &PipelineConfig) -> Result<PipelineReport<T>> {
    if !(cfg.offload_latency >= 0.0) || !cfg.offload_latency.is_finite() {
        return Err(Error::invalid(format!(
            "offload latency {} must be finite and non-negative",
            cfg.offload_latency
        )));
    }
    let mut stage_timings = BTreeMap::new();

    let t = Instant::now();
    cfg.qaoa.validate()?;
    let graph = Graph::new(g.n(), g.edges().iter().copied())?;
    stage_timings.insert(STAGE_PREPROCESS.to_string(), t.elapsed().as_secs_f64());

    let t = Instant::now();
    let qaoa_result: QaoaResult<T> = run_qaoa(&graph, &cfg.qaoa)?;
    stage_timings.insert(STAGE_QUANTUM.to_string(), t.elapsed().as_secs_f64());
    let offload_count = qaoa_result.n_evaluations + qaoa_result.warmup_evaluations + 1;

    let t = Instant::now();
    let final_cut = if cfg.postprocess_refine {
        single_flip_refine(&graph, &qaoa_result.best_cut)?
    } else {
        qaoa_result.best_cut.clone()
    };
    final_cut.verify(&graph)?;
    stage_timings.insert(STAGE_POSTPROCESS.to_string(), t.elapsed().as_secs_f64());

    Ok(PipelineReport {
        stage_timings,
        offload_count,
        offload_latency: cfg.offload_latency,
        simulated_comm_overhead: offload_count as f64 * cfg.offload_latency,
        final_cut,
        qaoa_result,
    })
}

impl<T: Scalar> PipelineReport<T> {
    /// One `key=value` pair per line, in a fixed order.
    pub fn to_key_value(&self) -> String {
        let q = &self.qaoa_result;
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k}={v}");
        };
        kv("cut", self.final_cut.cut_value().to_string());
        kv("assignment", self.final_cut.signs());
        kv("qaoa_cut", q.best_cut.cut_value().to_string());
        kv("expectation", format!("{:.9}", q.best_expectation.as_f64()));
        kv("depth", q.best_params.depth().to_string());
        kv("gammas", join(q.best_params.gammas()));
        kv("betas", join(q.best_params.betas()));
        kv("n_evaluations", q.n_evaluations.to_string());
        kv("warmup_evaluations", q.warmup_evaluations.to_string());
        kv("offload_count", self.offload_count.to_string());
        kv("offload_latency_s", format!("{}", self.offload_latency));
        kv(
            "simulated_comm_overhead_s",
            format!("{}", self.simulated_comm_overhead),
        );
        kv("qaoa_time_s", format!("{:.6}", q.elapsed));
        for (stage, secs) in &self.stage_timings {
            kv(&format!("time_{stage}_s"), format!("{secs:.6}"));
        }
        out
    }

    /// The run as a row of the benchmark CSV (final cut, quantum stage time).
    pub fn bench_record(&self, graph: &Graph, seed: u64) -> BenchRecord {
        BenchRecord {
            algorithm: Algorithm::Qaoa,
            n: graph.n(),
            m: graph.m(),
            depth: self.qaoa_result.best_params.depth(),
            cut: self.final_cut.cut_value(),
            runtime_s: self.qaoa_result.elapsed,
            seed,
            expectation: Some(self.qaoa_result.best_expectation.as_f64()),
        }
    }
}

fn join<T: Scalar>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| format!("{:.9}", x.as_f64()))
        .collect::<Vec<_>>()
        .join(",")
}
