//! Max-Cut with QAOA on an exact statevector simulator, classical baselines
//! (exhaustive search, sequential greedy), a hybrid quantum-classical
//! pipeline model with offload accounting, and a benchmark harness.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below are what the CLI and benchmarks use.

pub mod bench;
pub mod classical;
pub mod driver;
pub mod error;
pub mod graph;
pub mod optimize;
pub mod pipeline;
pub mod rng;
pub mod scalar;
pub mod sim;

pub use bench::{run_bench, BenchConfig, BenchOutcome, BenchRecord, BenchRow, CSV_HEADER};
pub use classical::{
    brute_force_maxcut, brute_force_maxcut_capped, greedy_maxcut, single_flip_refine, Algorithm,
    SolveResult,
};
pub use driver::{
    evaluate_params, extract_cut, optimize_params, run_depth_sweep, run_qaoa, Optimized,
    QaoaConfig, QaoaResult,
};
pub use error::{Error, Result};
pub use graph::{
    cut_value, generate_random_graph, parse_edge_list, read_edge_list, write_edge_list,
    CutAssignment, Graph,
};
pub use optimize::{NelderMead, Optimum};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineReport};
pub use scalar::Scalar;
pub use sim::{
    apply_cost_layer, apply_mixer_layer, apply_qaoa_circuit, expectation_cut, init_uniform,
    sample_bitstrings, CostDiagonal, QaoaParams, StateVector,
};

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type QaoaParams64 = QaoaParams<f64>;
pub type QaoaParams32 = QaoaParams<f32>;
pub type QaoaResult64 = QaoaResult<f64>;
pub type QaoaResult32 = QaoaResult<f32>;
pub type PipelineReport64 = PipelineReport<f64>;
pub type PipelineReport32 = PipelineReport<f32>;
