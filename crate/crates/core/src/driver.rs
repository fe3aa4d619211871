//! The variational loop: angle optimization against the simulated
//! expectation, depth sweeps with warm starts, and cut extraction.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{CutAssignment, Graph};
use crate::optimize::NelderMead;
use crate::rng;
use crate::scalar::Scalar;
use crate::sim::{prepare_state, CostDiagonal, QaoaParams, StateVector, DEFAULT_QUBIT_CAP};

/// Stage names used in [`QaoaResult::per_stage_timings`].
pub const STAGE_WARM_START: &str = "warm_start";
pub const STAGE_OPTIMIZE: &str = "optimize";
pub const STAGE_EXTRACT: &str = "extract";

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaConfig {
    pub depth: usize,
    /// Maximum objective evaluations for the optimization at `depth`.
    pub budget: usize,
    /// Number of optimizer starts. The all-zero start is always the first.
    pub restarts: usize,
    /// 0 extracts the cut by exact enumeration, otherwise by sampling.
    pub shots: usize,
    pub seed: u64,
    /// Seed depth p with the depth p-1 optimum padded by a zero layer.
    pub warm_start: bool,
    pub qubit_cap: usize,
}

impl Default for QaoaConfig {
    fn default() -> Self {
        QaoaConfig {
            depth: 1,
            budget: 500,
            restarts: 4,
            shots: 0,
            seed: 0,
            warm_start: true,
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

impl QaoaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth == 0 {
            return Err(Error::invalid("depth must be at least 1"));
        }
        if self.restarts == 0 {
            return Err(Error::invalid("restarts must be at least 1"));
        }
        if self.budget < self.restarts {
            return Err(Error::invalid(format!(
                "budget {} is smaller than restarts {}",
                self.budget, self.restarts
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaResult<T> {
    pub best_params: QaoaParams<T>,
    pub best_expectation: T,
    pub best_cut: CutAssignment,
    /// Objective evaluations spent at the final depth.
    pub n_evaluations: usize,
    /// Evaluations spent on lower depths to produce the warm start.
    pub warmup_evaluations: usize,
    /// Optimization plus extraction at the final depth, in seconds.
    pub elapsed: f64,
    pub per_stage_timings: BTreeMap<String, f64>,
}

/// Reusable objective: one diagonal and the current graph.
pub struct Evaluator<'g> {
    graph: &'g Graph,
    diag: CostDiagonal,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g Graph, qubit_cap: usize) -> Result<Self> {
        Ok(Evaluator {
            graph,
            diag: CostDiagonal::new(graph, qubit_cap)?,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn state<T: Scalar>(&self, params: &QaoaParams<T>) -> Result<StateVector<T>> {
        prepare_state(&self.diag, params)
    }

    pub fn evaluate<T: Scalar>(&self, params: &QaoaParams<T>) -> Result<T> {
        self.state(params)?.expectation(&self.diag)
    }
}

/// Expected cut of the QAOA state for `params`.
pub fn evaluate_params<T: Scalar>(g: &Graph, params: &QaoaParams<T>) -> Result<T> {
    Evaluator::new(g, DEFAULT_QUBIT_CAP)?.evaluate(params)
}

/// Maps angles into `gamma in [0, 2pi)`, `beta in [0, pi)`. The expectation
/// is periodic with these periods because cut values are integers and a
/// shift of pi in beta only changes the global phase.
pub fn wrap_to_box<T: Scalar>(params: &QaoaParams<T>) -> QaoaParams<T> {
    let two_pi = T::PI() + T::PI();
    let wrap = |x: T, period: T| {
        let r = x % period;
        let r = if r < T::zero() { r + period } else { r };
        // r + period can round up to period itself
        if r >= period {
            T::zero()
        } else {
            r
        }
    };
    let gammas = params.gammas().iter().map(|&g| wrap(g, two_pi)).collect();
    let betas = params.betas().iter().map(|&b| wrap(b, T::PI())).collect();
    QaoaParams::new(gammas, betas).expect("wrapping keeps angles finite")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimized<T> {
    pub params: QaoaParams<T>,
    pub value: T,
    pub n_evaluations: usize,
}

/// Multi-start Nelder-Mead at `cfg.depth` without a warm start.
pub fn optimize_params<T: Scalar>(g: &Graph, cfg: &QaoaConfig) -> Result<Optimized<T>> {
    cfg.validate()?;
    let eval = Evaluator::new(g, cfg.qubit_cap)?;
    optimize_with(&eval, cfg, cfg.depth, None)
}

fn optimize_with<T: Scalar>(
    eval: &Evaluator<'_>,
    cfg: &QaoaConfig,
    depth: usize,
    warm: Option<&QaoaParams<T>>,
) -> Result<Optimized<T>> {
    let mut starts: Vec<Vec<T>> = vec![vec![T::zero(); 2 * depth]];
    if let Some(w) = warm {
        if w.depth() != depth {
            return Err(Error::invalid(format!(
                "warm start has depth {}, expected {depth}",
                w.depth()
            )));
        }
        starts.push(w.to_flat());
    }
    // zero and warm starts first; never more starts than evaluations
    let n_starts = cfg.restarts.max(starts.len()).min(cfg.budget.max(1));
    starts.truncate(n_starts);
    let mut rng = rng::seeded(cfg.seed ^ (depth as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    while starts.len() < n_starts {
        let mut x: Vec<T> = (0..depth)
            .map(|_| T::of(rng::unit_f64(&mut rng) * 2.0 * std::f64::consts::PI))
            .collect();
        x.extend((0..depth).map(|_| T::of(rng::unit_f64(&mut rng) * std::f64::consts::PI)));
        starts.push(x);
    }

    // the optimizer sees unbounded coordinates; each point is evaluated at its
    // wrapped image so the reported parameters reproduce the reported value
    let objective = |x: &[T]| -> T {
        let p = QaoaParams::from_flat(x)
            .map(|p| wrap_to_box(&p))
            .and_then(|p| eval.evaluate(&p));
        p.unwrap_or_else(|_| T::nan())
    };

    let nm = NelderMead::<T>::default();
    let mut remaining = cfg.budget.max(1);
    let mut best: Option<(Vec<T>, T)> = None;
    let mut used = 0;
    for (i, x0) in starts.iter().enumerate() {
        let share = remaining / (n_starts - i);
        let r = nm.maximize(objective, x0, share);
        remaining -= r.evaluations;
        used += r.evaluations;
        // strict comparison keeps the lowest start index on ties
        if best.as_ref().map_or(true, |(_, v)| r.value > *v) {
            best = Some((r.x, r.value));
        }
    }
    let (x, value) = best.expect("at least one start");
    Ok(Optimized {
        params: wrap_to_box(&QaoaParams::from_flat(&x)?),
        value,
        n_evaluations: used,
    })
}

/// Optimizes and extracts a cut at `cfg.depth`. With `warm_start` and
/// depth > 1 the lower depths are optimized first to seed the final one.
pub fn run_qaoa<T: Scalar>(g: &Graph, cfg: &QaoaConfig) -> Result<QaoaResult<T>> {
    let mut results = run_depth_sweep(g, cfg, &[cfg.depth])?;
    Ok(results.pop().expect("one depth requested"))
}

/// Runs every depth in `1..=max(depths)` (only `depths` itself when warm
/// starts are off) and returns results for the requested depths, in the
/// order given. With warm starts each depth is seeded by the previous one,
/// so the best expectation is non-decreasing in depth.
pub fn run_depth_sweep<T: Scalar>(
    g: &Graph,
    cfg: &QaoaConfig,
    depths: &[usize],
) -> Result<Vec<QaoaResult<T>>> {
    if depths.is_empty() {
        return Err(Error::invalid("no depths requested"));
    }
    for &p in depths {
        QaoaConfig { depth: p, ..cfg.clone() }.validate()?;
    }
    let eval = Evaluator::new(g, cfg.qubit_cap)?;
    let max_depth = *depths.iter().max().expect("non-empty");
    let schedule: Vec<usize> = if cfg.warm_start {
        (1..=max_depth).collect()
    } else {
        let mut d = depths.to_vec();
        d.sort_unstable();
        d.dedup();
        d
    };

    let mut done: BTreeMap<usize, QaoaResult<T>> = BTreeMap::new();
    let mut prev: Option<QaoaParams<T>> = None;
    let mut chain_evals = 0usize;
    let mut chain_secs = 0.0f64;
    for depth in schedule {
        let warm = if cfg.warm_start {
            prev.as_ref().map(|p| p.padded(depth - p.depth()))
        } else {
            None
        };
        let t0 = Instant::now();
        let opt = optimize_with(&eval, cfg, depth, warm.as_ref())?;
        let t_opt = t0.elapsed().as_secs_f64();
        let t1 = Instant::now();
        let state = eval.state(&opt.params)?;
        let best_cut = extract_cut(g, &state, cfg.shots, cfg.seed)?;
        let t_extract = t1.elapsed().as_secs_f64();

        let mut timings = BTreeMap::new();
        timings.insert(STAGE_WARM_START.to_string(), chain_secs);
        timings.insert(STAGE_OPTIMIZE.to_string(), t_opt);
        timings.insert(STAGE_EXTRACT.to_string(), t_extract);
        let result = QaoaResult {
            best_params: opt.params.clone(),
            best_expectation: opt.value,
            best_cut,
            n_evaluations: opt.n_evaluations,
            warmup_evaluations: chain_evals,
            elapsed: t_opt + t_extract,
            per_stage_timings: timings,
        };
        chain_evals += opt.n_evaluations;
        chain_secs += t_opt;
        prev = Some(opt.params);
        done.insert(depth, result);
    }
    Ok(depths.iter().map(|p| done[p].clone()).collect())
}

/// With `shots == 0`, the best cut among basis states whose probability is
/// at least `2^-(n+1)`; otherwise the best cut among `shots` samples. Ties
/// go to the more probable (then the lower) basis index.
pub fn extract_cut<T: Scalar>(
    g: &Graph,
    state: &StateVector<T>,
    shots: usize,
    seed: u64,
) -> Result<CutAssignment> {
    if state.n_qubits() != g.n() {
        return Err(Error::invalid("state and graph sizes differ"));
    }
    let probs = state.probabilities();
    let candidates: Vec<usize> = if shots == 0 {
        let threshold = T::one() / T::of_usize(1usize << (g.n() + 1));
        (0..probs.len()).filter(|&b| probs[b] >= threshold).collect()
    } else {
        let mut s = state.sample(shots, seed)?;
        s.sort_unstable();
        s.dedup();
        s
    };
    let best = candidates
        .into_iter()
        .map(|b| (g.cut_of_bits(b as u64), b))
        .max_by(|&(ca, a), &(cb, b)| {
            ca.cmp(&cb)
                .then(probs[a].partial_cmp(&probs[b]).unwrap_or(std::cmp::Ordering::Equal))
                .then(b.cmp(&a))
        })
        .map(|(_, b)| b)
        .ok_or_else(|| Error::invalid("no basis state passed the extraction threshold"))?;
    Ok(CutAssignment::from_bits(g, best as u64))
}
