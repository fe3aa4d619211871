//! Benchmark sweeps over graph sizes and QAOA depths, with CSV and
//! gnuplot-style plot-data output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::classical::{brute_force_maxcut_capped, greedy_maxcut, Algorithm, DEFAULT_BRUTE_FORCE_CAP};
use crate::driver::{run_depth_sweep, QaoaConfig, QaoaResult};
use crate::error::{Error, Result};
use crate::graph::generate_random_graph;

pub const CSV_HEADER: &str = "algorithm,n,m,depth,cut,runtime_s,seed,expectation";

/// `(vertices, edges)` per cell, matching the sizes of the reference table.
pub const DEFAULT_SCHEDULE: [(usize, usize); 7] =
    [(4, 5), (6, 9), (8, 12), (10, 15), (12, 20), (14, 25), (16, 30)];

pub const DEFAULT_DEPTHS: [usize; 3] = [1, 2, 3];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    /// 0 for the classical algorithms.
    pub depth: usize,
    pub cut: usize,
    pub runtime_s: f64,
    pub seed: u64,
    /// Only set for QAOA.
    pub expectation: Option<f64>,
}

impl BenchRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{:.9},{},{}",
            self.algorithm,
            self.n,
            self.m,
            self.depth,
            self.cut,
            self.runtime_s,
            self.seed,
            self.expectation.map(|e| format!("{e:.9}")).unwrap_or_default()
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchRow {
    Done(BenchRecord),
    /// A cell that could not run; written with empty cut and runtime and the
    /// token `failed` in the expectation column.
    Failed {
        algorithm: Algorithm,
        n: usize,
        m: usize,
        depth: usize,
        seed: u64,
        reason: String,
    },
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        match self {
            BenchRow::Done(r) => r.csv_line(),
            BenchRow::Failed { algorithm, n, m, depth, seed, .. } => {
                format!("{algorithm},{n},{m},{depth},,,{seed},failed")
            }
        }
    }

    pub fn record(&self) -> Option<&BenchRecord> {
        match self {
            BenchRow::Done(r) => Some(r),
            BenchRow::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub schedule: Vec<(usize, usize)>,
    pub depths: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    /// Base seed; trial `t` of every cell uses `seed + t`.
    pub seed: u64,
    pub trials: usize,
    /// Brute force is skipped above this many vertices.
    pub brute_cap: usize,
    /// QAOA settings; `depth` and `seed` are overridden per row.
    pub qaoa: QaoaConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            schedule: DEFAULT_SCHEDULE.to_vec(),
            depths: DEFAULT_DEPTHS.to_vec(),
            algorithms: vec![Algorithm::BruteForce, Algorithm::Greedy, Algorithm::Qaoa],
            seed: 1,
            trials: 1,
            brute_cap: DEFAULT_BRUTE_FORCE_CAP,
            qaoa: QaoaConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
}

impl BenchOutcome {
    pub fn any_failed(&self) -> bool {
        self.rows.iter().any(|r| matches!(r, BenchRow::Failed { .. }))
    }

    pub fn records(&self) -> impl Iterator<Item = &BenchRecord> {
        self.rows.iter().filter_map(BenchRow::record)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    /// Runtime against vertex count, one block per algorithm (QAOA split by
    /// depth), runtimes averaged over trials.
    pub fn runtime_by_size(&self) -> String {
        let mut series: BTreeMap<String, BTreeMap<usize, Vec<f64>>> = BTreeMap::new();
        for r in self.records() {
            let name = match r.algorithm {
                Algorithm::Qaoa => format!("qaoa_p{}", r.depth),
                a => a.tag().to_string(),
            };
            series.entry(name).or_default().entry(r.n).or_default().push(r.runtime_s);
        }
        render_blocks("n runtime_s", series)
    }

    /// QAOA runtime against depth, one block per graph size.
    pub fn runtime_by_depth(&self) -> String {
        let mut series: BTreeMap<String, BTreeMap<usize, Vec<f64>>> = BTreeMap::new();
        for r in self.records().filter(|r| r.algorithm == Algorithm::Qaoa) {
            series
                .entry(format!("n={:02},m={:02}", r.n, r.m))
                .or_default()
                .entry(r.depth)
                .or_default()
                .push(r.runtime_s);
        }
        render_blocks("p runtime_s", series)
    }
}

// gnuplot data: a comment naming each series, blocks separated by two blank lines
fn render_blocks(columns: &str, series: BTreeMap<String, BTreeMap<usize, Vec<f64>>>) -> String {
    let mut out = String::new();
    for (i, (name, points)) in series.iter().enumerate() {
        if i > 0 {
            out.push_str("\n\n");
        }
        let _ = writeln!(out, "# {name}: {columns}");
        for (x, ys) in points {
            let mean = ys.iter().sum::<f64>() / ys.len() as f64;
            let _ = writeln!(out, "{x} {mean:.9}");
        }
    }
    out
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schedule.is_empty() {
            return Err(Error::invalid("empty size schedule"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.algorithms.contains(&Algorithm::Qaoa) {
            if self.depths.is_empty() {
                return Err(Error::invalid("no QAOA depths given"));
            }
            for &p in &self.depths {
                QaoaConfig { depth: p, ..self.qaoa.clone() }.validate()?;
            }
        }
        for &(n, m) in &self.schedule {
            if n == 0 || m > n * n.saturating_sub(1) / 2 {
                return Err(Error::invalid(format!("({n}, {m}) is not a valid graph size")));
            }
        }
        Ok(())
    }
}

/// Runs every cell in schedule order. Rows per graph: brute force, greedy,
/// then QAOA at each requested depth from one warm-started sweep.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &(n, m) in &cfg.schedule {
        for trial in 0..cfg.trials {
            let seed = cfg.seed.wrapping_add(trial as u64);
            let g = generate_random_graph(n, m, seed)?;
            let failed = |algorithm, depth, e: Error| BenchRow::Failed {
                algorithm,
                n,
                m,
                depth,
                seed,
                reason: e.to_string(),
            };
            let classical = |algorithm, r: crate::classical::SolveResult| {
                BenchRow::Done(BenchRecord {
                    algorithm,
                    n,
                    m,
                    depth: 0,
                    cut: r.assignment.cut_value(),
                    runtime_s: r.elapsed,
                    seed,
                    expectation: None,
                })
            };

            if cfg.algorithms.contains(&Algorithm::BruteForce) && n <= cfg.brute_cap {
                rows.push(match brute_force_maxcut_capped(&g, cfg.brute_cap) {
                    Ok(r) => classical(Algorithm::BruteForce, r),
                    Err(e) => failed(Algorithm::BruteForce, 0, e),
                });
            }
            if cfg.algorithms.contains(&Algorithm::Greedy) {
                rows.push(match greedy_maxcut(&g) {
                    Ok(r) => classical(Algorithm::Greedy, r),
                    Err(e) => failed(Algorithm::Greedy, 0, e),
                });
            }
            if cfg.algorithms.contains(&Algorithm::Qaoa) {
                let qcfg = QaoaConfig { seed, ..cfg.qaoa.clone() };
                match run_depth_sweep::<f64>(&g, &qcfg, &cfg.depths) {
                    Ok(results) => {
                        rows.extend(cfg.depths.iter().zip(results).map(|(&p, r)| qaoa_row(n, m, p, seed, r)))
                    }
                    Err(e) => {
                        rows.extend(cfg.depths.iter().map(|&p| failed(Algorithm::Qaoa, p, e.clone())))
                    }
                }
            }
        }
    }
    Ok(BenchOutcome { rows })
}

fn qaoa_row(n: usize, m: usize, depth: usize, seed: u64, r: QaoaResult<f64>) -> BenchRow {
    BenchRow::Done(BenchRecord {
        algorithm: Algorithm::Qaoa,
        n,
        m,
        depth,
        cut: r.best_cut.cut_value(),
        runtime_s: r.elapsed,
        seed,
        expectation: Some(r.best_expectation),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig {
            schedule: vec![(4, 5), (6, 9)],
            qaoa: QaoaConfig { budget: 40, restarts: 2, ..Default::default() },
            ..Default::default()
        }
    }

    #[test]
    fn csv_shape_and_order() {
        let out = run_bench(&small()).unwrap();
        let csv = out.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 2 * 5);
        assert!(lines[1].starts_with("brute_force,4,5,0,"));
        assert!(lines[2].starts_with("greedy,4,5,0,"));
        assert!(lines[3].starts_with("qaoa,4,5,1,"));
        assert!(lines[5].starts_with("qaoa,4,5,3,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 8));
        assert!(!csv.contains('\r'));
        assert!(!out.any_failed());
    }

    #[test]
    fn failed_cells_are_annotated() {
        let mut cfg = small();
        cfg.qaoa.qubit_cap = 5;
        let out = run_bench(&cfg).unwrap();
        assert!(out.any_failed());
        let csv = out.to_csv();
        assert!(csv.contains("qaoa,6,9,2,,,1,failed\n"));
        assert!(csv.contains("qaoa,4,5,2,"));
    }

    #[test]
    fn trials_and_brute_cap() {
        let mut cfg = small();
        cfg.trials = 2;
        cfg.brute_cap = 4;
        cfg.algorithms = vec![Algorithm::BruteForce, Algorithm::Greedy];
        let out = run_bench(&cfg).unwrap();
        let algos: Vec<_> = out.records().map(|r| (r.algorithm, r.n, r.seed)).collect();
        assert_eq!(
            algos,
            vec![
                (Algorithm::BruteForce, 4, 1),
                (Algorithm::Greedy, 4, 1),
                (Algorithm::BruteForce, 4, 2),
                (Algorithm::Greedy, 4, 2),
                (Algorithm::Greedy, 6, 1),
                (Algorithm::Greedy, 6, 2),
            ]
        );
    }

    #[test]
    fn plot_data_blocks() {
        let out = run_bench(&small()).unwrap();
        let fig4 = out.runtime_by_size();
        assert!(fig4.contains("# brute_force: n runtime_s\n4 "));
        assert!(fig4.contains("# qaoa_p2: n runtime_s\n"));
        let fig5 = out.runtime_by_depth();
        assert!(fig5.contains("# n=04,m=05: p runtime_s\n1 "));
        assert_eq!(fig5.matches('#').count(), 2);
    }

    #[test]
    fn validation() {
        let bad = [
            BenchConfig { schedule: vec![], ..small() },
            BenchConfig { trials: 0, ..small() },
            BenchConfig { depths: vec![], ..small() },
            BenchConfig { depths: vec![0], ..small() },
            BenchConfig { schedule: vec![(3, 4)], ..small() },
        ];
        for cfg in bad {
            assert!(run_bench(&cfg).is_err(), "{cfg:?}");
        }
    }
}
