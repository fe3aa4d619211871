use qmaxcut::sim::prepare_state;
use qmaxcut::{
    brute_force_maxcut, extract_cut, generate_random_graph, run_depth_sweep, run_qaoa,
    CostDiagonal, Graph, QaoaConfig, QaoaResult64,
};

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

#[test]
fn brute_force_runtime_grows_exponentially() {
    for n in [12usize, 14] {
        let small = generate_random_graph(n, 2 * n, 1).unwrap();
        let big = generate_random_graph(n + 4, 2 * (n + 4), 1).unwrap();
        let t = |g: &Graph| median((0..9).map(|_| brute_force_maxcut(g).unwrap().elapsed).collect());
        let ratio = t(&big) / t(&small);
        assert!(ratio > 4.0, "n={n}: ratio {ratio}");
    }
}

#[test]
fn qaoa_time_grows_with_depth() {
    let g = generate_random_graph(12, 20, 3).unwrap();
    // a generous fixed budget that no depth exhausts early would make this
    // noisy; compare per-evaluation cost instead of raw totals as well
    let cfg = QaoaConfig { budget: 200, restarts: 2, seed: 3, ..Default::default() };
    let rs: Vec<QaoaResult64> = run_depth_sweep(&g, &cfg, &[1, 3]).unwrap();
    let per_eval = |r: &QaoaResult64| r.elapsed / r.n_evaluations as f64;
    assert!(rs[1].elapsed >= 1.5 * rs[0].elapsed, "{} vs {}", rs[1].elapsed, rs[0].elapsed);
    assert!(per_eval(&rs[1]) >= 1.5 * per_eval(&rs[0]));
}

#[test]
fn exact_extraction_finds_optimum_when_it_has_mass() {
    for seed in 0..12u64 {
        let n = 4 + (seed as usize % 7);
        let g = generate_random_graph(n, n + seed as usize % 5, seed).unwrap();
        let cfg = QaoaConfig { depth: 2, budget: 200, seed, ..Default::default() };
        let r: QaoaResult64 = run_qaoa(&g, &cfg).unwrap();
        let opt = brute_force_maxcut(&g).unwrap().assignment.cut_value();
        assert!(r.best_cut.cut_value() <= opt);

        let diag = CostDiagonal::new(&g, 24).unwrap();
        let probs = prepare_state(&diag, &r.best_params).unwrap().probabilities();
        let threshold = 1.0 / (1u64 << (n + 1)) as f64;
        let support_best = probs
            .iter()
            .zip(diag.values())
            .filter(|(p, _)| **p >= threshold)
            .map(|(_, &c)| c as usize)
            .max()
            .unwrap();
        assert_eq!(r.best_cut.cut_value(), support_best);
        let optimum_has_mass = probs
            .iter()
            .zip(diag.values())
            .any(|(p, &c)| *p >= threshold && c as usize == opt);
        if optimum_has_mass {
            assert_eq!(r.best_cut.cut_value(), opt);
        }
    }
}

#[test]
fn sampled_extraction_returns_a_sampled_state() {
    let g = generate_random_graph(8, 12, 9).unwrap();
    let cfg = QaoaConfig { depth: 1, budget: 100, shots: 32, seed: 9, ..Default::default() };
    let r: QaoaResult64 = run_qaoa(&g, &cfg).unwrap();
    let diag = CostDiagonal::new(&g, 24).unwrap();
    let state = prepare_state(&diag, &r.best_params).unwrap();
    let samples = state.sample(32, 9).unwrap();
    let best = samples.iter().map(|&b| diag.values()[b] as usize).max().unwrap();
    assert_eq!(r.best_cut.cut_value(), best);
    assert!(state.probabilities()[r.best_cut.bits() as usize] > 0.0);
    let again = extract_cut(&g, &state, 32, 9).unwrap();
    assert_eq!(again, r.best_cut);
}

#[test]
fn budget_is_never_exceeded() {
    for (budget, restarts) in [(1, 1), (2, 1), (5, 5), (7, 3), (64, 4)] {
        let g = generate_random_graph(6, 9, budget as u64).unwrap();
        for depth in 1..=3 {
            let cfg = QaoaConfig { depth, budget, restarts, ..Default::default() };
            let r: QaoaResult64 = run_qaoa(&g, &cfg).unwrap();
            assert!(r.n_evaluations <= budget, "budget {budget}, used {}", r.n_evaluations);
            assert!(r.best_expectation >= g.m() as f64 / 2.0 - 1e-9);
        }
    }
}
