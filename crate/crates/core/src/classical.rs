//! Classical Max-Cut baselines: exhaustive search, the sequential greedy
//! heuristic, and single-flip hill climbing used for post-processing.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{CutAssignment, Graph};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    BruteForce,
    Greedy,
    Qaoa,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute_force",
            Algorithm::Greedy => "greedy",
            Algorithm::Qaoa => "qaoa",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute_force" | "brute" => Ok(Algorithm::BruteForce),
            "greedy" => Ok(Algorithm::Greedy),
            "qaoa" => Ok(Algorithm::Qaoa),
            other => Err(Error::invalid(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub assignment: CutAssignment,
    /// Wall-clock seconds.
    pub elapsed: f64,
    pub algorithm: Algorithm,
}

pub fn brute_force_maxcut(g: &Graph) -> Result<SolveResult> {
    brute_force_maxcut_capped(g, DEFAULT_BRUTE_FORCE_CAP)
}

/// Exhaustive Max-Cut over all labelings with vertex 0 fixed to `+1`.
///
/// Ties go to the lexicographically smallest label sequence
/// `(z_0, ..., z_{n-1})`, ordering `+1` before `-1`.
pub fn brute_force_maxcut_capped(g: &Graph, cap: usize) -> Result<SolveResult> {
    let n = g.n();
    let cap = cap.min(crate::graph::MAX_PACKED_VERTICES);
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "brute-force vertex count",
            requested: n,
            cap,
        });
    }
    let start = Instant::now();
    let masks = g.neighbor_masks()?;

    // Counter k enumerates vertices 1..n with vertex 1 as its most significant
    // bit, so ascending k is ascending lexicographic order. Reversing k's low
    // n bits gives the basis index (vertex i at bit i, bit 0 always clear).
    let shift = 64 - n as u32;
    let mut best_bits = 0u64;
    let mut best_cut = 0usize;
    for k in 0..(1u64 << (n - 1)) {
        let bits = k.reverse_bits() >> shift;
        let cut = cut_from_masks(&masks, bits);
        if cut > best_cut {
            best_cut = cut;
            best_bits = bits;
        }
    }
    let assignment = CutAssignment::from_bits(g, best_bits);
    debug_assert_eq!(assignment.cut_value(), best_cut);
    Ok(SolveResult {
        assignment,
        elapsed: start.elapsed().as_secs_f64(),
        algorithm: Algorithm::BruteForce,
    })
}

// Each crossing edge is counted once, from its endpoint on the `-1` side.
fn cut_from_masks(masks: &[u64], bits: u64) -> usize {
    let mut cut = 0;
    let mut rest = bits;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        cut += (masks[i] & !bits).count_ones() as usize;
        rest &= rest - 1;
    }
    cut
}

/// Sequential greedy: vertices in index order, vertex 0 on `+1`, each later
/// vertex on the side that cuts more edges to already placed neighbours.
/// Ties go to `+1`.
pub fn greedy_maxcut(g: &Graph) -> Result<SolveResult> {
    let start = Instant::now();
    let adj = g.adjacency();
    let mut labels = vec![0i8; g.n()];
    labels[0] = 1;
    for v in 1..g.n() {
        let (mut plus, mut minus) = (0usize, 0usize);
        for &u in adj[v].iter().filter(|&&u| u < v) {
            if labels[u] > 0 {
                plus += 1;
            } else {
                minus += 1;
            }
        }
        // joining +1 cuts the edges to -1 neighbours and vice versa
        labels[v] = if minus >= plus { 1 } else { -1 };
    }
    let assignment = CutAssignment::new(g, labels)?;
    Ok(SolveResult {
        assignment,
        elapsed: start.elapsed().as_secs_f64(),
        algorithm: Algorithm::Greedy,
    })
}

/// Hill climbing by single label flips, scanning vertices in index order and
/// flipping whenever that strictly increases the cut, until a full pass makes
/// no change.
pub fn single_flip_refine(g: &Graph, start: &CutAssignment) -> Result<CutAssignment> {
    let mut labels = start.labels().to_vec();
    if labels.len() != g.n() {
        return Err(Error::invalid("assignment does not match the graph"));
    }
    let adj = g.adjacency();
    loop {
        let mut improved = false;
        for v in 0..g.n() {
            if flip_gain(&adj, &labels, v) > 0 {
                labels[v] = -labels[v];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    CutAssignment::new(g, labels)
}

/// Change in cut value if vertex `v` switched sides.
pub fn flip_gain(adj: &[Vec<usize>], labels: &[i8], v: usize) -> i64 {
    adj[v]
        .iter()
        .map(|&u| if labels[u] == labels[v] { 1 } else { -1 })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cut_value, generate_random_graph, labels_from_bits};
    use proptest::prelude::*;

    fn exhaustive_best(g: &Graph) -> usize {
        (0..1u64 << g.n())
            .map(|b| cut_value(g, &labels_from_bits(b, g.n())).unwrap())
            .max()
            .unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(brute_force_maxcut(&edge).unwrap().assignment.cut_value(), 1);
        let path = Graph::path(3).unwrap();
        assert_eq!(brute_force_maxcut(&path).unwrap().assignment.cut_value(), 2);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(brute_force_maxcut(&k4).unwrap().assignment.cut_value(), 4);
    }

    #[test]
    fn brute_force_tie_break_is_lexicographic() {
        // K4 optima are the 2+2 splits; with vertex 0 on +1 the smallest
        // label sequence is (+,+,-,-)
        let k4 = Graph::complete(4).unwrap();
        let r = brute_force_maxcut(&k4).unwrap();
        assert_eq!(r.assignment.labels(), &[1, 1, -1, -1]);
        // edgeless: everything on +1
        let e = Graph::edgeless(5).unwrap();
        assert_eq!(brute_force_maxcut(&e).unwrap().assignment.labels(), &[1; 5]);
        let single = Graph::edgeless(1).unwrap();
        assert_eq!(brute_force_maxcut(&single).unwrap().assignment.cut_value(), 0);
    }

    #[test]
    fn brute_force_respects_cap() {
        let g = Graph::edgeless(10).unwrap();
        match brute_force_maxcut_capped(&g, 8) {
            Err(Error::ResourceLimit { cap: 8, requested: 10, .. }) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
        assert!(brute_force_maxcut_capped(&g, 10).is_ok());
    }

    #[test]
    fn greedy_examples() {
        let tri = Graph::complete(3).unwrap();
        let r = greedy_maxcut(&tri).unwrap();
        assert_eq!(r.assignment.labels(), &[1, -1, 1]);
        assert_eq!(r.assignment.cut_value(), 2);

        let c4 = Graph::cycle(4).unwrap();
        let r = greedy_maxcut(&c4).unwrap();
        assert_eq!(r.assignment.labels(), &[1, -1, 1, -1]);
        assert_eq!(r.assignment.cut_value(), 4);

        let e = Graph::edgeless(4).unwrap();
        assert_eq!(greedy_maxcut(&e).unwrap().assignment.cut_value(), 0);
    }

    #[test]
    fn refine_reaches_triangle_optimum_from_every_labeling() {
        let tri = Graph::complete(3).unwrap();
        for b in 0..8 {
            let start = CutAssignment::from_bits(&tri, b);
            assert_eq!(single_flip_refine(&tri, &start).unwrap().cut_value(), 2);
        }
    }

    #[test]
    fn algorithm_tags_roundtrip() {
        for a in [Algorithm::BruteForce, Algorithm::Greedy, Algorithm::Qaoa] {
            assert_eq!(a.tag().parse::<Algorithm>().unwrap(), a);
        }
        assert!("sdp".parse::<Algorithm>().is_err());
    }

    fn arb_small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1usize..=max_n)
            .prop_flat_map(|n| (Just(n), 0..=Graph::max_edges(n), any::<u64>()))
            .prop_map(|(n, m, seed)| generate_random_graph(n, m, seed).unwrap())
    }

    proptest! {
        #[test]
        fn brute_force_is_optimal_and_greedy_bounded(g in arb_small_graph(10)) {
            let best = brute_force_maxcut(&g).unwrap();
            prop_assert_eq!(best.assignment.cut_value(), exhaustive_best(&g));
            prop_assert_eq!(best.assignment.labels()[0], 1);
            let greedy = greedy_maxcut(&g).unwrap();
            prop_assert!(greedy.assignment.cut_value() <= best.assignment.cut_value());
            prop_assert!(greedy.assignment.cut_value() >= g.m().div_ceil(2));
            prop_assert_eq!(greedy_maxcut(&g).unwrap().assignment, greedy.assignment);
            prop_assert_eq!(brute_force_maxcut(&g).unwrap().assignment, best.assignment);
        }

        #[test]
        fn brute_force_picks_first_optimum_in_lex_order(g in arb_small_graph(8)) {
            let best = brute_force_maxcut(&g).unwrap().assignment;
            // scan label sequences in lexicographic order with vertex 0 fixed
            let n = g.n();
            let first = (0..1u64 << (n - 1))
                .map(|k| {
                    let labels: Vec<i8> = (0..n)
                        .map(|i| if i == 0 { 1 } else if (k >> (n - 1 - i)) & 1 == 0 { 1 } else { -1 })
                        .collect();
                    labels
                })
                .find(|l| cut_value(&g, l).unwrap() == best.cut_value())
                .unwrap();
            prop_assert_eq!(best.labels(), &first[..]);
        }

        #[test]
        fn refine_is_monotone_and_locally_optimal(g in arb_small_graph(12), bits in any::<u64>()) {
            let start = CutAssignment::from_bits(&g, bits & ((1u64 << g.n()) - 1));
            let out = single_flip_refine(&g, &start).unwrap();
            prop_assert!(out.cut_value() >= start.cut_value());
            let adj = g.adjacency();
            for v in 0..g.n() {
                prop_assert!(flip_gain(&adj, out.labels(), v) <= 0);
            }
        }
    }
}
