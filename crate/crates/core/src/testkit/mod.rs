//! Ground truth and input generators: a brute-force instance enumerator,
//! seeded random temporal graphs, and the k-clique to temporal-star
//! reduction used as a hard test family.

mod reduction;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{CountDurationHistogram, ExactCounter};
use crate::graph::{NodeId, TemporalEdge, TemporalGraph, TimeDelta, Timestamp};
use crate::motif::{is_delta_instance, Motif, MotifInstance};

pub use reduction::{clique_reduction_instance, has_k_clique, k_clique_count, CliqueInstance, ReductionInstance};

/// Default cap on enumeration steps for the brute-force oracle.
pub const DEFAULT_WORK_BUDGET: u64 = 50_000_000;

/// Enumerates every strictly (t, seq)-increasing `l`-edge sequence whose span
/// is at most `delta` and tests each one with [`is_delta_instance`].
/// No structural pruning: the only cut is the time window.
pub fn brute_force_instances(
    edges: &[TemporalEdge],
    motif: &Motif,
    delta: TimeDelta,
    budget: u64,
) -> Result<Vec<MotifInstance>> {
    let mut found = Vec::new();
    let mut steps = 0u64;
    let mut chosen = Vec::with_capacity(motif.num_edges());
    let mut candidate = Vec::with_capacity(motif.num_edges());
    for first in 0..edges.len() {
        chosen.push(first);
        let deadline = edges[first].t.saturating_add(delta);
        enumerate(
            edges,
            motif,
            delta,
            deadline,
            budget,
            &mut steps,
            &mut chosen,
            &mut candidate,
            &mut found,
        )?;
        chosen.pop();
    }
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    edges: &[TemporalEdge],
    motif: &Motif,
    delta: TimeDelta,
    deadline: Timestamp,
    budget: u64,
    steps: &mut u64,
    chosen: &mut Vec<usize>,
    candidate: &mut Vec<TemporalEdge>,
    found: &mut Vec<MotifInstance>,
) -> Result<()> {
    *steps += 1;
    if *steps > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    if chosen.len() == motif.num_edges() {
        candidate.clear();
        candidate.extend(chosen.iter().map(|&i| edges[i]));
        if is_delta_instance(candidate, motif, delta) {
            found.push(MotifInstance {
                edge_indices: chosen.clone(),
            });
        }
        return Ok(());
    }
    let last = *chosen.last().expect("first edge chosen");
    for next in last + 1..edges.len() {
        if edges[next].t > deadline {
            break;
        }
        chosen.push(next);
        enumerate(edges, motif, delta, deadline, budget, steps, chosen, candidate, found)?;
        chosen.pop();
    }
    Ok(())
}

/// Histogram of all δ-instances found by exhaustive enumeration.
pub fn brute_force_count(edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> Result<CountDurationHistogram> {
    let mut hist = CountDurationHistogram::new();
    for inst in brute_force_instances(edges, motif, delta, DEFAULT_WORK_BUDGET)? {
        let first = edges[inst.edge_indices[0]].t;
        let last = edges[*inst.edge_indices.last().unwrap()].t;
        hist.add(last.checked_sub(first).ok_or(Error::Overflow)?, 1)?;
    }
    Ok(hist)
}

/// The brute-force oracle as an [`ExactCounter`], so it can drive the
/// sampling machinery in tests.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForce;

impl ExactCounter for BruteForce {
    fn count(&self, edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> Result<CountDurationHistogram> {
        brute_force_count(edges, motif, delta)
    }
}

/// `m` edges with endpoints uniform over `0..n` (self-loops allowed) and
/// timestamps uniform over `[0, t_range)`.
pub fn random_temporal_graph(n: u32, m: usize, t_range: Timestamp, seed: u64) -> TemporalGraph {
    assert!(n >= 1, "need at least one node");
    assert!(t_range >= 1, "need a nonempty time range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(NodeId, NodeId, Timestamp)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..t_range)))
        .collect();
    TemporalGraph::from_triples(triples)
}

/// Parameters for [`random_bursty_temporal_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurstyGraphConfig {
    pub nodes: u32,
    pub edges: usize,
    pub t_range: Timestamp,
    /// Each burst has `1..=max_burst` edges.
    pub max_burst: usize,
    /// Edges of a burst fall within `[start, start + burst_span)`.
    pub burst_span: Timestamp,
    pub seed: u64,
}

/// Message-like traffic: repeated short exchanges between random node pairs,
/// with burst start times uniform over `[0, t_range)`. Direction of each
/// edge in a burst is a fair coin.
pub fn random_bursty_temporal_graph(cfg: &BurstyGraphConfig) -> TemporalGraph {
    assert!(cfg.nodes >= 2, "need two distinct nodes");
    assert!(cfg.max_burst >= 1 && cfg.burst_span >= 1 && cfg.t_range >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut triples = Vec::with_capacity(cfg.edges);
    while triples.len() < cfg.edges {
        let u = rng.gen_range(0..cfg.nodes);
        let mut v = rng.gen_range(0..cfg.nodes - 1);
        if v >= u {
            v += 1;
        }
        let start = rng.gen_range(0..cfg.t_range);
        let len = rng.gen_range(1..=cfg.max_burst).min(cfg.edges - triples.len());
        for _ in 0..len {
            let t = start + rng.gen_range(0..cfg.burst_span);
            if rng.gen_bool(0.5) {
                triples.push((u, v, t));
            } else {
                triples.push((v, u, t));
            }
        }
    }
    TemporalGraph::from_triples(triples)
}
