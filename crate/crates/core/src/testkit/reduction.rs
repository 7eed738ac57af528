//! k-clique to temporal-star construction.
//!
//! Time is split into `n` blocks of `n + 2` slots. Node `u` owns block `u`:
//! its two backward edges `u -> 0` sit on the block's first and last slot, and
//! for every neighbour `v` of `u` the forward edge `0 -> v` sits on slot
//! `v + 1` of block `u`. The star motif asks for `k` such blocks in which each
//! chosen node receives a forward edge inside every other chosen node's
//! block, which happens exactly when the chosen nodes form a clique.

use crate::error::{Error, Result};
use crate::graph::{NodeId, TemporalGraph, TimeDelta, Timestamp};
use crate::motif::Motif;

/// An undirected simple graph on nodes `1..=n` plus a target clique size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueInstance {
    n: u32,
    edges: Vec<(u32, u32)>,
    k: u32,
}

impl CliqueInstance {
    /// Edges are undirected; duplicates and orientation are normalized away.
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>, k: u32) -> Result<Self> {
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at node {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) outside nodes 1..={n}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        if k < 1 || k > n {
            return Err(Error::InvalidInput(format!("clique size {k} must be in 1..={n}")));
        }
        Ok(Self { n, edges: norm, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.n as usize;
        let mut adj = vec![vec![false; n + 1]; n + 1];
        for &(u, v) in &self.edges {
            adj[u as usize][v as usize] = true;
            adj[v as usize][u as usize] = true;
        }
        adj
    }
}

/// The temporal graph, star motif, and unbounded time span of the reduction.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: TemporalGraph,
    pub motif: Motif,
    pub delta: TimeDelta,
}

pub fn clique_reduction_instance(inst: &CliqueInstance) -> ReductionInstance {
    let n = inst.n as Timestamp;
    let block = n + 2;
    let mut triples: Vec<(NodeId, NodeId, Timestamp)> = Vec::new();
    for &(u, v) in &inst.edges {
        let (u, v) = (u as Timestamp, v as Timestamp);
        triples.push((0, u as NodeId, (v - 1) * block + u + 1));
        triples.push((0, v as NodeId, (u - 1) * block + v + 1));
    }
    for u in 1..=n {
        triples.push((u as NodeId, 0, (u - 1) * block + 1));
        triples.push((u as NodeId, 0, u * block));
    }

    // Leaf slots 1..=k; slot a's block: bookend, forward edges to the other
    // slots in increasing order, bookend.
    let k = inst.k as NodeId;
    let mut star = Vec::new();
    for a in 1..=k {
        star.push((a, 0));
        star.extend((1..=k).filter(|&b| b != a).map(|b| (0, b)));
        star.push((a, 0));
    }

    ReductionInstance {
        graph: TemporalGraph::from_triples(triples),
        motif: Motif::new(star).expect("star touches every slot"),
        delta: TimeDelta::MAX,
    }
}

/// Number of `k`-cliques, by checking every `k`-subset.
pub fn k_clique_count(inst: &CliqueInstance) -> u64 {
    let adj = inst.adjacency();
    let mut chosen = Vec::with_capacity(inst.k as usize);
    let mut count = 0;
    subsets(1, inst.n, inst.k as usize, &adj, &mut chosen, &mut count);
    count
}

pub fn has_k_clique(inst: &CliqueInstance) -> bool {
    k_clique_count(inst) > 0
}

fn subsets(from: u32, n: u32, k: usize, adj: &[Vec<bool>], chosen: &mut Vec<u32>, count: &mut u64) {
    if chosen.len() == k {
        let clique = chosen
            .iter()
            .enumerate()
            .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| adj[a as usize][b as usize]));
        if clique {
            *count += 1;
        }
        return;
    }
    for v in from..=n {
        chosen.push(v);
        subsets(v + 1, n, k, adj, chosen, count);
        chosen.pop();
    }
}
