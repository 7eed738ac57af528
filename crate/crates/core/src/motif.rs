//! Motifs (ordered edge patterns) and the instance predicate.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{NodeId, TemporalEdge, TemporalGraph, TimeDelta};

/// A `k`-node, `l`-edge temporal motif given as an ordered edge sequence.
/// Node ids are `0..k`; the sequence order is the required temporal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Motif {
    num_nodes: usize,
    edges: Vec<(NodeId, NodeId)>,
}

impl Motif {
    /// Every node id in `0..k` must appear, where `k` is one past the largest id.
    pub fn new(edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::Motif("a motif needs at least one edge".into()));
        }
        let k = edges.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0);
        let mut seen = vec![false; k];
        for &(u, v) in &edges {
            seen[u as usize] = true;
            seen[v as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Motif(format!("node {missing} has no edge")));
        }
        Ok(Self { num_nodes: k, edges })
    }

    /// The 2-node, 3-edge motif `u->v, v->u, u->v`.
    pub fn m23() -> Self {
        Self::new(vec![(0, 1), (1, 0), (0, 1)]).unwrap()
    }

    /// Two sources each pointing at the same two sinks.
    pub fn bifan() -> Self {
        Self::new(vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    /// Directed 3-cycle `a->b, b->c, c->a`.
    pub fn triangle() -> Self {
        Self::new(vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub fn single_edge() -> Self {
        Self::new(vec![(0, 1)]).unwrap()
    }

    /// `k`
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// `l`
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }
}

impl fmt::Display for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}->{v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a named motif (`m23`, `bifan`, `triangle`, `edge`) or lines of
/// `u v`, whose order defines the edge order. Labels are arbitrary tokens.
pub fn parse_motif(text: &str) -> Result<Motif> {
    match text.trim() {
        "m23" => return Ok(Motif::m23()),
        "bifan" => return Ok(Motif::bifan()),
        "triangle" => return Ok(Motif::triangle()),
        "edge" => return Ok(Motif::single_edge()),
        _ => {}
    }
    let mut ids: HashMap<&str, NodeId> = HashMap::new();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected `u v`, found {} fields", tokens.len()),
            });
        }
        let mut id = |tok| {
            let next = ids.len() as NodeId;
            *ids.entry(tok).or_insert(next)
        };
        let u = id(tokens[0]);
        let v = id(tokens[1]);
        edges.push((u, v));
    }
    Motif::new(edges)
}

/// A motif instance, as indices into a time-sorted edge slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MotifInstance {
    pub edge_indices: Vec<usize>,
}

impl MotifInstance {
    pub fn duration(&self, g: &TemporalGraph) -> TimeDelta {
        duration_of(self.edge_indices.iter().map(|&i| &g.edges()[i]))
    }
}

/// Last minus first timestamp of an ordered edge sequence (0 when empty),
/// saturating at `TimeDelta::MAX`.
pub fn duration_of<'a, I>(edges: I) -> TimeDelta
where
    I: IntoIterator<Item = &'a TemporalEdge>,
{
    let mut it = edges.into_iter();
    let Some(first) = it.next() else { return 0 };
    let last = it.last().unwrap_or(first);
    last.t.saturating_sub(first.t)
}

pub fn duration(inst: &MotifInstance, g: &TemporalGraph) -> TimeDelta {
    inst.duration(g)
}

/// Whether `candidate` (in strictly increasing (t, seq) order) is a
/// δ-instance of `motif`: there is a bijection between motif nodes and the
/// candidate's nodes carrying every motif edge onto the matching candidate
/// edge, and the candidate spans at most `delta`. Wrong lengths yield false.
pub fn is_delta_instance(candidate: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> bool {
    if candidate.len() != motif.num_edges() {
        return false;
    }
    if candidate.windows(2).any(|w| w[0].order_key() >= w[1].order_key()) {
        return false;
    }
    if candidate[candidate.len() - 1].t > candidate[0].t.saturating_add(delta) {
        return false;
    }
    let mut to_data: HashMap<NodeId, NodeId> = HashMap::new();
    let mut to_motif: HashMap<NodeId, NodeId> = HashMap::new();
    let mut bind = |m: NodeId, d: NodeId| -> bool {
        match (to_data.get(&m), to_motif.get(&d)) {
            (Some(&x), Some(&y)) => x == d && y == m,
            (None, None) => {
                to_data.insert(m, d);
                to_motif.insert(d, m);
                true
            }
            _ => false,
        }
    };
    motif
        .edges()
        .iter()
        .zip(candidate)
        .all(|(&(u, v), e)| bind(u, e.src) && bind(v, e.dst))
}
