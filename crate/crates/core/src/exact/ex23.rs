//! Exact counting of 2-node, 3-edge motifs. Each unordered node pair is an
//! independent problem: gather its edges in time order, fix the first and
//! last motif edge with a double loop, and keep a running count of valid
//! middle edges in between.

use std::collections::HashMap;

use serde::Serialize;

use super::CountDurationHistogram;
use crate::error::{Error, Result};
use crate::graph::{NodeId, TemporalEdge, TimeDelta, Timestamp};
use crate::motif::Motif;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

/// Directions of a 2-node, 3-edge motif relative to its first edge, which is
/// always forward. Either node of a data pair may play the motif's first
/// node; the first temporal edge of an instance decides which.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DirectionPattern3 {
    second: Direction,
    third: Direction,
}

impl DirectionPattern3 {
    pub const ALL: [DirectionPattern3; 4] = [
        Self::new(Direction::Forward, Direction::Forward),
        Self::new(Direction::Forward, Direction::Backward),
        Self::new(Direction::Backward, Direction::Forward),
        Self::new(Direction::Backward, Direction::Backward),
    ];

    pub const fn new(second: Direction, third: Direction) -> Self {
        Self { second, third }
    }

    pub fn directions(&self) -> [Direction; 3] {
        [Direction::Forward, self.second, self.third]
    }

    /// `Some` iff the motif has two nodes, three edges and no self-loops.
    pub fn from_motif(motif: &Motif) -> Option<Self> {
        if motif.num_nodes() != 2 || motif.num_edges() != 3 {
            return None;
        }
        let edges = motif.edges();
        if edges.iter().any(|(u, v)| u == v) {
            return None;
        }
        let first = edges[0];
        let dir = |e: (NodeId, NodeId)| {
            if e == first {
                Direction::Forward
            } else {
                Direction::Backward
            }
        };
        Some(Self::new(dir(edges[1]), dir(edges[2])))
    }

    pub fn to_motif(&self) -> Motif {
        let edges = self
            .directions()
            .iter()
            .map(|d| match d {
                Direction::Forward => (0, 1),
                Direction::Backward => (1, 0),
            })
            .collect();
        Motif::new(edges).expect("two-node motif is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TimelineEvent {
    /// `Forward` means `u -> v` for the owning timeline's `u < v`.
    pub direction: Direction,
    pub t: Timestamp,
    pub seq: u64,
}

/// All temporal edges between two distinct nodes `u < v`, in (t, seq) order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairTimeline {
    pub u: NodeId,
    pub v: NodeId,
    pub events: Vec<TimelineEvent>,
}

fn pair_key(e: &TemporalEdge) -> (NodeId, NodeId) {
    (e.src.min(e.dst), e.src.max(e.dst))
}

/// Edge positions grouped by unordered pair, each group in time order.
/// Self-loops belong to no pair and are dropped.
fn grouped_positions(edges: &[TemporalEdge]) -> Vec<((NodeId, NodeId), u32)> {
    let mut keyed: Vec<((NodeId, NodeId), u32)> = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.src != e.dst)
        .map(|(i, e)| (pair_key(e), i as u32))
        .collect();
    keyed.sort_unstable();
    keyed
}

/// One timeline per unordered pair of distinct nodes with at least one edge,
/// ordered by `(u, v)`.
pub fn pair_timelines(edges: &[TemporalEdge]) -> Vec<PairTimeline> {
    let mut out: Vec<PairTimeline> = Vec::new();
    for ((u, v), pos) in grouped_positions(edges) {
        let e = &edges[pos as usize];
        let event = TimelineEvent {
            direction: if e.src == u {
                Direction::Forward
            } else {
                Direction::Backward
            },
            t: e.t,
            seq: e.seq,
        };
        match out.last_mut() {
            Some(tl) if tl.u == u && tl.v == v => tl.events.push(event),
            _ => out.push(PairTimeline {
                u,
                v,
                events: vec![event],
            }),
        }
    }
    out
}

/// Counts δ-instances of the 2-node, 3-edge motif described by `pattern`.
pub fn count_ex23(
    edges: &[TemporalEdge],
    pattern: DirectionPattern3,
    delta: TimeDelta,
) -> Result<CountDurationHistogram> {
    if delta < 0 {
        return Err(Error::Config(format!("delta must be nonnegative, got {delta}")));
    }
    let grouped = grouped_positions(edges);
    let mut acc: HashMap<TimeDelta, u64> = HashMap::new();
    // (t, forward) for the current pair
    let mut timeline: Vec<(Timestamp, bool)> = Vec::new();
    let mut start = 0;
    while start < grouped.len() {
        let key = grouped[start].0;
        let end = start + super::gallop(&grouped[start..], |(k, _)| *k == key);
        timeline.clear();
        timeline.extend(grouped[start..end].iter().map(|&(_, pos)| {
            let e = &edges[pos as usize];
            (e.t, e.src == key.0)
        }));
        count_timeline(&timeline, pattern, delta, &mut acc)?;
        start = end;
    }
    let mut hist = CountDurationHistogram::new();
    for (d, c) in acc {
        hist.add(d, c)?;
    }
    Ok(hist)
}

fn count_timeline(
    timeline: &[(Timestamp, bool)],
    pattern: DirectionPattern3,
    delta: TimeDelta,
    acc: &mut HashMap<TimeDelta, u64>,
) -> Result<()> {
    if timeline.len() < 3 {
        return Ok(());
    }
    for (i, &(t_i, fwd_i)) in timeline.iter().enumerate() {
        // Orient the pair by this first edge; directions below are relative.
        let mut middles: u64 = 0;
        for &(t_j, fwd_j) in &timeline[i + 1..] {
            if t_j > t_i.saturating_add(delta) {
                break;
            }
            let span = t_j.checked_sub(t_i).ok_or(Error::Overflow)?;
            let rel = if fwd_j == fwd_i {
                Direction::Forward
            } else {
                Direction::Backward
            };
            if rel == pattern.third && middles > 0 {
                let slot = acc.entry(span).or_insert(0);
                *slot = slot.checked_add(middles).ok_or(Error::Overflow)?;
            }
            if rel == pattern.second {
                middles += 1;
            }
        }
    }
    Ok(())
}
