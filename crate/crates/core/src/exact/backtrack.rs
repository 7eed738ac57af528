//! Chronological backtracking: walk the edges in time order and match motif
//! edges one at a time, keeping a partial node bijection.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::CountDurationHistogram;
use crate::error::{Error, Result};
use crate::graph::{NodeId, TemporalEdge, TimeDelta, Timestamp};
use crate::motif::{Motif, MotifInstance};

/// Where candidates for a motif edge come from, given which of its endpoints
/// are already bound by earlier motif edges.
#[derive(Debug, Clone, Copy)]
enum Source {
    All,
    Out(NodeId),
    In(NodeId),
    Pair(NodeId, NodeId),
}

fn plan(motif: &Motif) -> Vec<Source> {
    let mut bound = vec![false; motif.num_nodes()];
    motif
        .edges()
        .iter()
        .map(|&(a, b)| {
            let src = match (bound[a as usize], bound[b as usize]) {
                (true, true) => Source::Pair(a, b),
                (true, false) => Source::Out(a),
                (false, true) => Source::In(b),
                (false, false) => Source::All,
            };
            bound[a as usize] = true;
            bound[b as usize] = true;
            src
        })
        .collect()
}

/// Per-node and per-pair edge positions, built only for what the plan needs.
#[derive(Default)]
struct Index {
    out: HashMap<NodeId, Vec<u32>>,
    inc: HashMap<NodeId, Vec<u32>>,
    pair: HashMap<(NodeId, NodeId), Vec<u32>>,
}

impl Index {
    fn build(edges: &[TemporalEdge], plan: &[Source]) -> Self {
        let need_out = plan.iter().any(|s| matches!(s, Source::Out(_)));
        let need_in = plan.iter().any(|s| matches!(s, Source::In(_)));
        let need_pair = plan.iter().any(|s| matches!(s, Source::Pair(..)));
        let mut idx = Index::default();
        for (pos, e) in edges.iter().enumerate() {
            let pos = pos as u32;
            if need_out {
                idx.out.entry(e.src).or_default().push(pos);
            }
            if need_in {
                idx.inc.entry(e.dst).or_default().push(pos);
            }
            if need_pair {
                idx.pair.entry((e.src, e.dst)).or_default().push(pos);
            }
        }
        idx
    }
}

struct Matcher<'a, F> {
    edges: &'a [TemporalEdge],
    motif: &'a [(NodeId, NodeId)],
    plan: Vec<Source>,
    index: &'a Index,
    delta: TimeDelta,
    // motif node -> data node
    mapping: Vec<Option<NodeId>>,
    chosen: Vec<usize>,
    on_match: F,
}

impl<'a, F> Matcher<'a, F>
where
    F: FnMut(&[usize], TimeDelta) -> Result<ControlFlow<()>>,
{
    /// Binds motif node `m` to data node `d`. Returns `Some(true)` when a new
    /// binding was made, `Some(false)` when it already held, `None` on conflict.
    fn bind(&mut self, m: NodeId, d: NodeId) -> Option<bool> {
        match self.mapping[m as usize] {
            Some(x) if x == d => Some(false),
            Some(_) => None,
            None if self.mapping.contains(&Some(d)) => None,
            None => {
                self.mapping[m as usize] = Some(d);
                Some(true)
            }
        }
    }

    fn try_edge(&mut self, depth: usize, pos: usize, t_first: Timestamp) -> Result<ControlFlow<()>> {
        let (a, b) = self.motif[depth];
        let e = self.edges[pos];
        let Some(new_a) = self.bind(a, e.src) else {
            return Ok(ControlFlow::Continue(()));
        };
        let flow = match self.bind(b, e.dst) {
            None => Ok(ControlFlow::Continue(())),
            Some(new_b) => {
                self.chosen.push(pos);
                let flow = self.extend(depth + 1, pos, t_first);
                self.chosen.pop();
                if new_b {
                    self.mapping[b as usize] = None;
                }
                flow
            }
        };
        if new_a {
            self.mapping[a as usize] = None;
        }
        flow
    }

    fn extend(&mut self, depth: usize, last: usize, t_first: Timestamp) -> Result<ControlFlow<()>> {
        if depth == self.motif.len() {
            let span = self.edges[last].t.checked_sub(t_first).ok_or(Error::Overflow)?;
            return (self.on_match)(&self.chosen, span);
        }
        let deadline = t_first.saturating_add(self.delta);
        let list: Option<&'a [u32]> = match self.plan[depth] {
            Source::All => None,
            Source::Out(a) => Some(self.lookup_out(a)),
            Source::In(b) => Some(self.lookup_in(b)),
            Source::Pair(a, b) => Some(self.lookup_pair(a, b)),
        };
        match list {
            None => {
                for pos in last + 1..self.edges.len() {
                    if self.edges[pos].t > deadline {
                        break;
                    }
                    if self.try_edge(depth, pos, t_first)?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
            Some(list) => {
                let start = list.partition_point(|&p| p as usize <= last);
                for &pos in &list[start..] {
                    let pos = pos as usize;
                    if self.edges[pos].t > deadline {
                        break;
                    }
                    if self.try_edge(depth, pos, t_first)?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn lookup_out(&self, a: NodeId) -> &'a [u32] {
        let d = self.mapping[a as usize].expect("planned as bound");
        self.index.out.get(&d).map_or(&[], Vec::as_slice)
    }

    fn lookup_in(&self, b: NodeId) -> &'a [u32] {
        let d = self.mapping[b as usize].expect("planned as bound");
        self.index.inc.get(&d).map_or(&[], Vec::as_slice)
    }

    fn lookup_pair(&self, a: NodeId, b: NodeId) -> &'a [u32] {
        let key = (
            self.mapping[a as usize].expect("planned as bound"),
            self.mapping[b as usize].expect("planned as bound"),
        );
        self.index.pair.get(&key).map_or(&[], Vec::as_slice)
    }

    fn run(&mut self) -> Result<()> {
        for pos in 0..self.edges.len() {
            let t_first = self.edges[pos].t;
            if self.try_edge(0, pos, t_first)?.is_break() {
                break;
            }
        }
        Ok(())
    }
}

fn search<F>(edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta, on_match: F) -> Result<()>
where
    F: FnMut(&[usize], TimeDelta) -> Result<ControlFlow<()>>,
{
    if delta < 0 {
        return Err(Error::Config(format!("delta must be nonnegative, got {delta}")));
    }
    let plan = plan(motif);
    let index = Index::build(edges, &plan);
    let mut matcher = Matcher {
        edges,
        motif: motif.edges(),
        plan,
        index: &index,
        delta,
        mapping: vec![None; motif.num_nodes()],
        chosen: Vec::with_capacity(motif.num_edges()),
        on_match,
    };
    matcher.run()
}

/// Counts every δ-instance of `motif` in the time-sorted `edges`, keyed by
/// duration.
pub fn count_backtracking(edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> Result<CountDurationHistogram> {
    let mut hist = CountDurationHistogram::new();
    search(edges, motif, delta, |_, span| {
        hist.add(span, 1)?;
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(hist)
}

/// The earliest-starting δ-instance, if any. Positions index into `edges`.
pub fn find_first_instance(edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> Result<Option<MotifInstance>> {
    let mut found = None;
    search(edges, motif, delta, |chosen, _| {
        found = Some(MotifInstance {
            edge_indices: chosen.to_vec(),
        });
        Ok(ControlFlow::Break(()))
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TemporalGraph;

    fn g(triples: &[(NodeId, NodeId, i64)]) -> TemporalGraph {
        TemporalGraph::from_triples(triples.iter().copied())
    }

    #[test]
    fn m23_single_instance() {
        let g = g(&[(0, 1, 1), (1, 0, 2), (0, 1, 3)]);
        let h = count_backtracking(g.edges(), &Motif::m23(), 10).unwrap();
        assert_eq!(h, [(2, 1)].into_iter().collect());
    }

    #[test]
    fn empty_graph() {
        let h = count_backtracking(&[], &Motif::bifan(), 10).unwrap();
        assert!(h.is_empty());
    }

    #[test]
    fn bifan_window() {
        // u=0 v=1 y=2 z=3
        let g = g(&[(0, 2, 1), (0, 3, 2), (1, 2, 3), (1, 3, 4)]);
        let h = count_backtracking(g.edges(), &Motif::bifan(), 3).unwrap();
        assert_eq!(h, [(3, 1)].into_iter().collect());
        assert!(count_backtracking(g.edges(), &Motif::bifan(), 2).unwrap().is_empty());
    }

    #[test]
    fn equal_timestamps_follow_seq_order() {
        // Three simultaneous edges still form one ordered instance.
        let g = g(&[(0, 1, 5), (1, 0, 5), (0, 1, 5)]);
        let h = count_backtracking(g.edges(), &Motif::m23(), 0).unwrap();
        assert_eq!(h, [(0, 1)].into_iter().collect());
    }

    #[test]
    fn self_loop_motif_edge() {
        let loop_then_out = Motif::new(vec![(0, 0), (0, 1)]).unwrap();
        let g = g(&[(3, 3, 1), (3, 4, 2), (4, 4, 3), (3, 5, 4)]);
        let h = count_backtracking(g.edges(), &loop_then_out, 10).unwrap();
        assert_eq!(h.total().unwrap(), 2);
    }

    #[test]
    fn unbounded_delta_does_not_overflow() {
        let g = g(&[(0, 1, 1), (1, 0, i64::MAX - 1), (0, 1, i64::MAX)]);
        let h = count_backtracking(g.edges(), &Motif::m23(), i64::MAX).unwrap();
        assert_eq!(h.total().unwrap(), 1);
    }

    #[test]
    fn first_instance() {
        let g = g(&[(0, 1, 1), (0, 1, 2), (1, 0, 3), (0, 1, 4)]);
        let inst = find_first_instance(g.edges(), &Motif::m23(), 10).unwrap().unwrap();
        assert_eq!(inst.edge_indices, vec![0, 2, 3]);
        assert!(find_first_instance(g.edges(), &Motif::m23(), 1).unwrap().is_none());
    }

    #[test]
    fn negative_delta_rejected() {
        assert!(count_backtracking(&[], &Motif::m23(), -1).is_err());
    }
}
