//! Temporal graphs: timestamped directed edges kept in (t, seq) order.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};

pub type NodeId = u32;
pub type Timestamp = i64;
/// A difference of two timestamps, in the dataset's native unit.
pub type TimeDelta = i64;

/// A directed edge `src -> dst` at time `t`. `seq` is the ingestion ordinal and
/// breaks ties between equal timestamps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TemporalEdge {
    pub src: NodeId,
    pub dst: NodeId,
    pub t: Timestamp,
    pub seq: u64,
}

impl TemporalEdge {
    pub fn new(src: NodeId, dst: NodeId, t: Timestamp, seq: u64) -> Self {
        Self { src, dst, t, seq }
    }

    /// Position in the total order used by every counter.
    #[inline]
    pub fn order_key(&self) -> (Timestamp, u64) {
        (self.t, self.seq)
    }
}

/// An immutable, time-sorted multiset of temporal edges.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TemporalGraph {
    edges: Vec<TemporalEdge>,
    num_nodes: usize,
    node_labels: Option<Vec<String>>,
}

impl TemporalGraph {
    /// Builds a graph from `(src, dst, t)` triples. `seq` is assigned from the
    /// position in `triples`, so equal timestamps keep their input order.
    pub fn from_triples<I>(triples: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId, Timestamp)>,
    {
        let edges = triples
            .into_iter()
            .enumerate()
            .map(|(i, (src, dst, t))| TemporalEdge::new(src, dst, t, i as u64))
            .collect();
        Self::from_edges(edges)
    }

    /// Builds a graph from edges with caller-provided `seq` values.
    pub fn from_edges(mut edges: Vec<TemporalEdge>) -> Self {
        edges.sort_unstable_by_key(TemporalEdge::order_key);
        let num_nodes = edges.iter().map(|e| e.src.max(e.dst) as usize + 1).max().unwrap_or(0);
        Self {
            edges,
            num_nodes,
            node_labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.node_labels = Some(labels);
        self
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn node_labels(&self) -> Option<&[String]> {
        self.node_labels.as_deref()
    }

    pub fn t_min(&self) -> Option<Timestamp> {
        self.edges.first().map(|e| e.t)
    }

    pub fn t_max(&self) -> Option<Timestamp> {
        self.edges.last().map(|e| e.t)
    }

    /// Shifts every timestamp so the earliest one becomes 0.
    pub fn normalize_timestamps(mut self) -> Self {
        if let Some(t0) = self.t_min() {
            for e in &mut self.edges {
                e.t -= t0;
            }
        }
        self
    }

    pub fn static_projection(&self) -> StaticGraph {
        StaticGraph::from_edges(&self.edges)
    }

    /// Writes the graph as a whitespace edge list, using labels when present.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for e in &self.edges {
            match &self.node_labels {
                Some(labels) => writeln!(out, "{} {} {}", labels[e.src as usize], labels[e.dst as usize], e.t)?,
                None => writeln!(out, "{} {} {}", e.src, e.dst, e.t)?,
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Reads an edge list: one `src dst t` triple per line. Nodes are densely
/// relabeled in order of first appearance; the result is sorted by (t, seq).
/// Empty input yields an empty graph.
pub fn load_temporal_graph<R: BufRead>(source: R) -> Result<TemporalGraph> {
    let mut reader = EdgeListReader::new(source);
    let mut edges = Vec::new();
    for edge in reader.by_ref() {
        edges.push(edge?);
    }
    let labels = reader.into_labels();
    let mut g = TemporalGraph::from_edges(edges);
    g.num_nodes = labels.len();
    Ok(g.with_labels(labels))
}

/// Incremental edge-list parser. Yields edges in file order with `seq` set to
/// the edge's ordinal; does not sort.
pub struct EdgeListReader<R> {
    source: R,
    line_no: usize,
    next_seq: u64,
    ids: HashMap<String, NodeId>,
    labels: Vec<String>,
    buf: String,
}

impl<R: BufRead> EdgeListReader<R> {
    pub fn new(source: R) -> Self {
        Self {
            source,
            line_no: 0,
            next_seq: 0,
            ids: HashMap::new(),
            labels: Vec::new(),
            buf: String::new(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<String> {
        self.labels
    }

    fn intern(&mut self, token: &str) -> NodeId {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.ids.insert(token.to_owned(), id);
        self.labels.push(token.to_owned());
        id
    }

    fn parse_line(&mut self, line: &str) -> Result<Option<TemporalEdge>> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            return Ok(None);
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::Parse {
                line: self.line_no,
                message: format!("expected `src dst t`, found {} fields", tokens.len()),
            });
        }
        let t: Timestamp = tokens[2].parse().map_err(|_| Error::Parse {
            line: self.line_no,
            message: format!("timestamp `{}` is not an integer", tokens[2]),
        })?;
        let src = self.intern(tokens[0]);
        let dst = self.intern(tokens[1]);
        let edge = TemporalEdge::new(src, dst, t, self.next_seq);
        self.next_seq += 1;
        Ok(Some(edge))
    }
}

impl<R: BufRead> Iterator for EdgeListReader<R> {
    type Item = Result<TemporalEdge>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.source.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line_no += 1;
            let line = std::mem::take(&mut self.buf);
            let parsed = self.parse_line(&line);
            self.buf = line;
            match parsed {
                Ok(None) => continue,
                Ok(Some(edge)) => return Some(Ok(edge)),
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StaticEdge {
    pub src: NodeId,
    pub dst: NodeId,
    /// Number of temporal edges `src -> dst`.
    pub multiplicity: u64,
}

/// Distinct directed pairs of a temporal graph, sorted by `(src, dst)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StaticGraph {
    edges: Vec<StaticEdge>,
}

impl StaticGraph {
    pub fn from_edges(edges: &[TemporalEdge]) -> Self {
        let mut pairs: Vec<(NodeId, NodeId)> = edges.iter().map(|e| (e.src, e.dst)).collect();
        pairs.sort_unstable();
        let mut out: Vec<StaticEdge> = Vec::new();
        for (src, dst) in pairs {
            match out.last_mut() {
                Some(last) if last.src == src && last.dst == dst => last.multiplicity += 1,
                _ => out.push(StaticEdge {
                    src,
                    dst,
                    multiplicity: 1,
                }),
            }
        }
        Self { edges: out }
    }

    pub fn edges(&self) -> &[StaticEdge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, src: NodeId, dst: NodeId) -> u64 {
        self.edges
            .binary_search_by_key(&(src, dst), |e| (e.src, e.dst))
            .map(|i| self.edges[i].multiplicity)
            .unwrap_or(0)
    }

    /// Temporal edges between `u` and `v` in either direction.
    pub fn pair_multiplicity(&self, u: NodeId, v: NodeId) -> u64 {
        if u == v {
            self.multiplicity(u, u)
        } else {
            self.multiplicity(u, v) + self.multiplicity(v, u)
        }
    }
}
