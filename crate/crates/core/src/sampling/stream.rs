//! Single-pass estimation over a time-ordered edge stream.
//!
//! All `b` grids advance together over one shared buffer. An edge is dropped
//! once every grid has closed the window containing it, so the buffer never
//! holds more than the edges of the current windows of the `b` grids.

use std::collections::VecDeque;
use std::time::Instant;

use serde::Serialize;

use super::{grid_for_shift, weighted_window_sum, Estimate, Estimator, InclusionDraws, IntervalGrid};
use crate::error::{Error, Result};
use crate::exact::ExactCounter;
use crate::graph::{TemporalEdge, TimeDelta, Timestamp};
use crate::motif::Motif;

/// Memory accounting of a streaming run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StreamStats {
    pub edges_seen: usize,
    /// Largest number of edges held in the buffer at once.
    pub peak_retained_edges: usize,
}

struct Cursor {
    shift: i64,
    width: i64,
    /// Current window index.
    window: usize,
    /// Absolute stream position of the current window's first edge.
    start: usize,
    z: f64,
    draws: InclusionDraws,
}

impl Cursor {
    fn index_of(&self, t: Timestamp) -> usize {
        ((t - self.shift) / self.width) as usize
    }
}

struct StreamRun<'a> {
    est: &'a Estimator,
    motif: &'a Motif,
    delta: TimeDelta,
    width: i64,
    total_edges: usize,
    counter: &'a dyn ExactCounter,
    buffer: VecDeque<TemporalEdge>,
    /// Absolute position of `buffer[0]`.
    base: usize,
    sampled_intervals: usize,
    sampled_edges: usize,
}

impl StreamRun<'_> {
    /// Closes window `cursor.window`, made of stream positions `start..end`.
    fn close(&mut self, k: usize, cursor: &mut Cursor, end: usize) -> Result<()> {
        let m_j = end - cursor.start;
        let u = cursor.draws.next_uniform();
        let decision = self
            .est
            .window_decision(k, cursor.window, u, m_j, self.total_edges, self.motif.num_edges())?;
        if let Some(q) = decision {
            let slice = &self.buffer.make_contiguous()[cursor.start - self.base..end - self.base];
            let hist = self.counter.count(slice, self.motif, self.delta)?;
            cursor.z += weighted_window_sum(&hist, q, self.width, self.delta)?;
            self.sampled_intervals += 1;
            self.sampled_edges += m_j;
        }
        Ok(())
    }

    fn advance(&mut self, k: usize, cursor: &mut Cursor, target: usize, now: usize) -> Result<()> {
        while cursor.window < target {
            self.close(k, cursor, now)?;
            cursor.window += 1;
            cursor.start = now;
        }
        Ok(())
    }

    fn release(&mut self, cursors: &[Cursor]) {
        let keep_from = cursors.iter().map(|c| c.start).min().unwrap_or(self.base);
        while self.base < keep_from {
            self.buffer.pop_front();
            self.base += 1;
        }
    }
}

impl Estimator {
    /// Streaming counterpart of [`Estimator::run`]. `edges` must arrive in
    /// strictly increasing (t, seq) order and `total_edges` must equal the
    /// stream length (edge-proportional probabilities need `|T|` up front).
    /// Timestamps are normalized against the first edge. Same seed and
    /// configuration give the same estimate as the in-memory run.
    pub fn run_streaming<I>(
        &self,
        edges: I,
        total_edges: usize,
        motif: &Motif,
        delta: TimeDelta,
        counter: &dyn ExactCounter,
    ) -> Result<(Estimate, StreamStats)>
    where
        I: IntoIterator<Item = Result<TemporalEdge>>,
    {
        let started = Instant::now();
        self.cfg.validate()?;
        let width = self.cfg.width(delta)?;
        let b = self.cfg.b;

        let grids: Vec<IntervalGrid> = (0..b)
            .map(|k| grid_for_shift(self.cfg.seed, k, 0, self.cfg.c, delta))
            .collect::<Result<_>>()?;
        let shifts: Vec<i64> = grids.iter().map(IntervalGrid::shift).collect();
        let mut cursors: Vec<Cursor> = grids
            .iter()
            .enumerate()
            .map(|(k, g)| Cursor {
                shift: g.shift(),
                width,
                window: 0,
                start: 0,
                z: 0.0,
                draws: InclusionDraws::new(self.cfg.seed, k),
            })
            .collect();

        let mut run = StreamRun {
            est: self,
            motif,
            delta,
            width,
            total_edges,
            counter,
            buffer: VecDeque::new(),
            base: 0,
            sampled_intervals: 0,
            sampled_edges: 0,
        };
        let mut stats = StreamStats::default();
        let mut origin: Option<Timestamp> = None;
        let mut prev: Option<TemporalEdge> = None;

        for (pos, edge) in edges.into_iter().enumerate() {
            let mut edge = edge?;
            if let Some(p) = prev {
                if edge.order_key() <= p.order_key() {
                    return Err(Error::StreamOrder {
                        position: pos,
                        t: edge.t,
                        seq: edge.seq,
                        prev_t: p.t,
                        prev_seq: p.seq,
                    });
                }
            }
            prev = Some(edge);
            let t0 = *origin.get_or_insert(edge.t);
            edge.t = edge.t.checked_sub(t0).ok_or(Error::NonFinite("normalized timestamp"))?;

            for (k, cursor) in cursors.iter_mut().enumerate() {
                let target = cursor.index_of(edge.t);
                run.advance(k, cursor, target, pos)?;
            }
            run.release(&cursors);
            run.buffer.push_back(edge);
            stats.edges_seen = pos + 1;
            stats.peak_retained_edges = stats.peak_retained_edges.max(run.buffer.len());
        }

        if stats.edges_seen != total_edges {
            return Err(Error::InvalidInput(format!(
                "stream had {} edges but {} were declared",
                stats.edges_seen, total_edges
            )));
        }

        if let Some(last) = prev {
            let t_max = last.t - origin.expect("set with prev");
            let end = stats.edges_seen;
            for (k, cursor) in cursors.iter_mut().enumerate() {
                let last_window = IntervalGrid::new(t_max, width, cursor.shift)?.num_intervals() - 1;
                run.advance(k, cursor, last_window, end)?;
                run.close(k, cursor, end)?;
            }
        }

        let per_shift = cursors.iter().map(|c| c.z).collect();
        let estimate = self.finish(
            per_shift,
            shifts,
            run.sampled_intervals,
            run.sampled_edges,
            total_edges,
            started,
        );
        Ok((estimate, stats))
    }
}
