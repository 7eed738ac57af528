//! Importance-sampling estimation of motif counts.
//!
//! Time is cut into disjoint windows of width `c·δ` at a random shift `s`.
//! An instance of duration `Δ` lands wholly inside one window with
//! probability `1 − Δ/(cδ)` over the shift, so weighting it by the inverse
//! makes the weighted window counts `Y_s` sum to the motif count in
//! expectation. Windows are then sampled independently with probability
//! `q_j`, counted exactly, and reweighted by `1/q_j`. The final estimate
//! averages `b` independent shifts.
//!
//! All randomness is a pure function of `(seed, shift index, window index)`,
//! so results do not depend on scheduling or thread count.

mod diagnostics;
mod exhaustive;
mod stream;

use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{CountDurationHistogram, ExactCounter};
use crate::graph::{TemporalEdge, TemporalGraph, TimeDelta, Timestamp};
use crate::motif::Motif;

pub use diagnostics::{
    conditional_variance, correlation_diagnostic, diagnose, sparsity_measure, tradeoff_terms, variance_upper_bound,
    Diagnosis, Summary, TradeoffTerms,
};
pub use exhaustive::{
    containment_count, exhaustive_expectation, interval_count_vector_exact, shift_moments, ShiftMoments,
};
pub use stream::StreamStats;

/// Parameters of the estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingConfig {
    /// Window width multiplier; windows are `c·δ` wide.
    pub c: u64,
    /// Number of independent shifts averaged.
    pub b: usize,
    /// Scale of the edge-proportional sampling probabilities.
    pub r: f64,
    pub seed: u64,
    /// Relative error the caller is aiming for; only used in diagnostics.
    pub target_epsilon: Option<f64>,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            c: 32,
            b: 8,
            r: 32.0,
            seed: 0,
            target_epsilon: None,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.c < 2 {
            return Err(Error::Config(format!("c must be at least 2, got {}", self.c)));
        }
        if self.b < 1 {
            return Err(Error::Config("b must be at least 1".into()));
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::Config(format!("r must be positive, got {}", self.r)));
        }
        if let Some(eps) = self.target_epsilon {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::Config(format!("target epsilon must be positive, got {eps}")));
            }
        }
        Ok(())
    }

    /// Window width `c·δ`.
    pub fn width(&self, delta: TimeDelta) -> Result<i64> {
        if delta < 1 {
            return Err(Error::Config(format!(
                "delta must be at least 1 for sampling, got {delta}"
            )));
        }
        if self.c < 2 {
            return Err(Error::Config(format!("c must be at least 2, got {}", self.c)));
        }
        i64::try_from(self.c)
            .ok()
            .and_then(|c| c.checked_mul(delta))
            .ok_or_else(|| Error::Config(format!("window width {}·{delta} overflows", self.c)))
    }
}

/// `1/p` for an instance of duration `Δ`: `cδ/(cδ − Δ)`.
pub fn instance_weight(duration: TimeDelta, c: u64, delta: TimeDelta) -> Result<Ratio<i64>> {
    let cfg = SamplingConfig {
        c,
        ..SamplingConfig::default()
    };
    let width = cfg.width(delta)?;
    if !(0..=delta).contains(&duration) {
        return Err(Error::Contract(format!("duration {duration} outside [0, {delta}]")));
    }
    Ok(Ratio::new(width, width - duration))
}

/// Disjoint windows `[s + j·w, s + (j+1)·w − 1]`, `j = 0..ℓ`, covering the
/// normalized time range `[0, t_max]`. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntervalGrid {
    shift: i64,
    width: i64,
    num_intervals: usize,
}

impl IntervalGrid {
    /// `shift` must lie in `[−w+1, 0]` and `t_max ≥ 0`.
    pub fn new(t_max: Timestamp, width: i64, shift: i64) -> Result<Self> {
        if width < 1 {
            return Err(Error::Config(format!("window width must be positive, got {width}")));
        }
        if !(-(width - 1)..=0).contains(&shift) {
            return Err(Error::Config(format!("shift {shift} outside [{}, 0]", -(width - 1))));
        }
        if t_max < 0 {
            return Err(Error::Config("timestamps must be normalized".into()));
        }
        let num_intervals = 1 + (t_max / width + i64::from(t_max % width != 0)) as usize;
        Ok(Self {
            shift,
            width,
            num_intervals,
        })
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn width(&self) -> i64 {
        self.width
    }

    /// `ℓ = 1 + ⌈t_max / w⌉`
    pub fn num_intervals(&self) -> usize {
        self.num_intervals
    }

    /// Inclusive bounds of window `j`.
    pub fn interval(&self, j: usize) -> (Timestamp, Timestamp) {
        let start = self.shift + j as i64 * self.width;
        (start, start + self.width - 1)
    }

    /// Window holding normalized time `t ≥ 0`.
    pub fn index_of(&self, t: Timestamp) -> usize {
        ((t - self.shift) / self.width) as usize
    }

    /// Edge positions of each window in a time-sorted, normalized slice.
    pub fn partition(&self, edges: &[TemporalEdge], t_origin: Timestamp) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.num_intervals);
        let mut start = 0;
        for j in 0..self.num_intervals {
            let (_, hi) = self.interval(j);
            let end = start + crate::exact::gallop(&edges[start..], |e| e.t - t_origin <= hi);
            out.push(start..end);
            start = end;
        }
        out
    }
}

/// Draws the shift uniformly from `{−w+1, …, 0}` and builds the grid.
pub fn build_interval_grid<R: Rng + ?Sized>(
    t_max: Timestamp,
    c: u64,
    delta: TimeDelta,
    rng: &mut R,
) -> Result<IntervalGrid> {
    let width = SamplingConfig {
        c,
        ..Default::default()
    }
    .width(delta)?;
    let shift = rng.gen_range(-(width - 1)..=0);
    IntervalGrid::new(t_max, width, shift)
}

fn shift_rng(seed: u64, shift_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 * shift_index as u64);
    rng
}

/// The grid used for shift `shift_index` under `seed`.
pub fn grid_for_shift(
    seed: u64,
    shift_index: usize,
    t_max: Timestamp,
    c: u64,
    delta: TimeDelta,
) -> Result<IntervalGrid> {
    build_interval_grid(t_max, c, delta, &mut shift_rng(seed, shift_index))
}

/// Uniform `[0, 1)` draw deciding whether window `interval` of shift
/// `shift_index` is sampled.
pub fn inclusion_uniform(seed: u64, shift_index: usize, interval: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 * shift_index as u64 + 1);
    rng.set_word_pos(2 * interval as u128);
    rng.gen::<f64>()
}

/// The draws of [`inclusion_uniform`] for windows `0, 1, 2, …` of one shift,
/// produced in order without reseeding.
pub struct InclusionDraws {
    rng: ChaCha8Rng,
}

impl InclusionDraws {
    pub fn new(seed: u64, shift_index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(2 * shift_index as u64 + 1);
        Self { rng }
    }

    /// Draw for the next window.
    pub fn next_uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

/// What a sampling policy may look at when choosing `q_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalStats {
    pub shift_index: usize,
    pub interval: usize,
    /// Temporal edges inside the window.
    pub edges: usize,
    /// Temporal edges in the whole graph.
    pub total_edges: usize,
    /// Edges in the motif.
    pub motif_edges: usize,
}

/// Chooses the inclusion probability of each window.
pub trait SamplingPolicy: Send + Sync {
    fn probability(&self, stats: &IntervalStats) -> f64;
}

/// `q_j = min(1, r·m_j/m)`, and 0 for windows with fewer edges than the motif.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeProportional {
    pub r: f64,
}

impl SamplingPolicy for EdgeProportional {
    fn probability(&self, s: &IntervalStats) -> f64 {
        if s.edges < s.motif_edges || s.edges == 0 {
            return 0.0;
        }
        (self.r * s.edges as f64 / s.total_edges as f64).min(1.0)
    }
}

/// The same `q` for every window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl SamplingPolicy for Constant {
    fn probability(&self, _: &IntervalStats) -> f64 {
        self.0
    }
}

/// Explicit per-window probabilities, shared by every shift. Windows past
/// the end of the vector get 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PerInterval(pub Vec<f64>);

impl SamplingPolicy for PerInterval {
    fn probability(&self, s: &IntervalStats) -> f64 {
        self.0.get(s.interval).copied().unwrap_or(0.0)
    }
}

/// Per-window inclusion probabilities for one grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplingProbabilities {
    pub q: Vec<f64>,
}

/// Edges of a normalized graph per window of `grid`.
pub fn edges_per_interval(g: &TemporalGraph, grid: &IntervalGrid) -> Vec<usize> {
    let origin = g.t_min().unwrap_or(0);
    grid.partition(g.edges(), origin).into_iter().map(|r| r.len()).collect()
}

/// `q_j = min(1, r·m_j/|T|)`; windows with fewer than `motif_edges` edges get 0.
pub fn heuristic_probabilities(
    g: &TemporalGraph,
    grid: &IntervalGrid,
    r: f64,
    motif_edges: usize,
) -> SamplingProbabilities {
    let policy = EdgeProportional { r };
    let q = edges_per_interval(g, grid)
        .into_iter()
        .enumerate()
        .map(|(j, m_j)| {
            policy.probability(&IntervalStats {
                shift_index: 0,
                interval: j,
                edges: m_j,
                total_edges: g.num_edges(),
                motif_edges,
            })
        })
        .collect();
    SamplingProbabilities { q }
}

fn checked_probability(q: f64, stats: &IntervalStats) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Config(format!(
            "sampling probability {q} for window {} is not in [0, 1]",
            stats.interval
        )));
    }
    if q == 0.0 && stats.edges >= stats.motif_edges {
        return Err(Error::Config(format!(
            "window {} has {} edges but sampling probability 0; the estimate would be biased",
            stats.interval, stats.edges
        )));
    }
    Ok(q)
}

/// `Σ_i count_i / ((1 − Δ_i/(cδ))·q)` over a window's histogram, in
/// ascending duration order.
fn weighted_window_sum(hist: &CountDurationHistogram, q: f64, width: i64, delta: TimeDelta) -> Result<f64> {
    let mut sum = 0.0;
    for (d, count) in hist.iter() {
        if d < 0 || d > delta {
            return Err(Error::Contract(format!(
                "counter reported duration {d} with delta {delta}"
            )));
        }
        sum += count as f64 / ((1.0 - d as f64 / width as f64) * q);
    }
    if !sum.is_finite() {
        return Err(Error::NonFinite("window weight"));
    }
    Ok(sum)
}

/// Weighted counts `Y_{s,j}` of every window of a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalCountVector {
    pub entries: Vec<f64>,
}

impl IntervalCountVector {
    pub fn l1(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn l2_squared(&self) -> f64 {
        self.entries.iter().map(|y| y * y).sum()
    }

    /// `Ŷ_j = Y_j / √q_j`; entries with `q_j = 0` must have `Y_j = 0`.
    pub fn scaled(&self, q: &[f64]) -> Result<Vec<f64>> {
        if q.len() != self.entries.len() {
            return Err(Error::InvalidInput("q and Y lengths differ".into()));
        }
        self.entries
            .iter()
            .zip(q)
            .map(|(&y, &qj)| {
                if y == 0.0 {
                    Ok(0.0)
                } else if qj <= 0.0 {
                    Err(Error::InvalidInput("positive Y with q = 0".into()))
                } else {
                    Ok(y / qj.sqrt())
                }
            })
            .collect()
    }
}

/// Runs `counter` on every window of `grid` and weights each instance by
/// `cδ/(cδ − Δ)`.
pub fn interval_count_vector(
    g: &TemporalGraph,
    grid: &IntervalGrid,
    motif: &Motif,
    delta: TimeDelta,
    counter: &dyn ExactCounter,
) -> Result<IntervalCountVector> {
    let origin = g.t_min().unwrap_or(0);
    let entries = grid
        .partition(g.edges(), origin)
        .into_iter()
        .map(|range| {
            let hist = counter.count(&g.edges()[range], motif, delta)?;
            weighted_window_sum(&hist, 1.0, grid.width(), delta)
        })
        .collect::<Result<_>>()?;
    Ok(IntervalCountVector { entries })
}

/// Result of a sampling run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    /// Mean of `per_shift`.
    pub value: f64,
    pub per_shift: Vec<f64>,
    pub shifts: Vec<i64>,
    /// Windows handed to the exact counter, over all shifts.
    pub sampled_interval_count: usize,
    /// Edges handed to the exact counter divided by `b·|T|`.
    pub sampled_edge_fraction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    pub config: SamplingConfig,
    pub wall_time_ms: f64,
}

impl Estimate {
    /// Edges handed to the exact counter divided by `|T|`, summed over shifts.
    pub fn edge_coverage(&self) -> f64 {
        self.sampled_edge_fraction * self.config.b as f64
    }

    /// Equality ignoring wall time.
    pub fn same_result(&self, other: &Estimate) -> bool {
        Estimate {
            wall_time_ms: 0.0,
            ..self.clone()
        } == Estimate {
            wall_time_ms: 0.0,
            ..other.clone()
        }
    }
}

/// Runs the sampling estimator in memory or over a stream.
pub struct Estimator {
    cfg: SamplingConfig,
    policy: Box<dyn SamplingPolicy>,
    threads: Option<usize>,
}

impl Estimator {
    /// Uses [`EdgeProportional`] probabilities with `cfg.r`.
    pub fn new(cfg: SamplingConfig) -> Self {
        Self {
            cfg,
            policy: Box::new(EdgeProportional { r: cfg.r }),
            threads: None,
        }
    }

    pub fn with_policy(mut self, policy: impl SamplingPolicy + 'static) -> Self {
        self.policy = Box::new(policy);
        self
    }

    /// Worker threads for window counting; `None` uses rayon's default.
    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub fn config(&self) -> &SamplingConfig {
        &self.cfg
    }

    /// `u` is window `j`'s inclusion draw.
    fn window_decision(&self, k: usize, j: usize, u: f64, m_j: usize, total: usize, l: usize) -> Result<Option<f64>> {
        let stats = IntervalStats {
            shift_index: k,
            interval: j,
            edges: m_j,
            total_edges: total,
            motif_edges: l,
        };
        let q = checked_probability(self.policy.probability(&stats), &stats)?;
        let included = q > 0.0 && u < q;
        Ok(included.then_some(q))
    }

    pub fn run(
        &self,
        g: &TemporalGraph,
        motif: &Motif,
        delta: TimeDelta,
        counter: &dyn ExactCounter,
    ) -> Result<Estimate> {
        let started = Instant::now();
        self.cfg.validate()?;
        let width = self.cfg.width(delta)?;
        let b = self.cfg.b;
        let m = g.num_edges();
        let origin = g.t_min().unwrap_or(0);
        let t_max = g.t_max().map_or(0, |t| t - origin);
        let edges = g.edges();

        struct Task {
            shift_index: usize,
            range: std::ops::Range<usize>,
            q: f64,
        }
        let mut shifts = Vec::with_capacity(b);
        let mut tasks = Vec::new();
        for k in 0..b {
            let grid = grid_for_shift(self.cfg.seed, k, t_max, self.cfg.c, delta)?;
            shifts.push(grid.shift());
            if m == 0 {
                continue;
            }
            let mut draws = InclusionDraws::new(self.cfg.seed, k);
            for (j, range) in grid.partition(edges, origin).into_iter().enumerate() {
                let u = draws.next_uniform();
                if let Some(q) = self.window_decision(k, j, u, range.len(), m, motif.num_edges())? {
                    tasks.push(Task {
                        shift_index: k,
                        range,
                        q,
                    });
                }
            }
        }

        let work = |t: &Task| -> Result<f64> {
            let hist = counter.count(&edges[t.range.clone()], motif, delta)?;
            weighted_window_sum(&hist, t.q, width, delta)
        };
        let sums: Vec<f64> = match self.threads {
            Some(1) => tasks.iter().map(work).collect::<Result<_>>()?,
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?
                .install(|| tasks.par_iter().map(work).collect::<Result<_>>())?,
            None => tasks.par_iter().map(work).collect::<Result<_>>()?,
        };

        // Fixed (k, j) reduction order.
        let mut per_shift = vec![0.0; b];
        let mut sampled_edges = 0usize;
        for (task, sum) in tasks.iter().zip(&sums) {
            per_shift[task.shift_index] += sum;
            sampled_edges += task.range.len();
        }
        Ok(self.finish(per_shift, shifts, tasks.len(), sampled_edges, m, started))
    }

    fn finish(
        &self,
        per_shift: Vec<f64>,
        shifts: Vec<i64>,
        sampled_interval_count: usize,
        sampled_edges: usize,
        total_edges: usize,
        started: Instant,
    ) -> Estimate {
        let b = self.cfg.b;
        let value = per_shift.iter().sum::<f64>() / b as f64;
        let sampled_edge_fraction = if total_edges == 0 {
            0.0
        } else {
            sampled_edges as f64 / (b as f64 * total_edges as f64)
        };
        Estimate {
            value,
            per_shift,
            shifts,
            sampled_interval_count,
            sampled_edge_fraction,
            rho: None,
            config: self.cfg,
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Estimates the number of δ-instances of `motif` with edge-proportional
/// sampling probabilities.
pub fn estimate(
    g: &TemporalGraph,
    motif: &Motif,
    delta: TimeDelta,
    cfg: &SamplingConfig,
    counter: &dyn ExactCounter,
) -> Result<Estimate> {
    Estimator::new(*cfg).run(g, motif, delta, counter)
}
