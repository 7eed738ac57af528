//! Exact motif counters. Every counter reports a count–duration histogram,
//! which is what the sampling estimator needs to reweight instances.

mod backtrack;
mod ex23;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TimeDelta};
use crate::motif::Motif;

pub use backtrack::{count_backtracking, find_first_instance};
pub use ex23::{count_ex23, pair_timelines, Direction, DirectionPattern3, PairTimeline, TimelineEvent};

/// `partition_point` that probes 1, 2, 4, … from the front first, so a
/// short true prefix of a long slice costs `O(log prefix)`.
pub(crate) fn gallop<T>(xs: &[T], pred: impl Fn(&T) -> bool) -> usize {
    let mut hi = 1;
    while hi <= xs.len() && pred(&xs[hi - 1]) {
        hi *= 2;
    }
    let lo = hi / 2;
    let hi = hi.min(xs.len() + 1) - 1;
    lo + xs[lo..hi].partition_point(pred)
}

/// Instance counts keyed by instance duration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountDurationHistogram {
    counts: BTreeMap<TimeDelta, u64>,
}

impl CountDurationHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, duration: TimeDelta, count: u64) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        let slot = self.counts.entry(duration).or_insert(0);
        *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn merge(&mut self, other: &Self) -> Result<()> {
        for (&d, &c) in &other.counts {
            self.add(d, c)?;
        }
        Ok(())
    }

    pub fn get(&self, duration: TimeDelta) -> u64 {
        self.counts.get(&duration).copied().unwrap_or(0)
    }

    /// `(duration, count)` pairs in ascending duration order.
    pub fn iter(&self) -> impl Iterator<Item = (TimeDelta, u64)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn max_duration(&self) -> Option<TimeDelta> {
        self.counts.keys().next_back().copied()
    }

    pub fn total(&self) -> Result<u64> {
        total_count(self)
    }
}

impl FromIterator<(TimeDelta, u64)> for CountDurationHistogram {
    /// Panics on overflow; intended for literals in tests and examples.
    fn from_iter<I: IntoIterator<Item = (TimeDelta, u64)>>(iter: I) -> Self {
        let mut h = Self::new();
        for (d, c) in iter {
            h.add(d, c).expect("histogram overflow");
        }
        h
    }
}

impl Serialize for CountDurationHistogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a BTreeMap<TimeDelta, u64>);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (d, c) in self.0 {
                    map.serialize_entry(&d.to_string(), c)?;
                }
                map.end()
            }
        }
        let total = self.total().map_err(serde::ser::Error::custom)?;
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("total", &total)?;
        map.serialize_entry("counts", &Counts(&self.counts))?;
        map.end()
    }
}

pub fn total_count(h: &CountDurationHistogram) -> Result<u64> {
    h.counts
        .values()
        .try_fold(0u64, |acc, &c| acc.checked_add(c))
        .ok_or(Error::Overflow)
}

/// An exact counter usable inside the sampling framework: given a
/// time-sorted edge slice it reports every δ-instance, grouped by duration.
pub trait ExactCounter: Sync {
    fn count(&self, edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> Result<CountDurationHistogram>;
}

impl<C: ExactCounter + ?Sized> ExactCounter for &C {
    fn count(&self, edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> Result<CountDurationHistogram> {
        (**self).count(edges, motif, delta)
    }
}

/// Built-in counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    /// Chronological backtracking; any motif.
    Backtracking,
    /// Per-pair timeline counter; 2-node, 3-edge motifs only.
    Ex23,
    /// `Ex23` when the motif allows it, else `Backtracking`.
    #[default]
    Auto,
}

impl Algorithm {
    /// The concrete algorithm `self` runs for `motif`.
    pub fn resolve(self, motif: &Motif) -> Result<Algorithm> {
        let fits = DirectionPattern3::from_motif(motif).is_some();
        match self {
            Algorithm::Auto if fits => Ok(Algorithm::Ex23),
            Algorithm::Auto => Ok(Algorithm::Backtracking),
            Algorithm::Ex23 if !fits => Err(Error::Motif(format!(
                "ex23 needs a 2-node, 3-edge motif without self-loops, got {motif}"
            ))),
            other => Ok(other),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Backtracking => "bt",
            Algorithm::Ex23 => "ex23",
            Algorithm::Auto => "auto",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bt" | "backtracking" => Ok(Algorithm::Backtracking),
            "ex23" => Ok(Algorithm::Ex23),
            "auto" => Ok(Algorithm::Auto),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

impl ExactCounter for Algorithm {
    fn count(&self, edges: &[TemporalEdge], motif: &Motif, delta: TimeDelta) -> Result<CountDurationHistogram> {
        match self.resolve(motif)? {
            Algorithm::Ex23 => {
                let pattern = DirectionPattern3::from_motif(motif).expect("resolved to ex23");
                count_ex23(edges, pattern, delta)
            }
            _ => count_backtracking(edges, motif, delta),
        }
    }
}
