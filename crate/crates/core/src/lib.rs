//! Exact counting and sampling-based estimation of temporal motifs.
//!
//! A temporal graph is a time-ordered list of directed edges `(u, v, t)`. A
//! motif is an ordered list of edges on `k` nodes; an instance is a
//! time-ordered choice of `l` graph edges matching the motif under a node
//! bijection and spanning at most `δ`.
//!
//! - [`exact`] counts instances exactly, grouped by duration: a general
//!   backtracking matcher and a fast counter for 2-node, 3-edge motifs.
//! - [`sampling`] estimates the count by sampling time windows at random
//!   shifts and reweighting, in parallel or in a single streaming pass.
//! - [`testkit`] has the brute-force oracle and instance generators.
//!
//! ```
//! use tmotif::{exact::Algorithm, graph::load_temporal_graph, motif::Motif};
//!
//! let g = load_temporal_graph("a b 1\nb a 2\na b 3\n".as_bytes()).unwrap();
//! let hist = tmotif::exact::count_backtracking(g.edges(), &Motif::m23(), 10).unwrap();
//! assert_eq!(hist.total().unwrap(), 1);
//! ```

pub mod cli;
pub mod error;
pub mod exact;
pub mod graph;
pub mod motif;
pub mod sampling;
pub mod testkit;

pub use error::{Error, Result};
pub use exact::{Algorithm, CountDurationHistogram, ExactCounter};
pub use graph::{load_temporal_graph, NodeId, TemporalEdge, TemporalGraph, TimeDelta, Timestamp};
pub use motif::{parse_motif, Motif};
pub use sampling::{estimate, Estimate, Estimator, SamplingConfig};
