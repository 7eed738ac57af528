//! Sampling estimate against the exact count on a synthetic message graph.
//!
//! cargo run --release --example estimate

use tmotif::exact::{Algorithm, ExactCounter};
use tmotif::testkit::{random_bursty_temporal_graph, BurstyGraphConfig};
use tmotif::{Estimator, Motif, SamplingConfig};

fn main() -> tmotif::Result<()> {
    let delta = 3600;
    let g = random_bursty_temporal_graph(&BurstyGraphConfig {
        nodes: 5000,
        edges: 500_000,
        t_range: 10_000 * 4 * delta,
        max_burst: 6,
        burst_span: 1800,
        seed: 1,
    });
    let motif = Motif::m23();

    let exact = Algorithm::Ex23.count(g.edges(), &motif, delta)?.total()?;
    println!("exact: {exact}");

    for r in [50.0, 250.0, 1000.0] {
        let cfg = SamplingConfig {
            c: 4,
            b: 4,
            r,
            seed: 0,
            target_epsilon: None,
        };
        let est = Estimator::new(cfg).run(&g, &motif, delta, &Algorithm::Ex23)?;
        println!(
            "r={r:>6}: estimate {:>10.0}  error {:>5.2}%  edges counted {:>5.1}%  windows {}  {:.1} ms",
            est.value,
            100.0 * (est.value - exact as f64).abs() / exact as f64,
            100.0 * est.edge_coverage(),
            est.sampled_interval_count,
            est.wall_time_ms,
        );
    }
    Ok(())
}
