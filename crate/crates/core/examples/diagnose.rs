//! Checks how well edge-proportional probabilities track the weighted
//! window counts, and what the error budget looks like for a target ε.
//!
//! cargo run --release --example diagnose

use tmotif::exact::Algorithm;
use tmotif::sampling::diagnose;
use tmotif::testkit::{random_bursty_temporal_graph, BurstyGraphConfig};
use tmotif::{Estimator, Motif, SamplingConfig};

fn main() -> tmotif::Result<()> {
    let delta = 600;
    let g = random_bursty_temporal_graph(&BurstyGraphConfig {
        nodes: 300,
        edges: 100_000,
        t_range: 2_000 * 8 * delta,
        max_burst: 8,
        burst_span: 300,
        seed: 2,
    });
    for r in [8.0, 64.0, 512.0] {
        let cfg = SamplingConfig {
            c: 64,
            b: 8,
            r,
            seed: 0,
            target_epsilon: Some(0.05),
        };
        let d = diagnose(&Estimator::new(cfg), &g, &Motif::m23(), delta, &Algorithm::Ex23)?;
        let t = d.tradeoff;
        println!(
            "r={r:<5} windows={} rho={:.3} sparsity={:.2} E[sampled]={:.0} sampling term={:.4} shift term={:.4} within b*eps^2: {:?}",
            d.num_intervals,
            d.rho.unwrap_or(f64::NAN),
            d.sparsity.unwrap_or(f64::NAN),
            d.expected_sampled_intervals,
            t.sampling_term,
            t.shift_term,
            t.within_budget,
        );
    }
    Ok(())
}
