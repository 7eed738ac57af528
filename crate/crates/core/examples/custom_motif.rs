//! Counting an arbitrary motif read from text, and finding one witness.
//!
//! cargo run --example custom_motif

use tmotif::exact::{count_backtracking, find_first_instance};
use tmotif::parse_motif;
use tmotif::testkit::random_temporal_graph;

fn main() -> tmotif::Result<()> {
    // a -> b, then b -> c, then a -> c: a feed-forward loop in time order
    let motif = parse_motif("a b\nb c\na c\n")?;
    let g = random_temporal_graph(12, 2000, 10_000, 7);
    let delta = 300;

    let hist = count_backtracking(g.edges(), &motif, delta)?;
    println!(
        "{motif} within {delta}: {} instances over {} durations",
        hist.total()?,
        hist.len()
    );

    if let Some(inst) = find_first_instance(g.edges(), &motif, delta)? {
        println!("first instance (duration {}):", inst.duration(&g));
        for &i in &inst.edge_indices {
            let e = g.edges()[i];
            println!("  {} -> {} at t={}", e.src, e.dst, e.t);
        }
    }
    Ok(())
}
