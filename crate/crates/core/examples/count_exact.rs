//! Exact counting of a 2-node, 3-edge motif with both counters.
//!
//! cargo run --example count_exact [EDGE_LIST] [DELTA]

use std::fs::File;
use std::io::BufReader;

use tmotif::exact::{count_backtracking, count_ex23, DirectionPattern3};
use tmotif::{load_temporal_graph, Motif, TemporalGraph};

const SAMPLE: &str = "\
alice bob 100
bob alice 130
alice bob 170
alice carol 175
carol alice 400
alice carol 410
bob alice 9000
";

fn main() -> tmotif::Result<()> {
    let mut args = std::env::args().skip(1);
    let g: TemporalGraph = match args.next() {
        Some(path) => load_temporal_graph(BufReader::new(File::open(path)?))?,
        None => load_temporal_graph(SAMPLE.as_bytes())?,
    };
    let delta = args
        .next()
        .map_or(Ok(3600), |d| d.parse())
        .expect("delta must be an integer");
    println!(
        "{} nodes, {} temporal edges, delta {delta}",
        g.num_nodes(),
        g.num_edges()
    );

    let m23 = Motif::m23();
    let bt = count_backtracking(g.edges(), &m23, delta)?;
    let pattern = DirectionPattern3::from_motif(&m23).expect("m23 is a 2-node, 3-edge motif");
    let ex = count_ex23(g.edges(), pattern, delta)?;
    assert_eq!(bt, ex);

    println!("motif {m23}: {} instances", ex.total()?);
    for (duration, count) in ex.iter() {
        println!("  duration {duration:>6}: {count}");
    }
    Ok(())
}
