//! One pass over an edge-list file, holding only the current windows.
//!
//! cargo run --release --example streaming [EDGE_LIST]

use std::fs::File;
use std::io::{BufReader, BufWriter};

use tmotif::exact::Algorithm;
use tmotif::graph::EdgeListReader;
use tmotif::testkit::{random_bursty_temporal_graph, BurstyGraphConfig};
use tmotif::{Estimator, Motif, SamplingConfig};

fn main() -> tmotif::Result<()> {
    let path = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let p = std::env::temp_dir().join("tmotif-streaming-example.txt");
            let g = random_bursty_temporal_graph(&BurstyGraphConfig {
                nodes: 1000,
                edges: 200_000,
                t_range: 50_000_000,
                max_burst: 6,
                burst_span: 600,
                seed: 4,
            });
            g.write_edge_list(BufWriter::new(File::create(&p)?))?;
            p
        }
    };

    // Edge-proportional probabilities need |T| before the pass.
    let total = EdgeListReader::new(BufReader::new(File::open(&path)?)).count();
    let cfg = SamplingConfig {
        c: 8,
        b: 4,
        r: 40.0,
        seed: 3,
        target_epsilon: None,
    };
    let reader = EdgeListReader::new(BufReader::new(File::open(&path)?));
    let (est, stats) = Estimator::new(cfg).run_streaming(reader, total, &Motif::m23(), 3600, &Algorithm::Ex23)?;

    println!("{}: {} edges", path.display(), stats.edges_seen);
    println!(
        "estimate {:.0} from {} sampled windows",
        est.value, est.sampled_interval_count
    );
    println!("peak buffered edges: {}", stats.peak_retained_edges);
    Ok(())
}
