//! Averages the window-weighted count over every shift in exact rational
//! arithmetic: the result is the motif count, and the spread over shifts
//! stays below C²/(c − 1).

use tmotif::exact::{Algorithm, ExactCounter};
use tmotif::sampling::{shift_moments, variance_upper_bound};
use tmotif::testkit::random_temporal_graph;
use tmotif::Motif;

fn main() -> tmotif::Result<()> {
    let g = random_temporal_graph(2, 40, 60, 21).normalize_timestamps();
    let motif = Motif::m23();
    let delta = 6;
    let count = Algorithm::Ex23.count(g.edges(), &motif, delta)?.total()?;
    println!("count: {count}");
    for c in [2, 4, 8] {
        let m = shift_moments(&g, &motif, delta, c, &Algorithm::Ex23)?;
        println!(
            "c={c}: mean over {} shifts = {}, variance = {} (bound {})",
            c as i64 * delta,
            m.mean,
            m.variance,
            variance_upper_bound(count, c)
        );
    }
    Ok(())
}
