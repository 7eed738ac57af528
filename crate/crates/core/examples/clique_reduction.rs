//! Builds the temporal star instance for a small graph and checks that it
//! has a match exactly when the graph has a k-clique.

use tmotif::exact::{count_backtracking, find_first_instance};
use tmotif::testkit::{clique_reduction_instance, k_clique_count, CliqueInstance};

fn main() -> tmotif::Result<()> {
    // two triangles sharing node 3, plus a pendant edge
    let edges = [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5), (5, 6)];
    for k in 2..=4 {
        let inst = CliqueInstance::new(6, edges, k)?;
        let red = clique_reduction_instance(&inst);
        let found = find_first_instance(red.graph.edges(), &red.motif, red.delta)?.is_some();
        let total = count_backtracking(red.graph.edges(), &red.motif, red.delta)?.total()?;
        println!(
            "k={k}: {} temporal edges, {}-edge star; {} cliques, instance found: {found} ({total} in all)",
            red.graph.num_edges(),
            red.motif.num_edges(),
            k_clique_count(&inst),
        );
    }
    Ok(())
}
