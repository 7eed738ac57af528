use proptest::prelude::*;

use tmotif::exact::{Algorithm, ExactCounter};
use tmotif::motif::is_delta_instance;
use tmotif::testkit::brute_force_instances;
use tmotif::{load_temporal_graph, Motif, TemporalGraph};

fn to_text(rows: &[(u32, u32, i64)]) -> String {
    rows.iter().map(|(u, v, t)| format!("n{u} n{v} {t}\n")).collect()
}

fn motifs() -> Vec<Motif> {
    vec![Motif::m23(), Motif::bifan(), Motif::triangle()]
}

/// Rows with pairwise distinct timestamps.
fn unique_time_rows() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..6, 0u32..6), 0..30).prop_flat_map(|pairs| {
        let n = pairs.len();
        (
            Just(pairs),
            prop::sample::subsequence((0i64..200).collect::<Vec<_>>(), n),
        )
            .prop_map(|(pairs, ts)| pairs.into_iter().zip(ts).map(|((u, v), t)| (u, v, t)).collect())
            .prop_shuffle()
    })
}

fn rows() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..6, 0u32..6, 0i64..25), 0..30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn permuted_input_gives_same_counts(rows in unique_time_rows(), perm_seed in any::<u64>()) {
        let mut shuffled = rows.clone();
        let mut state = perm_seed;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        let a = load_temporal_graph(to_text(&rows).as_bytes()).unwrap();
        let b = load_temporal_graph(to_text(&shuffled).as_bytes()).unwrap();
        prop_assert_eq!(a.num_edges(), b.num_edges());
        prop_assert_eq!(a.num_nodes(), b.num_nodes());
        // same multiset of labeled edges
        let labeled = |g: &TemporalGraph| {
            let names = g.node_labels().unwrap();
            g.edges().iter().map(|e| (names[e.src as usize].clone(), names[e.dst as usize].clone(), e.t)).collect::<Vec<_>>()
        };
        prop_assert_eq!(labeled(&a), labeled(&b));
        for m in motifs() {
            for delta in [0, 10, 60, 1000] {
                prop_assert_eq!(
                    Algorithm::Auto.count(a.edges(), &m, delta).unwrap(),
                    Algorithm::Auto.count(b.edges(), &m, delta).unwrap()
                );
            }
        }
    }

    #[test]
    fn tie_order_preserving_permutation_gives_same_counts(rows in rows()) {
        // Reverse the rows, then re-sort stably by time: rows with equal
        // timestamps keep their relative order, everything else moves.
        let mut by_time: Vec<(usize, (u32, u32, i64))> = rows.iter().copied().enumerate().collect();
        by_time.sort_by_key(|&(i, (_, _, t))| (std::cmp::Reverse(t), i));
        let permuted: Vec<_> = by_time.into_iter().map(|(_, r)| r).collect();
        let a = load_temporal_graph(to_text(&rows).as_bytes()).unwrap();
        let b = load_temporal_graph(to_text(&permuted).as_bytes()).unwrap();
        for m in motifs() {
            for delta in [0, 3, 25] {
                prop_assert_eq!(
                    Algorithm::Backtracking.count(a.edges(), &m, delta).unwrap(),
                    Algorithm::Backtracking.count(b.edges(), &m, delta).unwrap()
                );
            }
        }
    }

    #[test]
    fn normalization_keeps_durations(rows in rows(), offset in -1_000_000i64..1_000_000) {
        let g = TemporalGraph::from_triples(rows.iter().map(|&(u, v, t)| (u, v, t + offset)));
        let n = g.clone().normalize_timestamps();
        prop_assert_eq!(n.t_min().unwrap_or(0), 0);
        for m in motifs() {
            let a = brute_force_instances(g.edges(), &m, 10, u64::MAX).unwrap();
            let b = brute_force_instances(n.edges(), &m, 10, u64::MAX).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(&x.edge_indices, &y.edge_indices);
                prop_assert_eq!(x.duration(&g), y.duration(&n));
            }
        }
    }

    #[test]
    fn delta_instance_is_monotone(rows in rows(), delta in 0i64..30, extra in 0i64..30) {
        let g = TemporalGraph::from_triples(rows);
        let edges = g.edges();
        for m in motifs() {
            let l = m.num_edges();
            if edges.len() < l {
                continue;
            }
            for start in 0..=edges.len() - l {
                let window = &edges[start..start + l];
                if is_delta_instance(window, &m, delta) {
                    prop_assert!(is_delta_instance(window, &m, delta + extra));
                }
            }
        }
    }
}

#[test]
fn static_projection_counts_pairs() {
    let g = load_temporal_graph("a b 1\na b 2\nb a 3\na c 3\n".as_bytes()).unwrap();
    let s = g.static_projection();
    assert_eq!(s.num_edges(), 3);
    assert_eq!(s.multiplicity(0, 1), 2);
    assert_eq!(s.pair_multiplicity(0, 1), 3);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let err = load_temporal_graph("a b 1\n# comment\na b x\n".as_bytes()).unwrap_err();
    assert!(matches!(err, tmotif::Error::Parse { line: 3, .. }), "{err}");
    let err = load_temporal_graph("a b\n".as_bytes()).unwrap_err();
    assert!(matches!(err, tmotif::Error::Parse { line: 1, .. }), "{err}");
}
