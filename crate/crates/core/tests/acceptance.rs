//! Acceptance suite. Prints one PASS/FAIL line per criterion to stderr and
//! fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmotif::exact::{count_backtracking, count_ex23, find_first_instance, Algorithm, DirectionPattern3, ExactCounter};
use tmotif::sampling::{
    conditional_variance, containment_count, edges_per_interval, exhaustive_expectation, grid_for_shift,
    interval_count_vector, shift_moments, variance_upper_bound, EdgeProportional, InclusionDraws, IntervalStats,
    SamplingPolicy,
};
use tmotif::testkit::{
    brute_force_count, brute_force_instances, clique_reduction_instance, has_k_clique, random_bursty_temporal_graph,
    random_temporal_graph, BruteForce, BurstyGraphConfig, CliqueInstance, DEFAULT_WORK_BUDGET,
};
use tmotif::{Estimator, Motif, SamplingConfig, TemporalGraph, TimeDelta};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn report(line: &str) {
    let mut err = std::io::stderr();
    let _ = err.write_all(line.as_bytes());
    let _ = err.write_all(b"\n");
}

fn median_gap(g: &TemporalGraph) -> TimeDelta {
    let mut gaps: Vec<TimeDelta> = g.edges().windows(2).map(|w| w[1].t - w[0].t).collect();
    if gaps.is_empty() {
        return 1;
    }
    gaps.sort_unstable();
    gaps[gaps.len() / 2]
}

/// Small random graph for the exact checks: 2–8 nodes, 3–40 edges.
fn small_graph(seed: u64) -> (TemporalGraph, i64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(2..=8);
    let m = rng.gen_range(3..=40);
    let t_range = rng.gen_range(5..=60);
    (
        random_temporal_graph(n, m, t_range, seed).normalize_timestamps(),
        t_range,
    )
}

fn oracle_equivalence() -> Outcome {
    const GRAPHS: u64 = 500;
    let mut motifs = vec![
        ("m23", Motif::m23()),
        ("bifan", Motif::bifan()),
        ("triangle", Motif::triangle()),
    ];
    for p in DirectionPattern3::ALL {
        motifs.push(("pattern", p.to_motif()));
    }
    let mut checks = 0usize;
    let mut instances = 0u64;
    for seed in 0..GRAPHS {
        let (g, t_range) = small_graph(seed);
        for delta in [1, median_gap(&g), t_range] {
            for (name, motif) in &motifs {
                let oracle = brute_force_count(g.edges(), motif, delta).expect("oracle within budget");
                let bt = count_backtracking(g.edges(), motif, delta).unwrap();
                if bt != oracle {
                    return outcome(
                        false,
                        format!("bt differs from oracle: seed {seed}, {name}, delta {delta}"),
                    );
                }
                if let Some(p) = DirectionPattern3::from_motif(motif) {
                    let ex = count_ex23(g.edges(), p, delta).unwrap();
                    if ex != oracle {
                        return outcome(
                            false,
                            format!("ex23 differs from oracle: seed {seed}, {name}, delta {delta}"),
                        );
                    }
                }
                instances += oracle.total().unwrap();
                checks += 1;
            }
        }
    }
    outcome(
        true,
        format!("{GRAPHS} graphs, {checks} (graph, delta, motif) cases, {instances} instances, all histograms equal"),
    )
}

/// Graphs, spans and motifs shared by the exact sampling criteria.
fn sampling_corpus() -> Vec<(TemporalGraph, TimeDelta, Motif)> {
    (0..50u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let n = rng.gen_range(2..=4);
            let m = rng.gen_range(10..=30);
            let t_range = rng.gen_range(5..=20);
            let delta = rng.gen_range(2..=8);
            let motif = match seed % 3 {
                0 => Motif::m23(),
                1 => Motif::triangle(),
                _ => DirectionPattern3::ALL[(seed as usize / 3) % 4].to_motif(),
            };
            (
                random_temporal_graph(n, m, t_range, 1000 + seed).normalize_timestamps(),
                delta,
                motif,
            )
        })
        .collect()
}

fn exact_unbiasedness() -> Outcome {
    let corpus = sampling_corpus();
    let mut nonzero = 0;
    for (i, (g, delta, motif)) in corpus.iter().enumerate() {
        let truth = brute_force_count(g.edges(), motif, *delta).unwrap().total().unwrap();
        if truth > 0 {
            nonzero += 1;
        }
        for c in [2, 4] {
            let e = exhaustive_expectation(g, motif, *delta, c, &BruteForce).unwrap();
            if e != BigRational::from_integer(BigInt::from(truth)) {
                return outcome(false, format!("graph {i}, c {c}: expectation {e} vs count {truth}"));
            }
        }
    }
    outcome(
        true,
        format!(
            "{} graphs ({nonzero} with instances) x c in {{2, 4}}: E_s = count exactly",
            corpus.len()
        ),
    )
}

fn containment_probability() -> Outcome {
    let mut checked = 0usize;
    for (i, (g, delta, motif)) in sampling_corpus().iter().enumerate() {
        let insts = brute_force_instances(g.edges(), motif, *delta, DEFAULT_WORK_BUDGET).unwrap();
        for inst in &insts {
            let first = g.edges()[inst.edge_indices[0]].t;
            let last = g.edges()[*inst.edge_indices.last().unwrap()].t;
            let duration = last - first;
            for c in [2i64, 4] {
                let width = c * delta;
                let hits = containment_count(first, last, width).unwrap();
                // hits / width == 1 − Δ/(cδ)  ⇔  hits == cδ − Δ
                if hits as i64 != width - duration {
                    return outcome(
                        false,
                        format!("graph {i}: instance at {first}..{last}, c {c}: {hits} of {width} shifts"),
                    );
                }
                checked += 1;
            }
        }
    }
    outcome(
        true,
        format!("{checked} (instance, c) pairs: contained fraction = 1 - D/(c delta) exactly"),
    )
}

fn variance_bound() -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    for (i, (g, delta, motif)) in sampling_corpus().iter().enumerate() {
        let truth = brute_force_count(g.edges(), motif, *delta).unwrap().total().unwrap();
        for c in [2u64, 4, 8] {
            let moments = shift_moments(g, motif, *delta, c, &BruteForce).unwrap();
            let bound = variance_upper_bound(truth, c);
            if moments.variance > bound {
                return outcome(
                    false,
                    format!("graph {i}, c {c}: variance {} > bound {bound}", moments.variance),
                );
            }
            if truth > 0 {
                let ratio = to_f64(&moments.variance) / to_f64(&bound);
                worst = worst.max(ratio);
            }
            checked += 1;
        }
    }
    outcome(
        true,
        format!("{checked} (graph, c) cases, Var <= C^2/(c-1); largest Var/bound {worst:.3}"),
    )
}

fn to_f64(r: &BigRational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap();
    let d: f64 = r.denom().to_string().parse().unwrap();
    n / d
}

fn conditional_variance_check() -> Outcome {
    const DRAWS: u64 = 100_000;
    let delta = 50;
    let g = random_bursty_temporal_graph(&BurstyGraphConfig {
        nodes: 40,
        edges: 4000,
        t_range: 40 * 4 * delta,
        max_burst: 6,
        burst_span: 40,
        seed: 5,
    })
    .normalize_timestamps();
    let motif = Motif::m23();
    let cfg = SamplingConfig {
        c: 4,
        b: 1,
        r: 8.0,
        seed: 0,
        target_epsilon: None,
    };
    let t_max = g.t_max().unwrap();
    let grid = grid_for_shift(cfg.seed, 0, t_max, cfg.c, delta).unwrap();
    let y = interval_count_vector(&g, &grid, &motif, delta, &Algorithm::Ex23)
        .unwrap()
        .entries;
    let policy = EdgeProportional { r: cfg.r };
    let q: Vec<f64> = edges_per_interval(&g, &grid)
        .into_iter()
        .enumerate()
        .map(|(j, m_j)| {
            policy.probability(&IntervalStats {
                shift_index: 0,
                interval: j,
                edges: m_j,
                total_edges: g.num_edges(),
                motif_edges: motif.num_edges(),
            })
        })
        .collect();
    let closed = conditional_variance(&q, &y).unwrap();

    let z: Vec<f64> = (0..DRAWS)
        .map(|rep| {
            let mut draws = InclusionDraws::new(rep, 0);
            q.iter()
                .zip(&y)
                .map(|(&qj, &yj)| {
                    let u = draws.next_uniform();
                    if qj > 0.0 && u < qj {
                        yj / qj
                    } else {
                        0.0
                    }
                })
                .sum()
        })
        .collect();
    let n = DRAWS as f64;
    let mean = z.iter().sum::<f64>() / n;
    let m2 = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m4 = z.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
    let sample_var = m2 * n / (n - 1.0);
    let se = ((m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n).sqrt();
    let z_score = (sample_var - closed) / se;
    let sampled_fraction = q.iter().filter(|&&v| v < 1.0).count() as f64 / q.len() as f64;
    outcome(
        z_score.abs() <= 3.0,
        format!(
            "{DRAWS} draws over {} windows ({:.0}% with q<1): MC var {sample_var:.1}, closed form {closed:.1}, \
             SE {se:.1}, |z| = {:.2} <= 3",
            q.len(),
            100.0 * sampled_fraction,
            z_score.abs()
        ),
    )
}

fn end_to_end_accuracy() -> Outcome {
    let started = Instant::now();
    let delta = 3600;
    let g = random_bursty_temporal_graph(&BurstyGraphConfig {
        nodes: 2000,
        edges: 100_000,
        t_range: 1000 * delta,
        max_burst: 6,
        burst_span: 1800,
        seed: 7,
    });
    let motif = Motif::m23();
    let exact = Algorithm::Ex23
        .count(g.edges(), &motif, delta)
        .unwrap()
        .total()
        .unwrap() as f64;
    let mut within = 0;
    let mut errors = Vec::new();
    for seed in 0..100 {
        let cfg = SamplingConfig {
            seed,
            ..SamplingConfig::default()
        };
        let est = Estimator::new(cfg).run(&g, &motif, delta, &Algorithm::Ex23).unwrap();
        let rel = (est.value - exact).abs() / exact;
        if rel <= 0.05 {
            within += 1;
        }
        errors.push(rel);
    }
    errors.sort_by(f64::total_cmp);
    let elapsed = started.elapsed();
    outcome(
        within >= 90 && elapsed <= Duration::from_secs(300),
        format!(
            "{} edges, exact {exact}, defaults c=32 b=8 r=32: {within}/100 seeds within 5% (need 90), \
             median error {:.2}%, max {:.2}%, {:.1}s",
            g.num_edges(),
            100.0 * errors[50],
            100.0 * errors[99],
            elapsed.as_secs_f64()
        ),
    )
}

/// Dense clusters at irregular spacing, so different shifts cut them
/// differently and the shared buffer has to hold several grids' windows.
fn clustered_graph(seed: u64, width: i64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::new();
    let mut t = 0;
    for _ in 0..60 {
        t += rng.gen_range(width / 3..2 * width);
        let size = rng.gen_range(10..400);
        for _ in 0..size {
            let u = rng.gen_range(0..12);
            let v = (u + rng.gen_range(1..12)) % 12;
            triples.push((u, v, t + rng.gen_range(0..width / 2)));
        }
    }
    TemporalGraph::from_triples(triples)
}

fn determinism_and_streaming() -> Outcome {
    let delta = 20;
    let motif = Motif::m23();
    let cfg = SamplingConfig {
        c: 4,
        b: 6,
        r: 6.0,
        seed: 42,
        target_epsilon: None,
    };
    let max_threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let g = random_bursty_temporal_graph(&BurstyGraphConfig {
        nodes: 60,
        edges: 20_000,
        t_range: 400 * delta,
        max_burst: 6,
        burst_span: 15,
        seed: 9,
    });

    let runs: Vec<_> = [Some(1), Some(4), Some(max_threads), None]
        .into_iter()
        .map(|t| {
            Estimator::new(cfg)
                .threads(t)
                .run(&g, &motif, delta, &Algorithm::Ex23)
                .unwrap()
        })
        .collect();
    if !runs.iter().all(|r| r.same_result(&runs[0])) {
        return outcome(false, "thread counts disagree".into());
    }
    let base = &runs[0];
    let est = Estimator::new(cfg);
    let (streamed, _) = est
        .run_streaming(
            g.edges().iter().copied().map(Ok),
            g.num_edges(),
            &motif,
            delta,
            &Algorithm::Ex23,
        )
        .unwrap();
    if !streamed.same_result(base) {
        return outcome(
            false,
            format!("streaming {} vs in-memory {}", streamed.value, base.value),
        );
    }

    let width = cfg.c as i64 * delta;
    let mut worst_ratio = 0.0f64;
    for seed in 0..5 {
        let adv = clustered_graph(seed, width).normalize_timestamps();
        let in_mem = est.run(&adv, &motif, delta, &Algorithm::Ex23).unwrap();
        let (streamed, stats) = est
            .run_streaming(
                adv.edges().iter().copied().map(Ok),
                adv.num_edges(),
                &motif,
                delta,
                &Algorithm::Ex23,
            )
            .unwrap();
        if !streamed.same_result(&in_mem) {
            return outcome(
                false,
                format!("clustered input {seed}: streaming differs from in-memory"),
            );
        }
        let t_max = adv.t_max().unwrap();
        let max_window = (0..cfg.b)
            .map(|k| {
                let grid = grid_for_shift(cfg.seed, k, t_max, cfg.c, delta).unwrap();
                edges_per_interval(&adv, &grid).into_iter().max().unwrap_or(0)
            })
            .max()
            .unwrap();
        let limit = 2 * max_window * cfg.b;
        if stats.peak_retained_edges > limit {
            return outcome(
                false,
                format!(
                    "clustered input {seed}: peak {} > 2 x {max_window} x {}",
                    stats.peak_retained_edges, cfg.b
                ),
            );
        }
        worst_ratio = worst_ratio.max(stats.peak_retained_edges as f64 / max_window as f64);
    }
    outcome(
        true,
        format!(
            "threads {{1, 4, {max_threads}, default}} identical; streaming = in-memory on 6 inputs; \
             peak retained <= {worst_ratio:.2} x largest window (limit 2 x b = {})",
            2 * cfg.b
        ),
    )
}

fn time_best_of<T>(runs: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..runs {
        let t = Instant::now();
        let out = f();
        best = best.min(t.elapsed());
        last = Some(out);
    }
    (best, last.unwrap())
}

fn relative_speed() -> Outcome {
    let delta = 3600;
    let (c, b, windows) = (4u64, 4usize, 20_000i64);
    let g = random_bursty_temporal_graph(&BurstyGraphConfig {
        nodes: 20_000,
        edges: 1_000_000,
        t_range: windows * c as i64 * delta,
        max_burst: 6,
        burst_span: 1800,
        seed: 11,
    });
    let motif = Motif::m23();
    // q_j ≈ r/ℓ per window, so b·r/ℓ ≈ 10% of the edges over all shifts.
    let r = 0.10 * windows as f64 / b as f64;
    let cfg = SamplingConfig {
        c,
        b,
        r,
        seed: 0,
        target_epsilon: None,
    };
    let est = Estimator::new(cfg);

    let (t_exact, exact) = time_best_of(3, || Algorithm::Ex23.count(g.edges(), &motif, delta).unwrap());
    let exact = exact.total().unwrap() as f64;
    let (t_est, e) = time_best_of(3, || est.run(&g, &motif, delta, &Algorithm::Ex23).unwrap());
    let speedup = t_exact.as_secs_f64() / t_est.as_secs_f64();
    let rel = (e.value - exact).abs() / exact;
    let coverage = e.edge_coverage();
    let pass = speedup >= 3.0 && rel <= 0.05 && (0.05..=0.15).contains(&coverage);
    outcome(
        pass,
        format!(
            "{} edges: exact {:.1} ms, estimate {:.1} ms, speedup {speedup:.2}x (need 3x), \
             coverage {:.1}% (need 5-15%), error {:.2}% (need <= 5%)",
            g.num_edges(),
            t_exact.as_secs_f64() * 1e3,
            t_est.as_secs_f64() * 1e3,
            100.0 * coverage,
            100.0 * rel
        ),
    )
}

fn reduction_property() -> Outcome {
    let mut cases = 0usize;
    let mut positives = 0usize;
    for n in 1..=6u32 {
        let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            for k in 2..=4u32.min(n) {
                let inst = CliqueInstance::new(n, edges.iter().copied(), k).unwrap();
                let red = clique_reduction_instance(&inst);
                let found = find_first_instance(red.graph.edges(), &red.motif, red.delta)
                    .unwrap()
                    .is_some();
                let clique = has_k_clique(&inst);
                if found != clique {
                    return outcome(
                        false,
                        format!("n {n}, edges {edges:?}, k {k}: instance {found}, clique {clique}"),
                    );
                }
                positives += usize::from(clique);
                cases += 1;
            }
        }
    }
    outcome(
        true,
        format!("{cases} labeled graphs x k on <= 6 nodes ({positives} with a k-clique): instance iff clique"),
    )
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Option<Duration>); 9] = [
        (
            "1 oracle equivalence",
            oracle_equivalence,
            Some(Duration::from_secs(60)),
        ),
        (
            "2 exact unbiasedness",
            exact_unbiasedness,
            Some(Duration::from_secs(60)),
        ),
        ("3 containment probability", containment_probability, None),
        ("4 variance bound", variance_bound, None),
        ("5 conditional variance", conditional_variance_check, None),
        (
            "6 end-to-end accuracy",
            end_to_end_accuracy,
            Some(Duration::from_secs(300)),
        ),
        ("7 determinism and streaming", determinism_and_streaming, None),
        ("8 relative speed", relative_speed, None),
        ("9 reduction property", reduction_property, None),
    ];
    let mut failed = Vec::new();
    for (name, check, limit) in criteria {
        let t = Instant::now();
        let Outcome { mut pass, mut detail } = check();
        let elapsed = t.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                pass = false;
                detail.push_str(&format!(" [over time limit {}s]", limit.as_secs()));
            }
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        report(&format!("[{tag}] {name} ({:.1}s): {detail}", elapsed.as_secs_f64()));
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
