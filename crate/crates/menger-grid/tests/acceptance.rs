//! One test per shipping criterion; each prints a single PASS line so a
//! full run reads as a checklist. Budgets are asserted where a criterion
//! carries one.

use std::collections::HashSet;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use menger_grid::embed::{embed_grid, embedding_to_geometry, validate_embedding};
use menger_grid::grid::{from_edge_list, make_chain, make_lattice2d, make_ring, NeuronGrid};
use menger_grid::metrics::{folding_demo, quantization_error, topographic_error};
use menger_grid::peano::peano_cell;
use menger_grid::sponge::{enumerate_cells, is_sponge_member, SpongeCell};
use menger_grid::train::lbg_vq;
use menger_grid::Dataset;

fn pass(n: u32, what: &str) {
    println!("criterion {n}: PASS ({what})");
}

#[test]
fn criterion_01_sponge_counts() {
    let t = Instant::now();
    for (k, want) in [(0u32, 1u64), (1, 20), (2, 400), (3, 8000)] {
        assert_eq!(enumerate_cells(k).unwrap().len() as u64, want, "level {k}");
    }
    assert!(t.elapsed().as_secs() < 1, "took {:?}", t.elapsed());
    pass(1, "cell counts are 20^k for k = 0..3");
}

#[test]
fn criterion_02_membership_matches_cell_containment() {
    let t = Instant::now();
    let kept: HashSet<[u32; 3]> = enumerate_cells(3)
        .unwrap()
        .iter()
        .map(|c| c.coords())
        .collect();
    // Oracle: the closed level-3 approximation is the union of closed
    // kept cubes, so a grid point i/27 lies inside exactly when one of
    // the up-to-eight cells touching it is kept.
    let candidates = |i: u32| -> Vec<u32> {
        let mut c = Vec::new();
        if i > 0 {
            c.push(i - 1);
        }
        if i < 27 {
            c.push(i);
        }
        c
    };
    for i in 0..=27u32 {
        for j in 0..=27u32 {
            for l in 0..=27u32 {
                let mut oracle = false;
                for &cx in &candidates(i) {
                    for &cy in &candidates(j) {
                        for &cz in &candidates(l) {
                            oracle |= kept.contains(&[cx, cy, cz]);
                        }
                    }
                }
                let p = [
                    f64::from(i) / 27.0,
                    f64::from(j) / 27.0,
                    f64::from(l) / 27.0,
                ];
                assert_eq!(
                    is_sponge_member(p, 3).unwrap(),
                    oracle,
                    "disagreement at ({i}/27, {j}/27, {l}/27)"
                );
            }
        }
    }
    assert!(t.elapsed().as_secs() < 10, "took {:?}", t.elapsed());
    pass(2, "membership agrees with the kept-cube oracle on the 28^3 grid");
}

#[test]
fn criterion_03_self_similarity() {
    let level1: Vec<SpongeCell> = enumerate_cells(1).unwrap();
    let level2: Vec<SpongeCell> = enumerate_cells(2).unwrap();
    let level1_set: HashSet<[u32; 3]> = level1.iter().map(|c| c.coords()).collect();
    for cell in &level2 {
        let parent = cell.parent().unwrap();
        assert!(
            level1_set.contains(&parent.coords()),
            "prefix of {:?} is not kept",
            cell.coords()
        );
    }
    let level2_set: HashSet<[u32; 3]> = level2.iter().map(|c| c.coords()).collect();
    for cell in &level1 {
        let children = cell.children().unwrap();
        assert_eq!(children.len(), 20);
        for child in &children {
            assert!(level2_set.contains(&child.coords()));
        }
    }
    pass(3, "every level-2 prefix is kept and every level-1 cell has 20 children");
}

#[test]
fn criterion_04_peano_coverage() {
    for p in 1..=3u32 {
        let side = 3u32.pow(p);
        let total = u64::from(side) * u64::from(side);
        let mut seen = HashSet::new();
        let mut prev: Option<[u32; 2]> = None;
        for index in 0..total {
            let cell = peano_cell(index, p).unwrap();
            assert!(cell[0] < side && cell[1] < side);
            assert!(seen.insert(cell), "order {p} revisits {cell:?}");
            if let Some(q) = prev {
                let linf = cell[0].abs_diff(q[0]).max(cell[1].abs_diff(q[1]));
                assert_eq!(linf, 1, "order {p} jump from {q:?} to {cell:?}");
            }
            prev = Some(cell);
        }
        assert_eq!(seen.len() as u64, total, "order {p} misses subsquares");
    }
    pass(4, "orders 1..3 visit each subsquare once with unit steps");
}

#[test]
fn criterion_05_lbg_monotone_and_single_codeword_mean() {
    let t = Instant::now();
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=200);
        let dim = rng.gen_range(1..=5);
        let samples: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect())
            .collect();
        let data = Dataset::new(samples.clone()).unwrap();

        let m = rng.gen_range(1..=8.min(n));
        let result = lbg_vq(&data, m, 60, 0.0, seed).unwrap();
        for w in result.trace.windows(2) {
            assert!(w[1] <= w[0], "seed {seed}: trace rose from {} to {}", w[0], w[1]);
        }

        let single = lbg_vq(&data, 1, 60, 0.0, seed).unwrap();
        for d in 0..dim {
            let mean = samples.iter().map(|s| s[d]).sum::<f64>() / n as f64;
            assert!(
                (single.codebook[0][d] - mean).abs() < 1e-12,
                "seed {seed}: codeword missed the mean"
            );
        }
    }
    assert!(t.elapsed().as_secs() < 5, "took {:?}", t.elapsed());
    pass(5, "20 seeded runs are non-increasing and m = 1 lands on the mean");
}

#[test]
fn criterion_06_metric_oracle_equivalence() {
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let m = rng.gen_range(2..=10u32);
        let g = random_connected_grid(&mut rng, m, 2 * m as usize, usize::MAX);
        let dim = rng.gen_range(1..=4);
        let weights: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect())
            .collect();
        let g = g.with_weights(weights.clone()).unwrap();
        let n = rng.gen_range(1..=100);
        let samples: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect())
            .collect();
        let data = Dataset::new(samples.clone()).unwrap();

        // Brute force recomputation straight from the definitions.
        let dist = |a: &[f64], b: &[f64]| -> f64 {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        };
        let mut qe_sum = 0.0;
        let mut te_misses = 0usize;
        for s in &samples {
            let mut ranked: Vec<(f64, u32)> = weights
                .iter()
                .enumerate()
                .map(|(id, w)| (dist(s, w), id as u32))
                .collect();
            ranked.sort_by(|a, b| a.partial_cmp(b).unwrap());
            qe_sum += ranked[0].0;
            if !g.are_adjacent(ranked[0].1, ranked[1].1) {
                te_misses += 1;
            }
        }
        let qe_oracle = qe_sum / n as f64;
        let te_oracle = te_misses as f64 / n as f64;

        assert_eq!(quantization_error(&g, &data).unwrap(), qe_oracle, "seed {seed}");
        assert_eq!(topographic_error(&g, &data).unwrap(), te_oracle, "seed {seed}");
    }
    pass(6, "QE and TE equal brute force on 10 random instances");
}

#[test]
fn criterion_07_folding_demo_direction() {
    let t = Instant::now();
    let mut wins = 0;
    for seed in 0..10u64 {
        let (te_chain, te_lattice) = folding_demo(seed).unwrap();
        if te_chain > te_lattice {
            wins += 1;
        }
    }
    assert!(wins >= 9, "chain folded less than the lattice in {}/10 runs", 10 - wins);
    assert!(t.elapsed().as_secs() < 60, "took {:?}", t.elapsed());
    pass(7, "te_chain > te_lattice in at least 9 of 10 seeded runs");
}

#[test]
fn criterion_08_factory_suite_embeds() {
    let t = Instant::now();
    let mut suite: Vec<(String, NeuronGrid)> = Vec::new();
    for m in 1..=32 {
        suite.push((format!("chain-{m}"), make_chain(m).unwrap()));
    }
    for m in 3..=32 {
        suite.push((format!("ring-{m}"), make_ring(m).unwrap()));
    }
    for w in 1..=5 {
        for h in 1..=5 {
            suite.push((format!("lattice-{w}x{h}"), make_lattice2d(w, h).unwrap()));
        }
    }
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + seed);
        let m = rng.gen_range(2..=16u32);
        suite.push((
            format!("random-{seed}"),
            random_connected_grid(&mut rng, m, 24, 5),
        ));
    }

    for (name, g) in &suite {
        let e = embed_grid(g, 1, 4, 0)
            .unwrap_or_else(|err| panic!("{name} failed to embed: {err}"));
        assert!(e.level() <= 4);
        let violations = validate_embedding(g, &e);
        assert!(violations.is_empty(), "{name}: {}", violations[0]);
    }
    assert!(t.elapsed().as_secs() < 120, "took {:?}", t.elapsed());
    pass(8, "all factory and random grids embed by level 4 with no violations");
}

#[test]
fn criterion_09_ring_eight_on_a_face_cycle() {
    let g = make_ring(8).unwrap();
    let e = embed_grid(&g, 1, 1, 0).unwrap();
    assert_eq!(e.level(), 1);
    assert!(validate_embedding(&g, &e).is_empty());
    for (edge, path) in e.edge_paths() {
        assert_eq!(path.len(), 2, "link {edge:?} is not a direct face contact");
    }
    let geometry = embedding_to_geometry(&e);
    for p in geometry
        .node_points
        .iter()
        .chain(geometry.link_polylines.iter().flat_map(|(_, pl)| pl))
    {
        assert!(is_sponge_member(*p, 1).unwrap(), "{p:?} is outside the sponge");
    }
    pass(9, "ring-8 lands on a face 8-cycle with direct links, centers inside");
}

#[test]
fn criterion_10_cli_outputs_are_byte_identical_across_reruns() {
    let bin = env!("CARGO_BIN_EXE_menger-grid");
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();

    let data = root.join("data.csv");
    let mut rows = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..64 {
        rows.push_str(&format!(
            "{},{}\n",
            rng.gen_range(0.0..1.0f64),
            rng.gen_range(0.0..1.0f64)
        ));
    }
    std::fs::write(&data, rows).unwrap();
    let config = root.join("config.json");
    std::fs::write(
        &config,
        "{\"t_max\": 512, \"eta0\": 0.5, \"etaF\": 0.05, \"sigma0\": 2.0, \"sigmaF\": 0.5, \"epochs\": 4, \"seed\": 11}\n",
    )
    .unwrap();

    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        assert!(out.status.success(), "command {args:?} failed");
    };
    let d = |name: &str| root.join(name).to_string_lossy().into_owned();

    for round in ["a", "b"] {
        run(&[
            "train",
            "--grid",
            "lattice:3x3",
            "--data",
            &d("data.csv"),
            "--config",
            &d("config.json"),
            "--out",
            &d(&format!("train_{round}")),
        ]);
        run(&[
            "embed",
            "--model",
            &d(&format!("train_{round}/model.json")),
            "--out",
            &d(&format!("embed_{round}")),
        ]);
        run(&["demo", "--seed", "3", "--out", &d(&format!("demo_{round}"))]);
    }

    for sub in ["train", "embed", "demo"] {
        let a_dir = root.join(format!("{sub}_a"));
        let b_dir = root.join(format!("{sub}_b"));
        let mut names: Vec<String> = std::fs::read_dir(&a_dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        assert!(!names.is_empty());
        for name in names {
            let a = std::fs::read(a_dir.join(&name)).unwrap();
            let b = std::fs::read(b_dir.join(&name)).unwrap();
            assert_eq!(a, b, "{sub}/{name} differs between reruns");
        }
    }
    pass(10, "train, embed, and demo rerun byte-identical");
}

/// Random connected grid built from a random attachment tree plus extra
/// edges, rejecting drafts that exceed the degree cap.
fn random_connected_grid(
    rng: &mut ChaCha8Rng,
    m: u32,
    max_edges: usize,
    max_degree: usize,
) -> NeuronGrid {
    loop {
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut degree = vec![0usize; m as usize];
        for v in 1..m {
            let u = rng.gen_range(0..v);
            edges.push((u, v));
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let spare = max_edges.saturating_sub(edges.len());
        for _ in 0..rng.gen_range(0..=spare) {
            let a = rng.gen_range(0..m);
            let b = rng.gen_range(0..m);
            let key = (a.min(b), a.max(b));
            if a != b && !edges.contains(&key) {
                edges.push(key);
                degree[a as usize] += 1;
                degree[b as usize] += 1;
            }
        }
        if degree.iter().all(|&d| d <= max_degree) {
            return from_edge_list(&edges).unwrap();
        }
    }
}
