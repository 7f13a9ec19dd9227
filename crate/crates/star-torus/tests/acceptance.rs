//! Acceptance suite: one test per shipping criterion. Each test prints a
//! single `criterion N: PASS — ...` line with measured evidence (visible
//! under `cargo test -- --nocapture`); a failing criterion fails its test.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use star_torus::compose::{construct, replay_plan};
use star_torus::graph::{make_cycle, make_path, make_torus, Graph};
use star_torus::solve::{
    exists_star_coloring, star_chromatic_number, SearchStatus, SolverConfig,
};
use star_torus::tiles::tile_catalog;
use star_torus::verify::{
    enumerate_p4_bruteforce, verify_star, Coloring, Color, Verdict,
};

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

fn run_cli(args: &[&str]) -> (i32, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_star-torus"))
        .args(args)
        .env_remove("STAR_TORUS_THREADS")
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("stdout is utf-8"),
    )
}

fn random_graph(rng: &mut StdRng, n: usize, edge_prob: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("random edges are in range")
}

fn random_coloring(rng: &mut StdRng, g: &Graph, k: Color) -> Coloring {
    let colors = (0..g.vertex_count()).map(|_| rng.random_range(1..=k)).collect();
    Coloring::new(g, colors, k).expect("random colors are in range")
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((i, i + 5)); // spokes
        edges.push((i + 5, 5 + (i + 2) % 5)); // inner pentagram
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Ground truth by definition: proper, and no P4 alternating two colors.
fn star_valid_brute(g: &Graph, c: &Coloring) -> bool {
    if g.edges().any(|(u, v)| c.color(u) == c.color(v)) {
        return false;
    }
    enumerate_p4_bruteforce(g).expect("corpus within brute-force bound").iter().all(
        |&(a, b, mid, d)| {
            !(c.color(a) == c.color(mid)
                && c.color(b) == c.color(d)
                && c.color(a) != c.color(b))
        },
    )
}

fn decide(g: &Graph, k: Color) -> SearchStatus {
    let outcome = exists_star_coloring(g, &SolverConfig::new(k)).expect("in-bounds search");
    if let Some(witness) = &outcome.witness {
        assert!(
            verify_star(g, witness).unwrap().is_valid(),
            "solver witness must verify"
        );
    }
    outcome.status
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_catalog_validity() {
    let start = Instant::now();
    let catalog = tile_catalog();
    assert!(catalog.len() >= 18, "catalog holds {} tiles", catalog.len());
    for tile in &catalog {
        let g = make_torus(tile.m(), tile.w()).unwrap();
        let report = verify_star(&g, &tile.to_coloring()).unwrap();
        assert!(report.is_valid(), "{} fails verification", tile.source());
        assert!(
            report.colors_used <= tile.palette_size() as usize,
            "{} exceeds its stated palette",
            tile.source()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 1: PASS — {} catalog tiles verified in {elapsed:?}",
        catalog.len()
    );
}

#[test]
fn criterion_2_full_grid_constructs_and_verifies() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let out_str = out.to_str().unwrap();
    let mut grids = 0;
    for m in 3..=30 {
        for n in 3..=30 {
            // The two exceptional products, in either orientation.
            let exceptional = (m, n) == (3, 3) || (m, n) == (3, 5) || (m, n) == (5, 3);
            let expected_k = if exceptional { 6 } else { 5 };
            let (code, stdout) =
                run_cli(&["construct", &m.to_string(), &n.to_string(), "--out", out_str]);
            assert_eq!(code, 0, "construct {m} {n} failed");
            let k: u32 = stdout
                .split_whitespace()
                .nth(2)
                .and_then(|w| w.parse().ok())
                .expect("construct prints m n k");
            assert_eq!(k, expected_k, "construct {m} {n} used k={k}");

            let (code, stdout) = run_cli(&[
                "verify", "--torus", &m.to_string(), &n.to_string(), "--coloring", out_str,
            ]);
            assert_eq!(code, 0, "verify {m} {n} failed: {stdout}");
            grids += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(grids, 28 * 28);
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 2: PASS — {grids} grids constructed and verified in {elapsed:?}");
}

#[test]
fn criterion_3_exceptional_grids_refuse_five_colors() {
    let start_33 = Instant::now();
    let g33 = make_torus(3, 3).unwrap();
    assert_eq!(decide(&g33, 5), SearchStatus::Unsatisfiable);
    let elapsed_33 = start_33.elapsed();
    assert!(elapsed_33 < Duration::from_secs(60), "3x3 took {elapsed_33:?}");

    let start_35 = Instant::now();
    let g35 = make_torus(3, 5).unwrap();
    assert_eq!(decide(&g35, 5), SearchStatus::Unsatisfiable);
    let elapsed_35 = start_35.elapsed();
    assert!(elapsed_35 < Duration::from_secs(900), "3x5 took {elapsed_35:?}");

    println!(
        "criterion 3: PASS — k=5 refuted on 3x3 in {elapsed_33:?} and on 3x5 in {elapsed_35:?}"
    );
}

#[test]
fn criterion_4_four_by_four_refuses_four_colors() {
    let start = Instant::now();
    let g = make_torus(4, 4).unwrap();
    assert_eq!(decide(&g, 4), SearchStatus::Unsatisfiable);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 4: PASS — k=4 refuted on 4x4 in {elapsed:?}");
}

#[test]
fn criterion_5_known_small_values() {
    let start = Instant::now();
    for n in 3..=12 {
        let expected = if n == 5 { 4 } else { 3 };
        let got = star_chromatic_number(&make_cycle(n).unwrap(), 6).unwrap();
        assert_eq!(got, expected, "cycle on {n} vertices");
    }
    for n in 4..=12 {
        let got = star_chromatic_number(&make_path(n).unwrap(), 6).unwrap();
        assert_eq!(got, 3, "path on {n} vertices");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 5: PASS — 19 cycle/path values matched in {elapsed:?}");
}

#[test]
fn criterion_6_eleven_by_eleven_is_embedded() {
    let start = Instant::now();
    let (coloring, plan) = construct(11, 11).unwrap();
    let elapsed = start.elapsed();
    let g = make_torus(11, 11).unwrap();
    assert!(verify_star(&g, &coloring).unwrap().is_valid());
    assert_eq!(coloring.palette_size(), 5);
    assert_eq!(plan.trace, vec!["tile C11C11-5".to_owned()]);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 6: PASS — 11x11 five-coloring served from the embedded tile in {elapsed:?}"
    );
}

#[test]
fn criterion_7_detector_matches_bruteforce() {
    let mut rng = StdRng::seed_from_u64(0xACCE_7E57);
    let mut pairs = 0;
    while pairs < 220 {
        let n = rng.random_range(4..=20);
        let g = random_graph(&mut rng, n, 0.3);
        if g.edge_count() == 0 {
            continue;
        }
        let k = rng.random_range(1..=5);
        let coloring = random_coloring(&mut rng, &g, k);
        check_detector_against_bruteforce(&g, &coloring);
        pairs += 1;
    }
    let mut tiles = 0;
    for tile in tile_catalog() {
        let g = make_torus(tile.m(), tile.w()).unwrap();
        check_detector_against_bruteforce(&g, &tile.to_coloring());
        tiles += 1;
    }
    println!(
        "criterion 7: PASS — detector agreed with brute force on {pairs} random pairs and {tiles} tiles"
    );
}

fn check_detector_against_bruteforce(g: &Graph, coloring: &Coloring) {
    let report = verify_star(g, coloring).unwrap();
    let proper = g.edges().all(|(u, v)| coloring.color(u) != coloring.color(v));
    let alternating: Vec<_> = enumerate_p4_bruteforce(g)
        .unwrap()
        .into_iter()
        .filter(|&(a, b, c, d)| {
            coloring.color(a) == coloring.color(c)
                && coloring.color(b) == coloring.color(d)
                && coloring.color(a) != coloring.color(b)
        })
        .collect();
    match report.verdict {
        Verdict::Valid => {
            assert!(proper && alternating.is_empty());
            assert!(star_valid_brute(g, coloring));
        }
        Verdict::Improper { edge: (u, v) } => {
            assert!(!proper);
            assert_eq!(coloring.color(u), coloring.color(v));
            assert!(g.has_edge(u, v));
        }
        Verdict::BicoloredP4 { path: (a, b, c, d) } => {
            assert!(proper);
            let canonical = if a < d { (a, b, c, d) } else { (d, c, b, a) };
            assert!(
                alternating.contains(&canonical),
                "witness {:?} not among brute-force paths",
                (a, b, c, d)
            );
        }
    }
}

#[test]
fn criterion_8_property_suite() {
    let mut rng = StdRng::seed_from_u64(0x50_50_50);

    // Color-permutation invariance: relabeling colors never changes the
    // verdict class.
    for _ in 0..60 {
        let size = rng.random_range(4..=12);
        let g = random_graph(&mut rng, size, 0.35);
        let k = rng.random_range(2..=5);
        let coloring = random_coloring(&mut rng, &g, k);
        let mut perm: Vec<Color> = (1..=k).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let relabeled = Coloring::new(
            &g,
            coloring.colors().iter().map(|&c| perm[(c - 1) as usize]).collect(),
            k,
        )
        .unwrap();
        let before = verify_star(&g, &coloring).unwrap().verdict;
        let after = verify_star(&g, &relabeled).unwrap().verdict;
        assert_eq!(
            std::mem::discriminant(&before),
            std::mem::discriminant(&after),
            "permuting colors changed the verdict class"
        );
    }

    // Torus rotation and transpose invariance: the torus is vertex-transitive,
    // so shifting rows or columns, or transposing, preserves validity.
    for tile in tile_catalog() {
        let (m, n) = (tile.m(), tile.w());
        let g = make_torus(m, n).unwrap();
        let base = tile.to_coloring();
        for (dr, dc) in [(1, 0), (0, 1), (m - 1, n - 1), (m / 2, n / 2)] {
            let rotated: Vec<Color> = (0..m * n)
                .map(|v| {
                    let (r, c) = (v / n, v % n);
                    base.color(((r + dr) % m) * n + (c + dc) % n)
                })
                .collect();
            let rotated = Coloring::new(&g, rotated, tile.palette_size()).unwrap();
            assert!(
                verify_star(&g, &rotated).unwrap().is_valid(),
                "rotation ({dr},{dc}) of {} broke validity",
                tile.source()
            );
        }
        let transposed = tile.transpose();
        let gt = make_torus(n, m).unwrap();
        assert!(
            verify_star(&gt, &transposed.to_coloring()).unwrap().is_valid(),
            "transpose of {} broke validity",
            tile.source()
        );
    }

    // Palette monotonicity: validity survives a larger palette, and solver
    // satisfiability is monotone in k.
    for tile in tile_catalog().into_iter().take(6) {
        let g = make_torus(tile.m(), tile.w()).unwrap();
        let wider = Coloring::new(&g, tile.to_coloring().colors().to_vec(), tile.palette_size() + 1)
            .unwrap();
        assert!(verify_star(&g, &wider).unwrap().is_valid());
    }
    for g in [make_cycle(5).unwrap(), make_cycle(7).unwrap(), make_torus(3, 4).unwrap()] {
        let mut seen_sat = false;
        for k in 1..=6 {
            let sat = decide(&g, k) == SearchStatus::Satisfiable;
            assert!(!seen_sat || sat, "satisfiability must be monotone in k");
            seen_sat = seen_sat || sat;
        }
        assert!(seen_sat);
    }

    // Symmetry-breaking soundness: verdict parity across the corpus.
    let corpus: Vec<Graph> = vec![
        make_cycle(3).unwrap(),
        make_cycle(5).unwrap(),
        make_cycle(8).unwrap(),
        make_path(6).unwrap(),
        make_torus(3, 3).unwrap(),
        make_torus(3, 4).unwrap(),
        petersen(),
    ];
    for g in &corpus {
        for k in 1..=5 {
            let mut on = SolverConfig::new(k);
            on.thread_hint = Some(1);
            let mut off = on.clone();
            off.symmetry_breaking = false;
            let status_on = exists_star_coloring(g, &on).unwrap().status;
            let status_off = exists_star_coloring(g, &off).unwrap().status;
            assert_eq!(status_on, status_off, "symmetry breaking changed a verdict at k={k}");
        }
    }

    // Plan-replay bit-stability: replaying a construction plan reproduces
    // the identical coloring.
    for (m, n) in [(3, 7), (4, 9), (5, 12), (6, 10), (8, 8), (11, 14), (12, 13), (17, 19)] {
        let (coloring, plan) = construct(m, n).unwrap();
        let replayed = replay_plan(&plan).unwrap();
        assert_eq!(coloring.colors(), replayed.colors(), "replaying {m}x{n} diverged");
    }

    println!("criterion 8: PASS — invariance, monotonicity, parity, and replay properties hold");
}

#[test]
fn criterion_9_solver_matches_filtered_enumeration() {
    let start = Instant::now();

    // Every coloring in k^n order, filtered through the verifier.
    fn brute_force_exists(g: &Graph, k: Color) -> bool {
        let n = g.vertex_count();
        let mut assignment = vec![1 as Color; n];
        loop {
            let coloring = Coloring::new(g, assignment.clone(), k).unwrap();
            if verify_star(g, &coloring).unwrap().is_valid() {
                return true;
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    return false;
                }
                if assignment[pos] < k {
                    assignment[pos] += 1;
                    break;
                }
                assignment[pos] = 1;
                pos += 1;
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0xC0_4B_E5);
    let mut corpus: Vec<Graph> = vec![
        make_cycle(5).unwrap(),
        make_cycle(6).unwrap(),
        make_path(5).unwrap(),
        make_path(7).unwrap(),
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        Graph::from_edges(
            5,
            [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap(),
        petersen(),
    ];
    for _ in 0..4 {
        let size = rng.random_range(5..=9);
        corpus.push(random_graph(&mut rng, size, 0.35));
    }

    let mut checks = 0;
    for g in &corpus {
        let kcap = if g.vertex_count() >= 10 { 4 } else { 4.min(g.vertex_count() as Color) };
        for k in 1..=kcap {
            let expected = brute_force_exists(g, k);
            let got = decide(g, k) == SearchStatus::Satisfiable;
            assert_eq!(
                got,
                expected,
                "solver disagrees with enumeration on {} vertices at k={k}",
                g.vertex_count()
            );
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 9: PASS — {checks} verdicts matched exhaustive enumeration in {elapsed:?}");
}
