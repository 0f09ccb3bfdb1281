//! Cross-module invariants checked against independent oracles: dense grid
//! maximization for the Lagrangian, brute-force independence numbers for
//! theta, the variational characterization for certificates, and the
//! identities tying the clique-tensor and link routes together.

use hyperspec_core::cliques::{clique_hypergraph, clique_number, enumerate_cliques};
use hyperspec_core::graph::Graph;
use hyperspec_core::hypergraph::UniformHypergraph;
use hyperspec_core::io::hypergraph_to_graph;
use hyperspec_core::lagrangian::lagrangian;
use hyperspec_core::spectra::{clique_spectral_radius, hypergraph_spectral_radius, matrix_spectral_radius};
use hyperspec_core::tensor::ImplicitTensor;
use hyperspec_core::theta::{mu_f, theta_prime, two_distance_rep, RepMode};
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

/// Objective value at a point, straight from the definition.
fn edge_monomial_sum(h: &UniformHypergraph, x: &[f64]) -> f64 {
    h.edges()
        .map(|e| e.iter().map(|&i| x[i]).product::<f64>())
        .sum()
}

/// Grid oracle: maximum of the edge-monomial sum over simplex points with
/// coordinates k/steps, plus the uniform point of every support.
fn lagrangian_grid_oracle(h: &UniformHypergraph, steps: usize) -> f64 {
    let n = h.vertex_count();
    let mut best = 0.0f64;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        let mut x = vec![0.0; n];
        for (i, xi) in x.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *xi = 1.0 / size as f64;
            }
        }
        best = best.max(edge_monomial_sum(h, &x));
    }
    let mut x = vec![0.0f64; n];
    fn recurse(
        h: &UniformHypergraph,
        x: &mut Vec<f64>,
        index: usize,
        remaining: usize,
        steps: usize,
        best: &mut f64,
    ) {
        if index + 1 == x.len() {
            x[index] = remaining as f64 / steps as f64;
            *best = f64::max(*best, edge_monomial_sum(h, x));
            return;
        }
        for k in 0..=remaining {
            x[index] = k as f64 / steps as f64;
            recurse(h, x, index + 1, remaining - k, steps, best);
        }
    }
    recurse(h, &mut x, 0, steps, steps, &mut best);
    best
}

#[test]
fn lagrangian_matches_grid_oracle_on_small_instances() {
    // spot checks at grid step 1/60, tolerance 1e-3
    let cases: Vec<UniformHypergraph> = vec![
        UniformHypergraph::random(5, 2, 6, 11).unwrap(),
        UniformHypergraph::random(6, 2, 9, 12).unwrap(),
        UniformHypergraph::random(5, 3, 5, 13).unwrap(),
        UniformHypergraph::random(6, 3, 10, 14).unwrap(),
        UniformHypergraph::matching(2, 3).unwrap(),
    ];
    for (i, h) in cases.iter().enumerate() {
        let fast = lagrangian(h, 32, 1e-12).value;
        let oracle = lagrangian_grid_oracle(h, 60);
        assert!(
            (fast - oracle).abs() <= 1e-3,
            "case {i}: optimizer {fast}, grid oracle {oracle}"
        );
        // the optimizer is a feasible point, so it can never exceed the
        // true maximum by more than evaluation round-off
        assert!(fast >= oracle - 1e-3);
    }
}

#[test]
fn lagrangian_feasibility_and_monotonicity() {
    for seed in 0..50u64 {
        let n = 5 + (seed % 4) as usize;
        let max_m = hyperspec_core::hypergraph::r_subsets(n, 3).unwrap().len();
        let m = 1 + (seed as usize * 3) % (max_m - 1);
        let smaller = UniformHypergraph::random(n, 3, m, 900 + seed).unwrap();
        // add one more edge to get a strict superset
        let mut larger = smaller.clone();
        for e in hyperspec_core::hypergraph::r_subsets(n, 3).unwrap() {
            if !larger.has_edge(&e) {
                larger.add_edge(&e).unwrap();
                break;
            }
        }
        let a = lagrangian(&smaller, 16, 1e-12);
        let b = lagrangian(&larger, 16, 1e-12);
        let sum: f64 = a.x.iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12, "simplex feasibility");
        assert!(a.x.iter().all(|&v| v >= 0.0));
        assert!(b.value >= a.value - 1e-9, "monotone under edge addition");
    }
}

#[test]
fn certificates_satisfy_rayleigh_characterization() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for seed in 0..20u64 {
        let n = 6 + (seed % 4) as usize;
        let r = if seed % 2 == 0 { 3 } else { 4 };
        let max_m = hyperspec_core::hypergraph::r_subsets(n, r).unwrap().len();
        let m = 1 + (seed as usize * 5) % max_m;
        let h = UniformHypergraph::random(n, r, m, 7100 + seed).unwrap();
        let tensor = ImplicitTensor::<f64>::adjacency(&h);
        let cert = tensor.spectral_radius(1e-10, 100_000);
        assert!(cert.converged);
        assert!(cert.cw_low <= cert.rho && cert.rho <= cert.cw_high);

        // the returned eigenvector attains rho in the homogeneous form
        let at_x = tensor.total_form(&cert.x).unwrap();
        assert!(
            (at_x - cert.rho).abs() <= 1e-7,
            "seed {seed}: A x^m = {at_x}, rho = {}",
            cert.rho
        );
        // no nonnegative normalized point beats rho
        for _ in 0..100 {
            let raw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let norm: f64 = raw.iter().map(|v| v.powi(r as i32)).sum::<f64>();
            let y: Vec<f64> = raw
                .iter()
                .map(|v| v / norm.powf(1.0 / r as f64))
                .collect();
            let at_y = tensor.total_form(&y).unwrap();
            assert!(
                at_y <= cert.rho + 1e-7,
                "seed {seed}: A y^m = {at_y} exceeds rho = {}",
                cert.rho
            );
        }
    }
}

#[test]
fn matrix_and_tensor_routes_agree_on_graphs() {
    for seed in 0..100u64 {
        let n = 4 + (seed % 7) as usize;
        let g = Graph::random(n, 0.45, 3000 + seed).unwrap();
        let matrix = matrix_spectral_radius(&g, 1e-10_f64);
        let tensor =
            hypergraph_spectral_radius(&hyperspec_core::io::graph_to_hypergraph(&g), 1e-10);
        assert!(
            (matrix.rho - tensor.rho).abs() <= 2e-10,
            "seed {seed}: {} vs {}",
            matrix.rho,
            tensor.rho
        );
    }
}

#[test]
fn two_section_has_exactly_the_covered_pairs() {
    for seed in 0..40u64 {
        let n = 6 + (seed % 7) as usize; // up to 12
        let r = 3 + (seed % 2) as usize;
        let max_m = hyperspec_core::hypergraph::r_subsets(n, r).unwrap().len();
        let m = (seed as usize * 3) % (max_m + 1);
        let h = UniformHypergraph::random(n, r, m, 4600 + seed).unwrap();
        let g = h.two_section();
        for u in 0..n {
            for v in (u + 1)..n {
                let covered = h.edges().any(|e| e.contains(&u) && e.contains(&v));
                assert_eq!(g.has_edge(u, v), covered, "seed {seed}, pair ({u},{v})");
            }
        }
    }
}

#[test]
fn clique_link_and_hypergraph_link_routes_agree() {
    // rho_{r-1}(G_u) equals the radius of the clique-hypergraph link at u
    for seed in 0..25u64 {
        let g = Graph::random(8, 0.55, kseed(seed)).unwrap();
        let r = 3;
        let hr = clique_hypergraph(&g, r).unwrap();
        if hr.edge_count() == 0 {
            continue;
        }
        for u in 0..g.vertex_count() {
            if hr.degree(u) == 0 {
                continue;
            }
            let (link, _) = hr.link(u).unwrap();
            let via_link = hypergraph_spectral_radius(&link, 1e-10_f64).rho;
            let (gu, _) = g.induced_neighborhood(u).unwrap();
            let via_clique = clique_spectral_radius(&gu, r - 1, 1e-10).unwrap().rho;
            assert!(
                (via_link - via_clique).abs() <= 1e-8,
                "seed {seed}, u {u}: link {via_link}, clique {via_clique}"
            );
        }
    }
}

fn kseed(seed: u64) -> u64 {
    8800 + seed
}

#[test]
fn theta_prime_dominates_independence_number() {
    for seed in 0..50u64 {
        let n = 4 + (seed % 6) as usize; // 4..=9
        let g = Graph::random(n, 0.5, 5200 + seed).unwrap();
        let alpha = clique_number(&g.complement()) as f64;
        let theta = theta_prime(&g, 1e-7).unwrap();
        assert!(
            alpha <= theta.value + 1e-5,
            "seed {seed}: alpha {alpha}, theta' {}",
            theta.value
        );
        assert!(theta.value <= n as f64 + 1e-5);

        // solution feasibility: trace, zero pattern, nonnegativity, PSD
        let x = &theta.matrix.entries;
        let trace: f64 = (0..n).map(|i| x[i][i]).sum();
        assert!((trace - 1.0).abs() <= 1e-9);
        for (u, v) in g.edges() {
            assert_eq!(x[u][v], 0.0);
        }
        assert!(x.iter().flatten().all(|&e| e >= 0.0));
        theta.matrix.validate_psd(1e-7).unwrap();
    }
}

#[test]
fn mu_f_monotone_under_entrywise_shrink() {
    let mut rng = ChaCha8Rng::seed_from_u64(515);
    for seed in 0..20u64 {
        let n = 5 + (seed % 4) as usize;
        let g = {
            let mut s = 6400 + seed;
            loop {
                let g = Graph::random(n, 0.55, s).unwrap();
                if !enumerate_cliques(&g, 3).is_empty() {
                    break g;
                }
                s += 1;
            }
        };
        let full = two_distance_rep::<f64>(&g, RepMode::Heuristic).unwrap();
        let t: f64 = rng.gen_range(0.1..0.9);
        let shrunk_entries: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            1.0
                        } else {
                            t * full.entries()[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let shrunk = two_distance_rep::<f64>(&g, RepMode::User(shrunk_entries)).unwrap();
        let big = mu_f(&g, &full, 1e-9).unwrap().rho;
        let small = mu_f(&g, &shrunk, 1e-9).unwrap().rho;
        assert!(
            small <= big + 1e-8,
            "seed {seed}: shrunk {small} exceeds full {big}"
        );
        assert!(
            (small - t * big).abs() <= 1e-6,
            "uniform shrink scales the radius linearly"
        );
    }
}

#[test]
fn theta_prime_petersen_is_four() {
    // alpha(Petersen) = 4 and the Lovász number is also 4, squeezing
    // theta' to exactly 4
    let theta = theta_prime(&Graph::petersen(), 1e-7_f64).unwrap();
    assert!((theta.value - 4.0).abs() <= 1e-4, "theta' = {}", theta.value);
}

#[test]
fn jacobi_and_power_iteration_agree_on_matrix_radius() {
    for seed in 0..50u64 {
        let n = 4 + (seed % 7) as usize;
        let g = Graph::random(n, 0.5, 9700 + seed).unwrap();
        let mut adj = vec![vec![0.0f64; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = 1.0;
            adj[v][u] = 1.0;
        }
        let (vals, _) = hyperspec_core::linalg::sym_eigen(&adj, 1e-12_f64).unwrap();
        let by_jacobi = vals.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        let by_power = matrix_spectral_radius(&g, 1e-11_f64).rho;
        assert!(
            (by_jacobi - by_power).abs() <= 1e-8,
            "seed {seed}: jacobi {by_jacobi}, power {by_power}"
        );
    }
}

/// Dense oracle for the weighted 3-clique tensor: materializes every entry
/// a_{ijk} and runs a plain shifted power iteration, no support analysis.
fn dense_weighted_radius(g: &Graph, m: &[Vec<f64>]) -> f64 {
    let n = g.vertex_count();
    let mut dense = vec![0.0f64; n * n * n];
    for t in enumerate_cliques(g, 3).cliques {
        let (a, b, c) = (t[0], t[1], t[2]);
        // entry at (i, j, k) is M[j][k] for every ordering of the triangle
        for (i, j, k) in [
            (a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a),
        ] {
            dense[(i * n + j) * n + k] = m[j][k];
        }
    }
    let mut x = vec![1.0f64; n];
    let shift = 1.0
        + (0..n)
            .map(|i| (0..n * n).map(|jk| dense[i * n * n + jk]).sum::<f64>())
            .fold(0.0f64, f64::max);
    let mut rho = 0.0;
    for _ in 0..200_000 {
        let mut ax = vec![0.0f64; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ax[i] += dense[(i * n + j) * n + k] * x[j] * x[k];
                }
            }
        }
        let ratios: Vec<f64> = (0..n)
            .filter(|&i| x[i] > 0.0)
            .map(|i| ax[i] / (x[i] * x[i]))
            .collect();
        let low = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let high = ratios.iter().cloned().fold(0.0f64, f64::max);
        rho = (low + high) / 2.0;
        if high - low <= 1e-9 {
            break;
        }
        let max_y = (0..n)
            .map(|i| (ax[i] + shift * x[i] * x[i]).sqrt())
            .fold(0.0f64, f64::max);
        for i in 0..n {
            x[i] = (ax[i] + shift * x[i] * x[i]).sqrt() / max_y;
        }
    }
    rho
}

#[test]
fn mu_f_matches_dense_tensor_oracle() {
    for seed in 0..12u64 {
        let n = 5 + (seed % 3) as usize; // 5..=7
        let g = {
            let mut s = 8600 + seed;
            loop {
                let g = Graph::random(n, 0.6, s).unwrap();
                if !enumerate_cliques(&g, 3).is_empty() {
                    break g;
                }
                s += 1;
            }
        };
        let rep = two_distance_rep::<f64>(&g, RepMode::Heuristic).unwrap();
        let implicit = mu_f(&g, &rep, 1e-10).unwrap().rho;
        let dense = dense_weighted_radius(&g, rep.entries());
        assert!(
            (implicit - dense).abs() <= 1e-6,
            "seed {seed}: implicit {implicit}, dense {dense}"
        );
    }
}

/// Dense shifted power iteration for an arbitrary order-3 slot-weighted
/// tensor, bypassing the implicit engine's block analysis entirely.
/// Returns a certified sandwich (running max of min-ratios, final max
/// ratio) plus a convergence flag; reducible inputs stall with a loose
/// sandwich, which is exactly what the block analysis exists to avoid.
fn dense_order3_bounds(n: usize, sets: &[(Vec<usize>, [f64; 3])]) -> (f64, f64, bool) {
    let mut dense = vec![0.0f64; n * n * n];
    for (vs, w) in sets {
        let (a, b, c) = (vs[0], vs[1], vs[2]);
        // slot weight w[s] is the apply coefficient at vertex vs[s]; the
        // dense entries at (i, j, k) and (i, k, j) each carry half of it
        dense[(a * n + b) * n + c] = w[0] / 2.0;
        dense[(a * n + c) * n + b] = w[0] / 2.0;
        dense[(b * n + a) * n + c] = w[1] / 2.0;
        dense[(b * n + c) * n + a] = w[1] / 2.0;
        dense[(c * n + a) * n + b] = w[2] / 2.0;
        dense[(c * n + b) * n + a] = w[2] / 2.0;
    }
    let shift = 1.0
        + (0..n)
            .map(|i| (0..n * n).map(|jk| dense[i * n * n + jk]).sum::<f64>())
            .fold(0.0f64, f64::max);
    let mut x = vec![1.0f64; n];
    let mut best_low = 0.0f64;
    let mut high = f64::INFINITY;
    for _ in 0..100_000 {
        let mut ax = vec![0.0f64; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ax[i] += dense[(i * n + j) * n + k] * x[j] * x[k];
                }
            }
        }
        let low = (0..n)
            .map(|i| ax[i] / (x[i] * x[i]))
            .fold(f64::INFINITY, f64::min);
        high = (0..n)
            .map(|i| ax[i] / (x[i] * x[i]))
            .fold(0.0f64, f64::max);
        best_low = best_low.max(low);
        if high - best_low <= 1e-8 {
            return (best_low, high, true);
        }
        let max_y = (0..n)
            .map(|i| (ax[i] + shift * x[i] * x[i]).sqrt())
            .fold(0.0f64, f64::max);
        for i in 0..n {
            x[i] = (ax[i] + shift * x[i] * x[i]).sqrt() / max_y;
        }
    }
    (best_low, high, false)
}

#[test]
fn block_decomposition_matches_dense_iteration_on_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(771);
    let mut converged_cases = 0;
    for case in 0..30 {
        let n = 5 + case % 3;
        let supports = hyperspec_core::hypergraph::r_subsets(n, 3).unwrap();
        let mut sets: Vec<(Vec<usize>, [f64; 3])> = Vec::new();
        for s in supports {
            if rng.gen::<f64>() < 0.4 {
                // zero out slots at random to force reducible structure
                let w = [
                    if rng.gen::<f64>() < 0.3 { 0.0 } else { rng.gen_range(0.1..2.0) },
                    if rng.gen::<f64>() < 0.3 { 0.0 } else { rng.gen_range(0.1..2.0) },
                    if rng.gen::<f64>() < 0.3 { 0.0 } else { rng.gen_range(0.1..2.0) },
                ];
                sets.push((s, w));
            }
        }
        let implicit = ImplicitTensor::new(
            3,
            n,
            sets.iter()
                .map(|(vs, w)| hyperspec_core::tensor::SupportSet {
                    vertices: vs.clone(),
                    slot_weights: w.to_vec(),
                })
                .collect(),
        )
        .unwrap();
        let fast = implicit.spectral_radius(1e-10, 200_000);
        let (low, high, converged) = dense_order3_bounds(n, &sets);
        assert!(
            low - 1e-6 <= fast.rho && fast.rho <= high + 1e-6,
            "case {case}: implicit {} outside dense sandwich [{low}, {high}]",
            fast.rho
        );
        if converged {
            converged_cases += 1;
            assert!(
                (fast.rho - (low + high) / 2.0).abs() <= 1e-4,
                "case {case}: implicit {} vs dense {}",
                fast.rho,
                (low + high) / 2.0
            );
        }
    }
    assert!(converged_cases >= 10, "oracle converged on {converged_cases} cases only");
}

#[test]
fn graph_random_model_matches_hypergraph_rank_two() {
    // the G(n, m) path used by verification batches round-trips to graphs
    for seed in 0..10u64 {
        let h = UniformHypergraph::random(9, 2, 14, seed).unwrap();
        let g = hypergraph_to_graph(&h).unwrap();
        assert_eq!(g.edge_count(), 14);
        let back = hyperspec_core::io::graph_to_hypergraph(&g);
        assert_eq!(back, h);
    }
}
