//! Library results checked against brute-force oracles written here from
//! scratch: Floyd-Warshall distances, simple-path enumeration and
//! exhaustive set-partition search for modularity.

use alp::dimacs::{parse_dimacs_str, DimacsOptions};
use alp::heuristics::{quad_sides, AlpHeuristic, AltHeuristic, HeuristicConfig};
use alp::partition::DEFAULT_MIN_GAIN;
use alp::verify::{check_admissible, check_consistency, Scenario};
use alp::{
    alp_h, alt_h, build_alp_index, build_alt_index, generate, louvain, modularity,
    select_landmarks, sssp, EmbeddingMode, GenParams, Graph, LandmarkMethod, Partition, QuadSides,
    Searcher, VertexId,
};

fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v, w) in g.arcs() {
        let cell = &mut d[u as usize][v as usize];
        *cell = cell.min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Length of the shortest simple path, by enumerating all of them.
fn shortest_simple_path(g: &Graph, s: VertexId, t: VertexId) -> (f64, usize) {
    fn dfs(
        g: &Graph,
        u: VertexId,
        t: VertexId,
        on: &mut Vec<bool>,
        len: f64,
        best: &mut f64,
        count: &mut usize,
    ) {
        if u == t {
            *count += 1;
            *best = best.min(len);
            return;
        }
        for (v, w) in g.neighbors(u) {
            if !on[v as usize] {
                on[v as usize] = true;
                dfs(g, v, t, on, len + w, best, count);
                on[v as usize] = false;
            }
        }
    }
    let mut on = vec![false; g.vertex_count()];
    on[s as usize] = true;
    let (mut best, mut count) = (f64::INFINITY, 0);
    dfs(g, s, t, &mut on, 0.0, &mut best, &mut count);
    (best, count)
}

/// Q = Σ_c [ e_c / m − (d_c / 2m)² ] for an undirected graph.
fn modularity_by_formula(edges: &[(u32, u32, f64)], labels: &[u32]) -> f64 {
    let m: f64 = edges.iter().map(|e| e.2).sum();
    let k = *labels.iter().max().unwrap() as usize + 1;
    let (mut inner, mut degree) = (vec![0.0; k], vec![0.0; k]);
    for &(u, v, w) in edges {
        let (cu, cv) = (labels[u as usize] as usize, labels[v as usize] as usize);
        if cu == cv {
            inner[cu] += w;
        }
        degree[cu] += w;
        degree[cv] += w;
    }
    (0..k)
        .map(|c| inner[c] / m - (degree[c] / (2.0 * m)).powi(2))
        .sum()
}

/// Every set partition of `n` items as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    fn grow(prefix: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            prefix.push(c);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

fn best_partitions(edges: &[(u32, u32, f64)], n: usize) -> (f64, Vec<Vec<u32>>) {
    let all = set_partitions(n);
    let scores: Vec<f64> = all
        .iter()
        .map(|p| modularity_by_formula(edges, p))
        .collect();
    let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let winners = all
        .into_iter()
        .zip(&scores)
        .filter(|(_, &s)| s > best - 1e-12)
        .map(|(p, _)| p)
        .collect();
    (best, winners)
}

fn same_grouping(a: &[u32], b: &[u32]) -> bool {
    Partition::from_labels(a).assignment() == Partition::from_labels(b).assignment()
}

const TWO_TRIANGLES: [(u32, u32, f64); 6] = [
    (0, 1, 1.0),
    (1, 2, 1.0),
    (0, 2, 1.0),
    (3, 4, 1.0),
    (4, 5, 1.0),
    (3, 5, 1.0),
];

#[test]
fn dimacs_triangle_distance() {
    let g = parse_dimacs_str(
        "p sp 3 3\na 1 2 1\na 2 3 1\na 1 3 5\n",
        DimacsOptions::default(),
    )
    .unwrap();
    let d = floyd_warshall(&g);
    assert_eq!(d[0][2], 2.0);
    let r = Searcher::new(&g).dijkstra(0, 2);
    assert_eq!(r.distance, Some(d[0][2]));
    assert_eq!(r.path, vec![0, 1, 2]);
}

#[test]
fn grid_corner_distance_matches_path_enumeration() {
    let g = generate(&GenParams::Grid { rows: 3, cols: 3 }, 0).unwrap();
    let (best, count) = shortest_simple_path(&g, 0, 8);
    assert_eq!(best, 4.0);
    assert!(count > 6);
    assert_eq!(Searcher::new(&g).dijkstra(0, 8).distance, Some(best));
    assert_eq!(sssp(&g, 0)[8], best);
}

#[test]
fn grid_row_path_has_three_vertices() {
    let g = generate(&GenParams::Grid { rows: 3, cols: 3 }, 0).unwrap();
    let r = Searcher::new(&g).dijkstra(0, 2);
    assert_eq!(r.path.len(), 3);
    for w in r.path.windows(2) {
        assert_eq!(g.edge_weight(w[0], w[1]), Some(1.0));
    }
}

#[test]
fn modularity_of_disjoint_triangles() {
    let g = Graph::from_edges(6, TWO_TRIANGLES, true).unwrap();
    let halves = Partition::from_assignment(vec![0, 0, 0, 1, 1, 1]).unwrap();
    let expected = modularity_by_formula(&TWO_TRIANGLES, halves.assignment());
    assert!((expected - 0.5).abs() < 1e-12);
    assert!((modularity(&g, &halves).unwrap() - expected).abs() < 1e-12);

    let (best, winners) = best_partitions(&TWO_TRIANGLES, 6);
    assert!((best - 0.5).abs() < 1e-12);
    assert_eq!(winners.len(), 1);
    let split = Partition::from_assignment(vec![0, 0, 1, 2, 2, 3]).unwrap();
    assert!(modularity(&g, &split).unwrap() < 0.5);
}

#[test]
fn modularity_agrees_with_formula_on_every_partition() {
    let mut edges = TWO_TRIANGLES.to_vec();
    edges.push((2, 3, 1.0));
    let g = Graph::from_edges(6, edges.clone(), true).unwrap();
    for labels in set_partitions(6) {
        let p = Partition::from_labels(&labels);
        let q = modularity(&g, &p).unwrap();
        assert!(
            (q - modularity_by_formula(&edges, &labels)).abs() < 1e-12,
            "{labels:?}"
        );
    }
}

#[test]
fn louvain_finds_the_optimum_on_bridged_triangles() {
    let mut edges = TWO_TRIANGLES.to_vec();
    edges.push((2, 3, 1.0));
    let (_, winners) = best_partitions(&edges, 6);
    assert_eq!(winners.len(), 1);
    let g = Graph::from_edges(6, edges, true).unwrap();
    for seed in 0..10 {
        let p = louvain(&g, seed, DEFAULT_MIN_GAIN).unwrap();
        assert!(same_grouping(p.assignment(), &winners[0]), "seed {seed}");
        let landmarks = select_landmarks(&g, &p, LandmarkMethod::Random, seed).unwrap();
        assert_eq!((p.community_count(), landmarks.len()), (2, 2));
    }
}

#[test]
fn louvain_keeps_k4_whole() {
    let edges: Vec<(u32, u32, f64)> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v, 1.0)))
        .collect();
    let (best, winners) = best_partitions(&edges, 4);
    assert!(best.abs() < 1e-12);
    assert_eq!(winners, vec![vec![0, 0, 0, 0]]);
    let g = Graph::from_edges(4, edges, true).unwrap();
    for seed in 0..10 {
        assert_eq!(
            louvain(&g, seed, DEFAULT_MIN_GAIN)
                .unwrap()
                .community_count(),
            1
        );
    }
}

#[test]
fn louvain_never_beaten_by_a_small_graph_optimum() {
    for seed in 0..20 {
        let g = generate(&GenParams::ErdosRenyi { n: 9, p: 0.4 }, seed).unwrap();
        if g.edge_count() == 0 || g.vertex_count() > 9 {
            continue;
        }
        let edges: Vec<_> = g.undirected_edges().collect();
        let (best, _) = best_partitions(&edges, g.vertex_count());
        let q = modularity(&g, &louvain(&g, seed, DEFAULT_MIN_GAIN).unwrap()).unwrap();
        assert!(q <= best + 1e-12);
        // Louvain is a heuristic; on graphs this small it should be close
        assert!(q >= best - 0.1, "seed {seed}: {q} vs {best}");
    }
}

#[test]
fn farthest_landmark_on_a_path() {
    let g = generate(&GenParams::Grid { rows: 1, cols: 3 }, 0).unwrap();
    let landmarks =
        select_landmarks(&g, &Partition::whole(3), LandmarkMethod::Farthest, 0).unwrap();
    assert_eq!(landmarks, vec![2]);
}

#[test]
fn alt_rows_on_a_path() {
    let g = generate(&GenParams::Grid { rows: 1, cols: 3 }, 0).unwrap();
    let d = floyd_warshall(&g);
    let alt = build_alt_index(&g, &[0, 2]).unwrap();
    for (i, &l) in [0u32, 2].iter().enumerate() {
        let row: Vec<f64> = (0..3).map(|v| alt.distance(i, v)).collect();
        assert_eq!(row, d[l as usize]);
    }
    assert_eq!(alt_h(&alt, 0, 2), 2.0);
    let one = build_alt_index(&g, &[0]).unwrap();
    assert_eq!(alt_h(&one, 1, 2), d[1][2]);
}

#[test]
fn alp_labels_on_a_split_path() {
    let g = generate(&GenParams::Grid { rows: 1, cols: 4 }, 0).unwrap();
    let d = floyd_warshall(&g);
    let p = Partition::from_assignment(vec![0, 0, 1, 1]).unwrap();
    let alp = build_alp_index(&g, &p, &[1, 2], EmbeddingMode::Exact).unwrap();
    let labels: Vec<(u32, f64)> = (0..4)
        .map(|v| (alp.label(v).landmark, alp.label(v).dist))
        .collect();
    assert_eq!(labels, vec![(0, d[0][1]), (0, 0.0), (1, 0.0), (1, d[3][2])]);
    assert_eq!(alp.landmark_distance(0, 1), d[1][2]);
    assert_eq!(
        quad_sides(&alp, 0, 3),
        Some(QuadSides {
            a: 1.0,
            b: 1.0,
            c: 1.0
        })
    );
    let h = alp_h(&alp, 0, 3, HeuristicConfig::default());
    assert_eq!(h, 0.0);
    assert!(h <= d[0][3]);
}

#[test]
fn exact_and_induced_labels_against_floyd_warshall() {
    for seed in 0..20 {
        let scenario = Scenario::random(seed, seed, (10, 60), EmbeddingMode::Exact);
        let inst = scenario.instantiate().unwrap();
        let g = &inst.graph;
        let d = floyd_warshall(g);
        let induced =
            build_alp_index(g, &inst.partition, &inst.landmarks, EmbeddingMode::Induced).unwrap();
        for v in 0..g.vertex_count() as VertexId {
            let exact = inst.alp.label(v);
            let l = inst.landmarks[exact.landmark as usize];
            assert_eq!(inst.partition.community_of(v), exact.landmark);
            assert!((exact.dist - d[v as usize][l as usize]).abs() < 1e-9);
            assert!(induced.label(v).dist >= exact.dist - 1e-9);
        }
        for (i, &a) in inst.landmarks.iter().enumerate() {
            for (j, &b) in inst.landmarks.iter().enumerate() {
                let m = inst.alp.landmark_distance(i as u32, j as u32);
                assert!((m - d[a as usize][b as usize]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn astar_matches_floyd_warshall_on_200_graphs() {
    for trial in 0..200 {
        let inst = Scenario::random(77, trial, (10, 60), EmbeddingMode::Exact)
            .instantiate()
            .unwrap();
        let g = &inst.graph;
        let d = floyd_warshall(g);
        let alt = AltHeuristic(&inst.alt);
        let alp = AlpHeuristic {
            index: &inst.alp,
            cfg: HeuristicConfig::default(),
        };
        let mut searcher = Searcher::new(g);
        let n = g.vertex_count() as VertexId;
        for s in 0..n {
            for t in 0..n {
                let truth = d[s as usize][t as usize];
                for r in [searcher.astar(&alt, s, t), searcher.astar(&alp, s, t)] {
                    let got = r.distance.expect("generated graphs are connected");
                    assert!(
                        (got - truth).abs() <= 1e-9 * truth.max(1.0),
                        "trial {trial} ({s},{t})"
                    );
                }
            }
        }
    }
}

#[test]
fn alt_is_consistent_and_both_are_admissible() {
    for trial in 0..30 {
        let inst = Scenario::random(5, trial, (10, 60), EmbeddingMode::Exact)
            .instantiate()
            .unwrap();
        let g = &inst.graph;
        let d = floyd_warshall(g);
        let n = g.vertex_count() as VertexId;
        for v in 0..n {
            for t in 0..n {
                let truth = d[v as usize][t as usize];
                assert!(inst.alt_h(v, t) <= truth + 1e-9);
                assert!(inst.alp_h(v, t) <= truth + 1e-9);
            }
        }
        let alt = |v, t| inst.alt_h(v, t);
        assert!(check_admissible(g, &alt).is_empty());
        for t in 0..n {
            assert!(check_consistency(g, &alt, t).is_empty());
        }
    }
}

#[test]
fn star_graph_extra_landmark_tightens_alt() {
    // exhaustive over star graphs with 4..=10 vertices: centre 0, leaves 1..n
    let mut witnesses = 0;
    for n in 4u32..=10 {
        let g = Graph::from_edges(n as usize, (1..n).map(|v| (0, v, 1.0)), true).unwrap();
        let d = floyd_warshall(&g);
        // leaves split into two communities, centre with the first
        let split = n / 2;
        let labels: Vec<u32> = (0..n).map(|v| u32::from(v > split)).collect();
        let p = Partition::from_assignment(labels).unwrap();
        let landmarks = [1, n - 1];
        let alt = build_alt_index(&g, &landmarks).unwrap();
        let alp = build_alp_index(&g, &p, &landmarks, EmbeddingMode::Exact).unwrap();
        for v in 0..n {
            for t in 0..n {
                let (a, b) = (
                    alt_h(&alt, v, t),
                    alp_h(&alp, v, t, HeuristicConfig::default()),
                );
                assert!(a <= d[v as usize][t as usize] && b <= d[v as usize][t as usize]);
                assert!(b <= a, "ALP above ALT at ({v},{t}) on star {n}");
                if a > b {
                    witnesses += 1;
                }
            }
        }
    }
    assert!(witnesses > 0);
}
