//! One query answered by Dijkstra, A* with ALT and A* with ALP.

use alp::heuristics::{AlpHeuristic, AltHeuristic, HeuristicConfig};
use alp::{
    build_alp_index, build_alt_index, louvain, select_landmarks, EmbeddingMode, GenParams,
    GraphSpec, LandmarkMethod, Result, Searcher, Weights,
};

fn main() -> Result<()> {
    let spec = GraphSpec {
        params: GenParams::Grid {
            rows: 150,
            cols: 150,
        },
        weights: Weights::UniformInt { lo: 1, hi: 10 },
        seed: 3,
    };
    let g = spec.build()?;
    let p = louvain(&g, 4, 1e-7)?;
    let landmarks = select_landmarks(&g, &p, LandmarkMethod::Random, 5)?;
    let alt = build_alt_index(&g, &landmarks)?;
    let alp = build_alp_index(&g, &p, &landmarks, EmbeddingMode::Exact)?;
    println!(
        "{} vertices, {} landmarks",
        g.vertex_count(),
        landmarks.len()
    );

    let mut searcher = Searcher::new(&g);
    let (s, t) = (151, 22_348);
    let runs = [
        ("dijkstra", searcher.dijkstra(s, t)),
        ("alt", searcher.astar(&AltHeuristic(&alt), s, t)),
        (
            "alp",
            searcher.astar(
                &AlpHeuristic {
                    index: &alp,
                    cfg: HeuristicConfig::default(),
                },
                s,
                t,
            ),
        ),
    ];
    for (name, r) in &runs {
        println!(
            "{name:<9} distance {:?}  hops {:>4}  expanded {:>6}  reopened {:>6}  {:?}",
            r.distance,
            r.hops(),
            r.stats.expanded,
            r.stats.reopened,
            r.stats.wall_time
        );
    }
    Ok(())
}
