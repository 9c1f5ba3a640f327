//! Louvain communities and their modularity, next to BFS regions.

use alp::partition::bfs_regions;
use alp::{generate, louvain, modularity, GenParams, Graph, Result};

fn main() -> Result<()> {
    // two triangles joined by one bridge
    let g = Graph::from_edges(
        6,
        [
            (0, 1, 1.0),
            (1, 2, 1.0),
            (0, 2, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (3, 5, 1.0),
            (2, 3, 1.0),
        ],
        true,
    )?;
    let p = louvain(&g, 0, 1e-7)?;
    println!(
        "two triangles: assignment {:?}, Q = {:.6}",
        p.assignment(),
        modularity(&g, &p)?
    );

    let grid = generate(&GenParams::Grid { rows: 40, cols: 40 }, 0)?;
    for seed in 0..3 {
        let p = louvain(&grid, seed, 1e-7)?;
        println!(
            "grid 40x40, seed {seed}: {} communities, Q = {:.4}",
            p.community_count(),
            modularity(&grid, &p)?
        );
    }
    let regions = bfs_regions(&grid, 16, 0)?;
    let sizes: Vec<usize> = regions.communities().iter().map(|c| c.len()).collect();
    println!(
        "16 BFS regions: sizes {sizes:?}, Q = {:.4}",
        modularity(&grid, &regions)?
    );
    Ok(())
}
