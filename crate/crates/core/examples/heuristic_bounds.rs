//! The six quadrilateral bounds behind ALP, and ALT on the same input.

use alp::heuristics::{quad_sides, HeuristicConfig};
use alp::{
    alp_bounds, alp_h, alt_h, build_alp_index, build_alt_index, EmbeddingMode, Graph, Partition,
    QuadSides, Result,
};

fn main() -> Result<()> {
    // path 0-1-2-3-4, communities {0,1,2} and {3,4}, landmarks 0 and 4
    let g = Graph::from_edges(5, (0..4).map(|i| (i, i + 1, 1.0)), true)?;
    let p = Partition::from_assignment(vec![0, 0, 0, 1, 1])?;
    let alp = build_alp_index(&g, &p, &[0, 4], EmbeddingMode::Exact)?;
    let cfg = HeuristicConfig::default();

    let q = quad_sides(&alp, 1, 3).expect("different communities");
    println!("(1, 3): a = {}, b = {}, c = {}", q.a, q.b, q.c);
    for (i, b) in alp_bounds(q, cfg).iter().enumerate() {
        println!("  L{} = {b}", i + 1);
    }
    println!("ALP h(1, 3) = {}", alp_h(&alp, 1, 3, cfg));
    for landmarks in [vec![2], vec![0, 4]] {
        let alt = build_alt_index(&g, &landmarks)?;
        println!(
            "ALT h(1, 3) with landmarks {landmarks:?} = {}",
            alt_h(&alt, 1, 3)
        );
    }

    println!("sweep over a few quadrilaterals (ptolemy on / off):");
    for (a, b, c) in [
        (1.0, 4.0, 1.0),
        (2.0, 3.0, 5.0),
        (0.0, 6.0, 2.5),
        (3.0, 1.0, 1.0),
    ] {
        let q = QuadSides { a, b, c };
        let best = |cfg| alp_bounds(q, cfg).into_iter().fold(0.0f64, f64::max);
        println!(
            "  a={a} b={b} c={c}: {} / {}",
            best(HeuristicConfig::with_ptolemy(true)),
            best(HeuristicConfig::with_ptolemy(false))
        );
    }
    Ok(())
}
