//! Parse a DIMACS shortest-path file, inspect it, and write it back out.
//!
//! Run with `cargo run --example dimacs_ingest [FILE.gr]`.

use std::io::BufReader;

use alp::dimacs::{parse_dimacs, parse_dimacs_str, write_dimacs, DimacsOptions};
use alp::{dijkstra_query, Result};

const SAMPLE: &str = "\
c two components
p sp 5 3
a 1 2 4
a 2 3 1
a 4 5 2
";

fn main() -> Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => parse_dimacs(
            BufReader::new(std::fs::File::open(path)?),
            DimacsOptions::default(),
        )?,
        None => parse_dimacs_str(SAMPLE, DimacsOptions::default())?,
    };
    let (_, components) = g.connected_components();
    println!(
        "{} vertices, {} edges, {} components, symmetric: {}",
        g.vertex_count(),
        g.edge_count(),
        components,
        g.is_symmetric()
    );

    let r = dijkstra_query(&g, 0, 2);
    println!("d(1, 3) = {:?} via {:?}", r.distance, r.path);
    if g.vertex_count() >= 4 {
        println!("d(1, 4) = {:?}", dijkstra_query(&g, 0, 3).distance);
    }

    let directed = parse_dimacs_str(SAMPLE, DimacsOptions { symmetrize: false })?;
    println!(
        "keep-directed: d(3, 1) = {:?}",
        dijkstra_query(&directed, 2, 0).distance
    );

    if g.vertex_count() <= 20 {
        let mut out = Vec::new();
        write_dimacs(&g, &mut out)?;
        print!("{}", String::from_utf8_lossy(&out));
    }
    Ok(())
}
