//! Seeded synthetic graphs from every generator family.

use alp::generate::{generate_weighted, GenParams, Weights};
use alp::Result;

fn main() -> Result<()> {
    let families = [
        "grid:20x30",
        "er:300:0.02",
        "ba:300:3",
        "ws:300:6:0.1",
        "rgg:300:0.12",
    ];
    for spec in families {
        let params: GenParams = spec.parse()?;
        for weights in [Weights::Unit, Weights::UniformInt { lo: 1, hi: 10 }] {
            let g = generate_weighted(&params, weights, 7)?;
            println!(
                "{:<17} {:<11} |V| = {:>4}  |E| = {:>5}  max w = {:.3}  connected = {}",
                params.family_name(),
                format!("{weights:?}")
                    .split_whitespace()
                    .next()
                    .unwrap_or(""),
                g.vertex_count(),
                g.edge_count(),
                g.max_weight(),
                g.is_connected()
            );
        }
    }
    let a = generate_weighted(&"ba:500:2".parse()?, Weights::Unit, 42)?;
    let b = generate_weighted(&"ba:500:2".parse()?, Weights::Unit, 42)?;
    println!("same seed gives the same graph: {}", a == b);
    Ok(())
}
