//! Small-scale version of the ALT vs ALP benchmark plus the per-evaluation
//! cost scaling in the landmark count. `alp bench` runs the full size.

use alp::bench::{self, BenchIndices, BucketBy, Buckets, Workload};
use alp::cli::{preprocess, IndexOptions, PartitionOptions};
use alp::heuristics::HeuristicConfig;
use alp::{generate, EmbeddingMode, GenParams, LandmarkMethod, Result};

fn main() -> Result<()> {
    let g = generate(
        &GenParams::Grid {
            rows: 100,
            cols: 100,
        },
        0,
    )?;
    let pre = preprocess(
        g,
        &IndexOptions {
            partition: PartitionOptions::louvain(1),
            landmark_method: LandmarkMethod::Random,
            landmark_seed: 2,
            mode: EmbeddingMode::Exact,
        },
    )?;
    let workload = Workload {
        query_count: 200,
        buckets: Buckets::new(vec![1.0, 41.0, 81.0, 121.0, 161.0, 198.0])?,
        bucket_by: BucketBy::Hops,
        seed: 3,
    };
    let idx = BenchIndices {
        alt: &pre.alt,
        alp: &pre.alp,
        cfg: HeuristicConfig::default(),
    };
    let pairs = bench::sample_pairs(&pre.graph, &workload);
    let runs = bench::run_pairs(&pre.graph, &idx, &pairs)?;
    let rows = bench::aggregate(&runs, &workload.buckets, &idx);
    bench::write_csv(&rows, true, std::io::stdout().lock())?;

    println!("\nns per heuristic evaluation:");
    let counts = [4, 8, 16, 32, 64];
    let points = bench::heuristic_cost_scaling(&pre.graph, &counts, 9, 200_000, 5)?;
    for p in &points {
        println!(
            "  |L| = {:>2}: ALT {:6.2}  ALP {:6.2}",
            p.landmarks, p.alt_ns_per_eval, p.alp_ns_per_eval
        );
    }
    let xs: Vec<f64> = points.iter().map(|p| p.landmarks as f64).collect();
    let alt: Vec<f64> = points.iter().map(|p| p.alt_ns_per_eval).collect();
    let alp: Vec<f64> = points.iter().map(|p| p.alp_ns_per_eval).collect();
    let (s_alt, _, r2) = bench::linear_fit(&xs, &alt);
    let (s_alp, _, _) = bench::linear_fit(&xs, &alp);
    println!("slope ALT {s_alt:.4} ns/landmark (R² {r2:.3}), ALP {s_alp:.4} ns/landmark");
    Ok(())
}
