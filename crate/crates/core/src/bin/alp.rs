use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use alp::bench::{default_bucket_edges, BucketBy, Buckets, Engine, Workload};
use alp::cli::{
    cmd_bench, cmd_generate, cmd_preprocess, cmd_query, cmd_stats, cmd_verify, BenchConfig,
    GenerateConfig, GraphSource, IndexOptions, PartitionOptions, PreprocessConfig, QueryConfig,
    Seeds, StatsConfig, VerifyConfig, EXIT_UNREACHABLE,
};
use alp::generate::{GraphSpec, Weights};
use alp::partition::DEFAULT_MIN_GAIN;
use alp::{EmbeddingMode, LandmarkMethod, Result};

#[derive(Parser)]
#[command(
    name = "alp",
    version,
    about = "ALT and ALP landmark heuristics for A*"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

impl Switch {
    fn on(self) -> bool {
        matches!(self, Switch::On)
    }
}

#[derive(Args)]
struct Global {
    /// Base seed; per-stage seeds derive from it
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true)]
    graph_seed: Option<u64>,
    #[arg(long, global = true)]
    partition_seed: Option<u64>,
    #[arg(long, global = true)]
    landmark_seed: Option<u64>,
    #[arg(long, global = true)]
    workload_seed: Option<u64>,
    /// How ALP label distances are computed
    #[arg(long, global = true, default_value = "exact")]
    mode: EmbeddingMode,
    #[arg(long, global = true, value_enum, default_value = "on")]
    ptolemy: Switch,
    /// Keep DIMACS arcs one-way instead of symmetrizing
    #[arg(long, global = true)]
    keep_directed: bool,
}

impl Global {
    fn seeds(&self) -> Seeds {
        let base = Seeds::from_base(self.seed);
        Seeds {
            graph: self.graph_seed.unwrap_or(base.graph),
            partition: self.partition_seed.unwrap_or(base.partition),
            landmarks: self.landmark_seed.unwrap_or(base.landmarks),
            workload: self.workload_seed.unwrap_or(base.workload),
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    /// DIMACS .gr file, binary graph file, or generator spec
    /// (grid:RxC, er:N:P, ba:N:M, ws:N:K:P, rgg:N:R)
    #[arg(long, short)]
    graph: String,
    /// Edge weights for generated graphs: unit or int:LO:HI
    #[arg(long, default_value = "unit")]
    weights: Weights,
}

#[derive(Args)]
struct IndexArgs {
    /// Use k BFS regions instead of Louvain
    #[arg(long)]
    partitions: Option<usize>,
    /// Run Louvain on unit weights
    #[arg(long)]
    unweighted_partition: bool,
    #[arg(long, default_value_t = DEFAULT_MIN_GAIN)]
    min_gain: f64,
    #[arg(long, default_value = "random")]
    landmarks: LandmarkMethod,
}

impl IndexArgs {
    fn options(&self, g: &Global) -> IndexOptions {
        let seeds = g.seeds();
        IndexOptions {
            partition: PartitionOptions {
                regions: self.partitions,
                unweighted: self.unweighted_partition,
                seed: seeds.partition,
                min_gain: self.min_gain,
            },
            landmark_method: self.landmarks,
            landmark_seed: seeds.landmarks,
            mode: g.mode,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph (.gr for DIMACS, otherwise binary)
    Generate {
        spec: String,
        #[arg(long, default_value = "unit")]
        weights: Weights,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Partition, pick landmarks and build both indices
    Preprocess {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Answer one query from a preprocess directory
    Query {
        #[arg(long)]
        index: PathBuf,
        /// Graph to search instead of the one stored with the indices
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value = "unit")]
        weights: Weights,
        #[arg(long, default_value = "alp")]
        engine: Engine,
        #[arg(long, value_enum, default_value = "off")]
        timing: Switch,
        source: u32,
        target: u32,
    },
    /// Compare Dijkstra, ALT and ALP over path-length buckets
    Bench {
        #[arg(long, short, default_value = "grid:317x317")]
        graph: String,
        #[arg(long, default_value = "unit")]
        weights: Weights,
        #[command(flatten)]
        index: IndexArgs,
        /// Reuse a preprocess directory
        #[arg(long)]
        index_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        /// Comma-separated bucket edges
        #[arg(long, value_delimiter = ',')]
        buckets: Option<Vec<f64>>,
        /// Bucket by weighted distance instead of hop count
        #[arg(long)]
        by_distance: bool,
        #[arg(long, default_value = "bench.csv")]
        csv: PathBuf,
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Off leaves the time columns blank so output is reproducible
        #[arg(long, value_enum, default_value = "on")]
        timing: Switch,
    },
    /// Oracle sweeps and witness searches for the heuristic properties
    Verify {
        #[arg(long, default_value_t = 200)]
        graphs: u64,
        #[arg(long, default_value_t = 10)]
        min_vertices: usize,
        #[arg(long, default_value_t = 200)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// JSONL violation and witness records
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Graph and index statistics as JSON
    Stats {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value = "unit")]
        weights: Weights,
        #[arg(long)]
        index: Option<PathBuf>,
    },
}

fn source(text: &str, weights: Weights, g: &Global) -> Result<GraphSource> {
    GraphSource::parse(text, weights, g.seeds().graph)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<ExitCode> {
    let g = &cli.global;
    match cli.command {
        Command::Generate {
            spec,
            weights,
            out: path,
        } => {
            let spec = GraphSpec {
                params: spec.parse()?,
                weights,
                seed: g.seeds().graph,
            };
            cmd_generate(&GenerateConfig { spec, out: path }, out)?;
        }
        Command::Preprocess {
            graph,
            index,
            out: dir,
        } => {
            let cfg = PreprocessConfig {
                source: source(&graph.graph, graph.weights, g)?,
                keep_directed: g.keep_directed,
                index: index.options(g),
                out_dir: dir,
            };
            cmd_preprocess(&cfg, out)?;
        }
        Command::Query {
            index,
            graph,
            weights,
            engine,
            timing,
            source: s,
            target: t,
        } => {
            let cfg = QueryConfig {
                index_dir: index,
                graph: graph.map(|text| source(&text, weights, g)).transpose()?,
                keep_directed: g.keep_directed,
                engine,
                ptolemy: g.ptolemy.on(),
                source: s,
                target: t,
                timing: timing.on(),
            };
            if !cmd_query(&cfg, out)?.is_reachable() {
                return Ok(ExitCode::from(EXIT_UNREACHABLE as u8));
            }
        }
        Command::Bench {
            graph,
            weights,
            index,
            index_dir,
            queries,
            buckets,
            by_distance,
            csv,
            plot,
            timing,
        } => {
            let cfg = BenchConfig {
                source: source(&graph, weights, g)?,
                keep_directed: g.keep_directed,
                index_dir,
                index: index.options(g),
                ptolemy: g.ptolemy.on(),
                workload: Workload {
                    query_count: queries,
                    buckets: Buckets::new(buckets.unwrap_or_else(default_bucket_edges))?,
                    bucket_by: if by_distance {
                        BucketBy::Distance
                    } else {
                        BucketBy::Hops
                    },
                    seed: g.seeds().workload,
                },
                csv,
                plot,
                timing: timing.on(),
            };
            cmd_bench(&cfg, out)?;
        }
        Command::Verify {
            graphs,
            min_vertices,
            max_vertices,
            trials,
            report,
        } => {
            let cfg = VerifyConfig {
                graphs,
                seed: g.seed,
                sizes: (min_vertices, max_vertices),
                mode: g.mode,
                consistency_trials: trials,
                dominance_trials: trials,
                report,
            };
            if cmd_verify(&cfg, out)?.failed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Stats {
            graph,
            weights,
            index,
        } => {
            let cfg = StatsConfig {
                graph: graph.map(|text| source(&text, weights, g)).transpose()?,
                keep_directed: g.keep_directed,
                index_dir: index,
            };
            cmd_stats(&cfg, out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
