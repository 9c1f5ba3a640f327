//! Command implementations behind the `alp` binary.
//!
//! Each `cmd_*` function takes a fully resolved config and a writer for its
//! human-readable output, so the commands can be driven from tests and
//! examples without spawning a process.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bench::{self, BenchIndices, BenchRow, Workload};
use crate::codec::{self, GRAPH_MAGIC};
use crate::dimacs::{parse_dimacs, write_dimacs, DimacsOptions};
use crate::embedding::{
    build_alp_index, build_alt_index, select_landmarks, AlpIndex, AltIndex, EmbeddingMode,
    IndexStats, LandmarkMethod,
};
use crate::error::{Error, Result};
use crate::generate::{GenParams, GraphSpec, Weights};
use crate::graph::{Graph, VertexId};
use crate::heuristics::{AlpHeuristic, AltHeuristic, HeuristicConfig};
use crate::partition::{bfs_regions, louvain, modularity, Partition, DEFAULT_MIN_GAIN};
use crate::search::{QueryResult, Searcher};
use crate::verify::{
    admissibility_sweep, dominance_search, find_consistency_witness, five_path_witness,
    write_reports, ConsistencySearch, DominanceSearch, SweepSummary, ViolationReport,
    DOMINANCE_WITNESS_LIMIT,
};

pub const GRAPH_FILE: &str = "graph.alpg";
pub const PARTITION_FILE: &str = "partition.txt";
pub const ALT_FILE: &str = "alt.altx";
pub const ALP_FILE: &str = "alp.alpx";
pub const STATS_FILE: &str = "stats.json";

/// Process exit status for a query whose target is unreachable.
pub const EXIT_UNREACHABLE: i32 = 3;

/// Seeds for each stage, derived from one base seed unless overridden.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seeds {
    pub graph: u64,
    pub partition: u64,
    pub landmarks: u64,
    pub workload: u64,
}

impl Seeds {
    pub fn from_base(seed: u64) -> Self {
        Seeds {
            graph: seed,
            partition: seed.wrapping_add(1),
            landmarks: seed.wrapping_add(2),
            workload: seed.wrapping_add(3),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    /// DIMACS `.gr` text or the binary graph format, told apart by magic.
    File(PathBuf),
    Generated(GraphSpec),
}

impl GraphSource {
    /// An existing path wins; otherwise `text` must be a generator spec
    /// such as `grid:10x10`.
    pub fn parse(text: &str, weights: Weights, seed: u64) -> Result<Self> {
        if Path::new(text).exists() {
            return Ok(GraphSource::File(text.into()));
        }
        match text.parse::<GenParams>() {
            Ok(params) => Ok(GraphSource::Generated(GraphSpec {
                params,
                weights,
                seed,
            })),
            Err(e) => Err(Error::domain(format!(
                "`{text}` is neither an existing file nor a generator spec ({e})"
            ))),
        }
    }

    pub fn load(&self, keep_directed: bool) -> Result<Graph> {
        match self {
            GraphSource::Generated(spec) => spec.build(),
            GraphSource::File(path) => {
                let mut file = codec::open(path)?;
                let mut head = Vec::with_capacity(4);
                (&mut file).take(4).read_to_end(&mut head)?;
                let rest = head.as_slice().chain(file);
                if head == GRAPH_MAGIC {
                    codec::read_graph(rest)
                } else {
                    parse_dimacs(
                        std::io::BufReader::new(rest),
                        DimacsOptions {
                            symmetrize: !keep_directed,
                        },
                    )
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionOptions {
    /// BFS regions instead of Louvain.
    pub regions: Option<usize>,
    /// Run Louvain on the unit-weighted graph.
    pub unweighted: bool,
    pub seed: u64,
    pub min_gain: f64,
}

impl PartitionOptions {
    pub fn louvain(seed: u64) -> Self {
        PartitionOptions {
            regions: None,
            unweighted: false,
            seed,
            min_gain: DEFAULT_MIN_GAIN,
        }
    }

    pub fn build(&self, g: &Graph) -> Result<Partition> {
        match self.regions {
            Some(k) => bfs_regions(g, k, self.seed),
            None if self.unweighted => louvain(&g.unit_weighted(), self.seed, self.min_gain),
            None => louvain(g, self.seed, self.min_gain),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexOptions {
    pub partition: PartitionOptions,
    pub landmark_method: LandmarkMethod,
    pub landmark_seed: u64,
    pub mode: EmbeddingMode,
}

/// Everything preprocessing produces, in memory.
#[derive(Clone, Debug)]
pub struct Preprocessed {
    pub graph: Graph,
    pub partition: Partition,
    pub landmarks: Vec<VertexId>,
    pub alt: AltIndex,
    pub alp: AlpIndex,
    pub stats: PreprocessStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreprocessStats {
    /// Hex graph fingerprint shared by both index files.
    pub fingerprint: String,
    pub edges: usize,
    pub communities: usize,
    pub modularity: Option<f64>,
    pub mode: EmbeddingMode,
    pub index: IndexStats,
}

/// Partition, one landmark per community, then both indices over that
/// landmark set.
pub fn preprocess(graph: Graph, opts: &IndexOptions) -> Result<Preprocessed> {
    let partition = opts.partition.build(&graph)?;
    let landmarks = select_landmarks(&graph, &partition, opts.landmark_method, opts.landmark_seed)?;
    let alt = build_alt_index(&graph, &landmarks)?;
    let alp = build_alp_index(&graph, &partition, &landmarks, opts.mode)?;
    let stats = PreprocessStats {
        fingerprint: format!("{:016x}", codec::fingerprint(&graph)),
        edges: graph.edge_count(),
        communities: partition.community_count(),
        modularity: modularity(&graph, &partition).ok(),
        mode: opts.mode,
        index: IndexStats::of(&alt, &alp),
    };
    Ok(Preprocessed {
        graph,
        partition,
        landmarks,
        alt,
        alp,
        stats,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreprocessConfig {
    pub source: GraphSource,
    pub keep_directed: bool,
    pub index: IndexOptions,
    pub out_dir: PathBuf,
}

/// Writes the graph, partition, both indices and `stats.json` into
/// `out_dir`.
pub fn cmd_preprocess(cfg: &PreprocessConfig, out: &mut dyn Write) -> Result<Preprocessed> {
    let graph = cfg.source.load(cfg.keep_directed)?;
    let pre = preprocess(graph, &cfg.index)?;
    fs::create_dir_all(&cfg.out_dir)?;
    let fp = codec::fingerprint(&pre.graph);
    let dir = &cfg.out_dir;
    let mut w = codec::create(&dir.join(GRAPH_FILE))?;
    codec::write_graph(&pre.graph, &mut w)?;
    w.flush()?;
    let mut w = codec::create(&dir.join(PARTITION_FILE))?;
    pre.partition.write_text(&mut w)?;
    w.flush()?;
    let mut w = codec::create(&dir.join(ALT_FILE))?;
    codec::write_alt_index(&pre.alt, fp, &mut w)?;
    w.flush()?;
    let mut w = codec::create(&dir.join(ALP_FILE))?;
    codec::write_alp_index(&pre.alp, fp, &mut w)?;
    w.flush()?;
    let mut json = serde_json::to_string_pretty(&pre.stats)?;
    json.push('\n');
    fs::write(dir.join(STATS_FILE), json)?;

    let s = &pre.stats.index;
    writeln!(out, "vertices: {}", s.vertices)?;
    writeln!(out, "edges: {}", pre.stats.edges)?;
    writeln!(out, "communities: {}", pre.stats.communities)?;
    writeln!(out, "alt: {} entries, {} bytes", s.alt_entries, s.alt_bytes)?;
    writeln!(out, "alp: {} entries, {} bytes", s.alp_entries, s.alp_bytes)?;
    if s.alp_unreachable_labels > 0 {
        writeln!(
            out,
            "warning: {} vertices cannot reach their landmark inside their community",
            s.alp_unreachable_labels
        )?;
    }
    writeln!(out, "wrote {}", dir.display())?;
    Ok(pre)
}

/// Graph and indices loaded back from a preprocess directory.
pub struct LoadedIndices {
    pub graph: Graph,
    pub alt: AltIndex,
    pub alp: AlpIndex,
}

/// Loads a preprocess directory, refusing indices built for another graph.
/// `graph` overrides the directory's own graph file.
pub fn load_indices(
    dir: &Path,
    graph: Option<&GraphSource>,
    keep_directed: bool,
) -> Result<LoadedIndices> {
    let graph = match graph {
        Some(src) => src.load(keep_directed)?,
        None => codec::read_graph(codec::open(&dir.join(GRAPH_FILE))?)?,
    };
    let fp = codec::fingerprint(&graph);
    let (alt, alt_fp) = codec::read_alt_index(codec::open(&dir.join(ALT_FILE))?)?;
    let (alp, alp_fp) = codec::read_alp_index(codec::open(&dir.join(ALP_FILE))?)?;
    for found in [alt_fp, alp_fp] {
        if found != fp {
            return Err(Error::FingerprintMismatch {
                expected: found,
                found: fp,
            });
        }
    }
    Ok(LoadedIndices { graph, alt, alp })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryConfig {
    pub index_dir: PathBuf,
    pub graph: Option<GraphSource>,
    pub keep_directed: bool,
    pub engine: bench::Engine,
    pub ptolemy: bool,
    pub source: VertexId,
    pub target: VertexId,
    pub timing: bool,
}

pub fn cmd_query(cfg: &QueryConfig, out: &mut dyn Write) -> Result<QueryResult> {
    let loaded = load_indices(&cfg.index_dir, cfg.graph.as_ref(), cfg.keep_directed)?;
    let g = &loaded.graph;
    let n = g.vertex_count();
    for v in [cfg.source, cfg.target] {
        if v as usize >= n {
            return Err(Error::domain(format!(
                "vertex {v} out of range for {n} vertices"
            )));
        }
    }
    let mut searcher = Searcher::new(g);
    let result = match cfg.engine {
        bench::Engine::Dijkstra => searcher.dijkstra(cfg.source, cfg.target),
        bench::Engine::Alt => searcher.astar(&AltHeuristic(&loaded.alt), cfg.source, cfg.target),
        bench::Engine::Alp => {
            let h = AlpHeuristic {
                index: &loaded.alp,
                cfg: HeuristicConfig::with_ptolemy(cfg.ptolemy),
            };
            searcher.astar(&h, cfg.source, cfg.target)
        }
    };
    render_query(&result, cfg.engine, cfg.timing, out)?;
    Ok(result)
}

fn render_query(
    r: &QueryResult,
    engine: bench::Engine,
    timing: bool,
    out: &mut dyn Write,
) -> Result<()> {
    writeln!(out, "engine: {engine}")?;
    match r.distance {
        Some(d) => {
            writeln!(out, "distance: {d}")?;
            let path: Vec<String> = r.path.iter().map(|v| v.to_string()).collect();
            writeln!(out, "path: {}", path.join(" "))?;
        }
        None => writeln!(out, "distance: unreachable")?,
    }
    writeln!(out, "expanded: {}", r.stats.expanded)?;
    writeln!(out, "reopened: {}", r.stats.reopened)?;
    writeln!(out, "heap_pushes: {}", r.stats.heap_pushes)?;
    writeln!(out, "heuristic_evals: {}", r.stats.heuristic_evals)?;
    if timing {
        writeln!(out, "time_us: {:.3}", r.stats.wall_time.as_secs_f64() * 1e6)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub source: GraphSource,
    pub keep_directed: bool,
    /// Use a preprocess directory instead of building indices.
    pub index_dir: Option<PathBuf>,
    pub index: IndexOptions,
    pub ptolemy: bool,
    pub workload: Workload,
    pub csv: PathBuf,
    pub plot: Option<PathBuf>,
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub queries: usize,
    pub stats: IndexStats,
}

pub fn cmd_bench(cfg: &BenchConfig, out: &mut dyn Write) -> Result<BenchOutcome> {
    if cfg.workload.query_count == 0 {
        return Err(Error::domain("query count must be at least 1"));
    }
    let (graph, alt, alp) = match &cfg.index_dir {
        Some(dir) => {
            let l = load_indices(dir, None, cfg.keep_directed)?;
            (l.graph, l.alt, l.alp)
        }
        None => {
            let pre = preprocess(cfg.source.load(cfg.keep_directed)?, &cfg.index)?;
            (pre.graph, pre.alt, pre.alp)
        }
    };
    let idx = BenchIndices {
        alt: &alt,
        alp: &alp,
        cfg: HeuristicConfig::with_ptolemy(cfg.ptolemy),
    };
    let pairs = bench::sample_pairs(&graph, &cfg.workload);
    let runs = bench::run_pairs(&graph, &idx, &pairs)?;
    let rows = bench::aggregate(&runs, &cfg.workload.buckets, &idx);

    let mut w = codec::create(&cfg.csv)?;
    bench::write_csv(&rows, cfg.timing, &mut w)?;
    w.flush()?;
    if let Some(plot) = &cfg.plot {
        let csv_name = file_name(&cfg.csv);
        let png = Path::new(&csv_name).with_extension("png");
        let x_label = match cfg.workload.bucket_by {
            bench::BucketBy::Hops => "shortest path length (hops)",
            bench::BucketBy::Distance => "shortest path distance",
        };
        fs::write(
            plot,
            bench::plot_script(&csv_name, &png.to_string_lossy(), x_label),
        )?;
    }

    let stats = IndexStats::of(&alt, &alp);
    writeln!(out, "vertices: {}", graph.vertex_count())?;
    writeln!(out, "landmarks: {}", stats.landmarks)?;
    writeln!(
        out,
        "queries: {} of {} requested",
        pairs.len(),
        cfg.workload.query_count
    )?;
    for engine in bench::Engine::ALL {
        let mine: Vec<&BenchRow> = rows
            .iter()
            .filter(|r| r.engine == engine && r.n > 0)
            .collect();
        let n: usize = mine.iter().map(|r| r.n).sum();
        let expanded: f64 = mine
            .iter()
            .map(|r| r.mean_expanded.unwrap_or(0.0) * r.n as f64)
            .sum();
        let mean = if n > 0 { expanded / n as f64 } else { 0.0 };
        writeln!(out, "{engine}: mean expanded {mean:.1}")?;
    }
    writeln!(out, "wrote {}", cfg.csv.display())?;
    Ok(BenchOutcome {
        rows,
        queries: pairs.len(),
        stats,
    })
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub graphs: u64,
    pub seed: u64,
    pub sizes: (usize, usize),
    pub mode: EmbeddingMode,
    pub consistency_trials: u64,
    pub dominance_trials: u64,
    pub report: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn new(seed: u64, mode: EmbeddingMode) -> Self {
        VerifyConfig {
            graphs: 200,
            seed,
            sizes: (10, 200),
            mode,
            consistency_trials: 10_000,
            dominance_trials: 10_000,
            report: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub mode: EmbeddingMode,
    pub sweep: SweepSummary,
    pub consistency: ConsistencySearch,
    pub dominance: DominanceSearch,
    pub five_path: ViolationReport,
}

impl VerifyOutcome {
    /// Violations that remain after the Ptolemy audit.
    pub fn admissibility_violations(&self) -> u64 {
        let t = self.sweep.total();
        t.alt_violations + t.alp_violations_ptolemy_off + t.alp_violations_audited
    }

    /// Admissibility failures only count against exact mode.
    pub fn failed(&self) -> bool {
        self.mode == EmbeddingMode::Exact && self.admissibility_violations() > 0
    }

    pub fn reports(&self) -> Vec<ViolationReport> {
        let mut all = self.sweep.reports.clone();
        all.extend(self.consistency.witness.iter().cloned());
        all.extend(self.dominance.alt_over_alp.iter().cloned());
        all.extend(self.dominance.alp_over_alt.iter().cloned());
        all.push(self.five_path.clone());
        all
    }
}

pub fn cmd_verify(cfg: &VerifyConfig, out: &mut dyn Write) -> Result<VerifyOutcome> {
    let sweep = admissibility_sweep(cfg.graphs, cfg.seed, cfg.sizes, cfg.mode)?;
    let consistency = find_consistency_witness(cfg.consistency_trials, cfg.seed)?;
    let dominance = dominance_search(cfg.dominance_trials, cfg.seed, DOMINANCE_WITNESS_LIMIT)?;
    let outcome = VerifyOutcome {
        mode: cfg.mode,
        sweep,
        consistency,
        dominance,
        five_path: five_path_witness()?,
    };

    let total = outcome.sweep.total();
    writeln!(out, "mode: {}", mode_name(cfg.mode))?;
    writeln!(out, "graphs: {}, pairs: {}", total.graphs, total.pairs)?;
    writeln!(
        out,
        "admissibility: {} violations",
        outcome.admissibility_violations()
    )?;
    writeln!(out, "  alt: {}", total.alt_violations)?;
    writeln!(
        out,
        "  alp, ptolemy off: {}",
        total.alp_violations_ptolemy_off
    )?;
    writeln!(
        out,
        "  alp, ptolemy on: {} ({} graphs fell back to ptolemy off)",
        total.alp_violations_ptolemy_on, total.ptolemy_excluded
    )?;
    for (family, t) in &outcome.sweep.families {
        writeln!(
            out,
            "  {family}: {} graphs, alt {}, alp {} (rate {:.6}), ptolemy on {}",
            t.graphs,
            t.alt_violations,
            t.alp_violations_ptolemy_off,
            t.alp_violation_rate(),
            t.alp_violations_ptolemy_on
        )?;
    }
    match &outcome.consistency.witness {
        Some(w) => writeln!(
            out,
            "consistency: witness found after {} trials: {}",
            outcome.consistency.trials_run,
            serde_json::to_string(w)?
        )?,
        None => writeln!(
            out,
            "consistency: inconclusive, no witness in {} trials",
            outcome.consistency.trials_run
        )?,
    }
    writeln!(
        out,
        "dominance: alt over alp {} witnesses, alp over alt {} witnesses, {} trials",
        outcome.dominance.alt_over_alp.len(),
        outcome.dominance.alp_over_alt.len(),
        outcome.dominance.trials_run
    )?;
    writeln!(
        out,
        "five-path: alp {} vs alt {}",
        outcome.five_path.lhs, outcome.five_path.rhs
    )?;
    if let Some(path) = &cfg.report {
        let mut w = codec::create(path)?;
        write_reports(&outcome.reports(), &mut w)?;
        w.flush()?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(outcome)
}

fn mode_name(mode: EmbeddingMode) -> &'static str {
    match mode {
        EmbeddingMode::Exact => "exact",
        EmbeddingMode::Induced => "induced",
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerateConfig {
    pub spec: GraphSpec,
    /// `.gr` writes DIMACS, anything else the binary format.
    pub out: PathBuf,
}

pub fn cmd_generate(cfg: &GenerateConfig, out: &mut dyn Write) -> Result<Graph> {
    let g = cfg.spec.build()?;
    let mut w = codec::create(&cfg.out)?;
    if cfg.out.extension().is_some_and(|e| e == "gr") {
        write_dimacs(&g, &mut w)?;
    } else {
        codec::write_graph(&g, &mut w)?;
    }
    w.flush()?;
    writeln!(
        out,
        "{}: {} vertices, {} edges, wrote {}",
        cfg.spec.params,
        g.vertex_count(),
        g.edge_count(),
        cfg.out.display()
    )?;
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub arcs: usize,
    pub edges: usize,
    pub symmetric: bool,
    pub components: usize,
    pub max_weight: f64,
    pub integer_weights: bool,
    pub fingerprint: String,
}

impl GraphStats {
    pub fn of(g: &Graph) -> Self {
        GraphStats {
            vertices: g.vertex_count(),
            arcs: g.arc_count(),
            edges: g.edge_count(),
            symmetric: g.is_symmetric(),
            components: g.connected_components().1,
            max_weight: g.max_weight(),
            integer_weights: g.has_integer_weights(),
            fingerprint: format!("{:016x}", codec::fingerprint(g)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub graph: GraphStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<IndexStats>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsConfig {
    pub graph: Option<GraphSource>,
    pub keep_directed: bool,
    pub index_dir: Option<PathBuf>,
}

/// Prints graph statistics, plus index accounting when a preprocess
/// directory is given.
pub fn cmd_stats(cfg: &StatsConfig, out: &mut dyn Write) -> Result<StatsReport> {
    let report = match (&cfg.index_dir, &cfg.graph) {
        (Some(dir), graph) => {
            let l = load_indices(dir, graph.as_ref(), cfg.keep_directed)?;
            StatsReport {
                graph: GraphStats::of(&l.graph),
                index: Some(IndexStats::of(&l.alt, &l.alp)),
            }
        }
        (None, Some(src)) => StatsReport {
            graph: GraphStats::of(&src.load(cfg.keep_directed)?),
            index: None,
        },
        (None, None) => return Err(Error::domain("stats needs a graph or an index directory")),
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(seed: u64) -> IndexOptions {
        IndexOptions {
            partition: PartitionOptions::louvain(seed),
            landmark_method: LandmarkMethod::Random,
            landmark_seed: seed,
            mode: EmbeddingMode::Exact,
        }
    }

    #[test]
    fn source_parsing() {
        let s = GraphSource::parse("grid:3x4", Weights::Unit, 9).unwrap();
        assert_eq!(
            s,
            GraphSource::Generated(GraphSpec::new(GenParams::Grid { rows: 3, cols: 4 }, 9))
        );
        assert!(GraphSource::parse("/no/such/file.gr", Weights::Unit, 0).is_err());
    }

    #[test]
    fn preprocess_query_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = PreprocessConfig {
            source: GraphSource::parse("grid:10x10", Weights::Unit, 1).unwrap(),
            keep_directed: false,
            index: opts(1),
            out_dir: dir.path().to_path_buf(),
        };
        let pre = cmd_preprocess(&cfg, &mut Vec::new()).unwrap();
        let l = pre.stats.index.landmarks;
        assert_eq!(pre.stats.index.alt_entries, l * 100);
        assert_eq!(pre.stats.index.alp_entries, 100 + l * l);

        let mut q = QueryConfig {
            index_dir: dir.path().to_path_buf(),
            graph: None,
            keep_directed: false,
            engine: bench::Engine::Alp,
            ptolemy: true,
            source: 0,
            target: 99,
            timing: false,
        };
        let mut text = Vec::new();
        assert_eq!(cmd_query(&q, &mut text).unwrap().distance, Some(18.0));
        assert!(String::from_utf8(text).unwrap().contains("distance: 18\n"));
        q.engine = bench::Engine::Alt;
        assert_eq!(cmd_query(&q, &mut Vec::new()).unwrap().distance, Some(18.0));
        q.target = 0;
        let r = cmd_query(&q, &mut Vec::new()).unwrap();
        assert_eq!((r.distance, r.path), (Some(0.0), vec![0]));
    }

    #[test]
    fn query_refuses_foreign_graph() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = PreprocessConfig {
            source: GraphSource::parse("grid:6x6", Weights::Unit, 1).unwrap(),
            keep_directed: false,
            index: opts(1),
            out_dir: dir.path().to_path_buf(),
        };
        cmd_preprocess(&cfg, &mut Vec::new()).unwrap();
        let q = QueryConfig {
            index_dir: dir.path().to_path_buf(),
            graph: Some(
                GraphSource::parse("grid:6x6", Weights::UniformInt { lo: 1, hi: 5 }, 1).unwrap(),
            ),
            keep_directed: false,
            engine: bench::Engine::Alt,
            ptolemy: true,
            source: 0,
            target: 1,
            timing: false,
        };
        assert!(matches!(
            cmd_query(&q, &mut Vec::new()),
            Err(Error::FingerprintMismatch { .. })
        ));
    }

    #[test]
    fn dimacs_file_source_and_unreachable_query() {
        let dir = tempfile::tempdir().unwrap();
        let gr = dir.path().join("two.gr");
        fs::write(&gr, "p sp 4 2\na 1 2 3\na 3 4 1\n").unwrap();
        let src = GraphSource::parse(gr.to_str().unwrap(), Weights::Unit, 0).unwrap();
        let g = src.load(false).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 2));
        let out_dir = dir.path().join("idx");
        let cfg = PreprocessConfig {
            source: src,
            keep_directed: false,
            index: opts(0),
            out_dir: out_dir.clone(),
        };
        cmd_preprocess(&cfg, &mut Vec::new()).unwrap();
        let q = QueryConfig {
            index_dir: out_dir,
            graph: None,
            keep_directed: false,
            engine: bench::Engine::Alp,
            ptolemy: true,
            source: 0,
            target: 3,
            timing: false,
        };
        let mut text = Vec::new();
        assert_eq!(cmd_query(&q, &mut text).unwrap().distance, None);
        assert!(String::from_utf8(text).unwrap().contains("unreachable"));
    }

    #[test]
    fn generate_writes_loadable_files() {
        let dir = tempfile::tempdir().unwrap();
        for name in ["g.gr", "g.alpg"] {
            let path = dir.path().join(name);
            let spec = GraphSpec {
                params: GenParams::BarabasiAlbert { n: 30, m: 2 },
                weights: Weights::UniformInt { lo: 1, hi: 9 },
                seed: 5,
            };
            let g = cmd_generate(
                &GenerateConfig {
                    spec,
                    out: path.clone(),
                },
                &mut Vec::new(),
            )
            .unwrap();
            assert_eq!(GraphSource::File(path).load(false).unwrap(), g);
        }
    }
}
