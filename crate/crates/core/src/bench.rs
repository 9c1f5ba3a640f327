//! ALT vs ALP query benchmark over path-length buckets.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::{
    build_alp_index, build_alt_index, select_landmarks, AlpIndex, AltIndex, EmbeddingMode,
    LandmarkMethod,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::heuristics::{alp_h, alt_h, AlpHeuristic, AltHeuristic, HeuristicConfig};
use crate::partition::bfs_regions;
use crate::search::{QueryResult, Searcher};

pub const CSV_HEADER: &str =
    "engine,bucket_lo,bucket_hi,n,mean_us,median_us,mean_expanded,mean_reopened,index_entries,index_bytes";

/// Hop-length bucket edges 1, 51, ..., 501.
pub fn default_bucket_edges() -> Vec<f64> {
    (0..=10).map(|i| 1.0 + 50.0 * i as f64).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BucketBy {
    /// Edge count of the shortest path.
    #[default]
    Hops,
    /// Weighted shortest-path distance.
    Distance,
}

/// Buckets are `[e_i, e_{i+1})`, except the last which includes its upper
/// edge.
#[derive(Clone, Debug, PartialEq)]
pub struct Buckets {
    edges: Vec<f64>,
}

impl Buckets {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::domain("need at least two bucket edges"));
        }
        if edges
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
        {
            return Err(Error::domain("bucket edges must be strictly increasing"));
        }
        Ok(Buckets { edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bounds(&self, b: usize) -> (f64, f64) {
        (self.edges[b], self.edges[b + 1])
    }

    pub fn contains(&self, b: usize, x: f64) -> bool {
        let (lo, hi) = self.bounds(b);
        x >= lo && (x < hi || (b + 1 == self.len() && x == hi))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Workload {
    pub query_count: usize,
    pub buckets: Buckets,
    pub bucket_by: BucketBy,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchPair {
    pub s: VertexId,
    pub t: VertexId,
    pub bucket: usize,
    pub length: f64,
}

/// Source draws per query before the query is dropped.
const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, PartialEq)]
struct RingItem(f64, VertexId);

impl Eq for RingItem {}

impl Ord for RingItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for RingItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bounded Dijkstra around a source collecting vertices whose path length
/// falls in one bucket.
struct RingSampler<'g> {
    graph: &'g Graph,
    dist: Vec<f64>,
    hops: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<RingItem>,
    max_weight: f64,
}

impl<'g> RingSampler<'g> {
    fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        RingSampler {
            graph,
            dist: vec![f64::INFINITY; n],
            hops: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            heap: BinaryHeap::new(),
            max_weight: graph.max_weight(),
        }
    }

    fn collect(
        &mut self,
        s: VertexId,
        buckets: &Buckets,
        b: usize,
        by: BucketBy,
        out: &mut Vec<(VertexId, f64)>,
    ) {
        out.clear();
        self.epoch += 1;
        self.heap.clear();
        let (_, hi) = buckets.bounds(b);
        // a vertex farther than hi·max_w needs more than hi hops
        let limit = match by {
            BucketBy::Hops => hi * self.max_weight,
            BucketBy::Distance => hi,
        };
        let epoch = self.epoch;
        self.stamp[s as usize] = epoch;
        self.dist[s as usize] = 0.0;
        self.hops[s as usize] = 0;
        self.heap.push(RingItem(0.0, s));
        while let Some(RingItem(d, u)) = self.heap.pop() {
            if d > self.dist[u as usize] {
                continue;
            }
            if d > limit {
                break;
            }
            let length = match by {
                BucketBy::Hops => self.hops[u as usize] as f64,
                BucketBy::Distance => d,
            };
            if u != s && buckets.contains(b, length) {
                out.push((u, length));
            }
            for (v, w) in self.graph.neighbors(u) {
                let nd = d + w;
                let i = v as usize;
                if self.stamp[i] != epoch || nd < self.dist[i] {
                    self.stamp[i] = epoch;
                    self.dist[i] = nd;
                    self.hops[i] = self.hops[u as usize] + 1;
                    self.heap.push(RingItem(nd, v));
                }
            }
        }
    }
}

/// Seeded `(s, t)` pairs; query `i` targets bucket `i mod B`. Sources are
/// uniform, targets uniform among the vertices of the bucket's ring.
pub fn sample_pairs(g: &Graph, workload: &Workload) -> Vec<BenchPair> {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(workload.seed);
    let mut sampler = RingSampler::new(g);
    let mut ring = Vec::new();
    let mut pairs = Vec::with_capacity(workload.query_count);
    if n == 0 {
        return pairs;
    }
    for i in 0..workload.query_count {
        let bucket = i % workload.buckets.len();
        for _ in 0..MAX_ATTEMPTS {
            let s = rng.gen_range(0..n) as VertexId;
            sampler.collect(s, &workload.buckets, bucket, workload.bucket_by, &mut ring);
            if !ring.is_empty() {
                let (t, length) = ring[rng.gen_range(0..ring.len())];
                pairs.push(BenchPair {
                    s,
                    t,
                    bucket,
                    length,
                });
                break;
            }
        }
    }
    pairs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Dijkstra,
    Alt,
    Alp,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Dijkstra, Engine::Alt, Engine::Alp];
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Dijkstra => "dijkstra",
            Engine::Alt => "alt",
            Engine::Alp => "alp",
        })
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dijkstra" => Ok(Engine::Dijkstra),
            "alt" => Ok(Engine::Alt),
            "alp" => Ok(Engine::Alp),
            _ => Err(Error::domain(format!("unknown engine `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub engine: Engine,
    pub bucket_lo: f64,
    pub bucket_hi: f64,
    pub n: usize,
    pub mean_us: Option<f64>,
    pub median_us: Option<f64>,
    pub mean_expanded: Option<f64>,
    pub mean_reopened: Option<f64>,
    pub index_entries: usize,
    pub index_bytes: usize,
}

/// Per-pair measurements from every engine.
#[derive(Clone, Debug)]
pub struct PairRun {
    pub pair: BenchPair,
    pub results: [QueryResult; 3],
}

pub struct BenchIndices<'a> {
    pub alt: &'a AltIndex,
    pub alp: &'a AlpIndex,
    pub cfg: HeuristicConfig,
}

fn same_distance(a: Option<f64>, b: Option<f64>, exact: bool) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) if exact => x == y,
        (Some(x), Some(y)) => (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0),
        _ => false,
    }
}

/// Runs all three engines on every pair, failing if they disagree.
pub fn run_pairs(g: &Graph, idx: &BenchIndices<'_>, pairs: &[BenchPair]) -> Result<Vec<PairRun>> {
    let exact = g.has_integer_weights();
    let mut searcher = Searcher::new(g);
    let alt = AltHeuristic(idx.alt);
    let alp = AlpHeuristic {
        index: idx.alp,
        cfg: idx.cfg,
    };
    let mut runs = Vec::with_capacity(pairs.len());
    for &pair in pairs {
        let d = searcher.dijkstra(pair.s, pair.t);
        let a = searcher.astar(&alt, pair.s, pair.t);
        let p = searcher.astar(&alp, pair.s, pair.t);
        for other in [&a, &p] {
            if !same_distance(d.distance, other.distance, exact) {
                return Err(Error::EngineDisagreement {
                    source_vertex: pair.s,
                    target: pair.t,
                    first: d.distance.unwrap_or(f64::INFINITY),
                    second: other.distance.unwrap_or(f64::INFINITY),
                });
            }
        }
        runs.push(PairRun {
            pair,
            results: [d, a, p],
        });
    }
    Ok(runs)
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    })
}

/// One row per (engine, bucket), engines in [`Engine::ALL`] order.
pub fn aggregate(runs: &[PairRun], buckets: &Buckets, idx: &BenchIndices<'_>) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for (e, engine) in Engine::ALL.into_iter().enumerate() {
        let (index_entries, index_bytes) = match engine {
            Engine::Dijkstra => (0, 0),
            Engine::Alt => (idx.alt.entry_count(), idx.alt.payload_bytes()),
            Engine::Alp => (idx.alp.entry_count(), idx.alp.payload_bytes()),
        };
        for b in 0..buckets.len() {
            let in_bucket: Vec<&QueryResult> = runs
                .iter()
                .filter(|r| r.pair.bucket == b)
                .map(|r| &r.results[e])
                .collect();
            let micros: Vec<f64> = in_bucket
                .iter()
                .map(|r| r.stats.wall_time.as_secs_f64() * 1e6)
                .collect();
            let expanded: Vec<f64> = in_bucket.iter().map(|r| r.stats.expanded as f64).collect();
            let reopened: Vec<f64> = in_bucket.iter().map(|r| r.stats.reopened as f64).collect();
            let (lo, hi) = buckets.bounds(b);
            rows.push(BenchRow {
                engine,
                bucket_lo: lo,
                bucket_hi: hi,
                n: in_bucket.len(),
                mean_us: mean(&micros),
                median_us: median(&micros),
                mean_expanded: mean(&expanded),
                mean_reopened: mean(&reopened),
                index_entries,
                index_bytes,
            });
        }
    }
    rows
}

/// Writes the CSV. With `timing` off the two time columns are left blank
/// so that the file only depends on the seeds.
pub fn write_csv<W: Write>(rows: &[BenchRow], timing: bool, mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let num = |x: Option<f64>| x.map(|v| format!("{v:.3}")).unwrap_or_default();
    for r in rows {
        let (mean_us, median_us) = if timing {
            (num(r.mean_us), num(r.median_us))
        } else {
            (String::new(), String::new())
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.engine,
            r.bucket_lo,
            r.bucket_hi,
            r.n,
            mean_us,
            median_us,
            num(r.mean_expanded),
            num(r.mean_reopened),
            r.index_entries,
            r.index_bytes
        )?;
    }
    Ok(())
}

/// Gnuplot script: mean query time per bucket, one series per engine.
pub fn plot_script(csv_file: &str, image_file: &str, x_label: &str) -> String {
    let series = |engine: &str, color: &str, title: &str| {
        format!(
            "'{csv_file}' every ::1 using (($2+$3)/2):(strcol(1) eq '{engine}' && strlen(strcol(5)) > 0 ? $5 : 1/0) \
             with linespoints lc rgb '{color}' title '{title}'"
        )
    };
    format!(
        "set datafile separator ','\n\
         set terminal pngcairo size 900,600\n\
         set output '{image_file}'\n\
         set xlabel '{x_label}'\n\
         set ylabel 'mean query time (us)'\n\
         set key top left\n\
         set grid\n\
         plot {}, \\\n     {}, \\\n     {}\n",
        series("alt", "blue", "ALT"),
        series("alp", "red", "ALP"),
        series("dijkstra", "gray", "Dijkstra"),
    )
}

/// Per-evaluation heuristic cost at one landmark count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub landmarks: usize,
    pub alt_ns_per_eval: f64,
    pub alp_ns_per_eval: f64,
}

/// Times raw heuristic evaluations over a fixed set of `(v, t)` pairs for
/// each landmark count, using `k` BFS regions with one random landmark
/// each. Reported cost is the best of `repeats` passes divided by the
/// number of evaluations.
pub fn heuristic_cost_scaling(
    g: &Graph,
    landmark_counts: &[usize],
    seed: u64,
    evals: usize,
    repeats: usize,
) -> Result<Vec<ScalingPoint>> {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A* evaluates many vertices against one target; mimic that.
    let targets: Vec<VertexId> = (0..evals.div_ceil(256))
        .map(|_| rng.gen_range(0..n) as VertexId)
        .collect();
    let pairs: Vec<(VertexId, VertexId)> = (0..evals)
        .map(|i| (rng.gen_range(0..n) as VertexId, targets[i / 256]))
        .collect();
    let cfg = HeuristicConfig::default();
    let best_of = |f: &dyn Fn() -> f64| {
        (0..repeats.max(1))
            .map(|_| {
                let start = Instant::now();
                black_box(f());
                start.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min)
    };
    landmark_counts
        .iter()
        .map(|&k| {
            let p = bfs_regions(g, k, seed ^ k as u64)?;
            let landmarks = select_landmarks(g, &p, LandmarkMethod::Random, seed)?;
            let alt = build_alt_index(g, &landmarks)?;
            let alp = build_alp_index(g, &p, &landmarks, EmbeddingMode::Exact)?;
            let alt_secs = best_of(&|| {
                pairs
                    .iter()
                    .map(|&(v, t)| alt_h(black_box(&alt), v, t))
                    .sum()
            });
            let alp_secs = best_of(&|| {
                pairs
                    .iter()
                    .map(|&(v, t)| alp_h(black_box(&alp), v, t, cfg))
                    .sum()
            });
            Ok(ScalingPoint {
                landmarks: k,
                alt_ns_per_eval: alt_secs * 1e9 / evals as f64,
                alp_ns_per_eval: alp_secs * 1e9 / evals as f64,
            })
        })
        .collect()
}

/// Least-squares line `y = slope·x + intercept` with its R².
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, my - slope * mx, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenParams};
    use crate::partition::Partition;

    #[test]
    fn bucket_validation_and_membership() {
        assert!(Buckets::new(vec![1.0]).is_err());
        assert!(Buckets::new(vec![1.0, 1.0]).is_err());
        let b = Buckets::new(vec![1.0, 3.0, 5.0]).unwrap();
        assert!(b.contains(0, 1.0) && b.contains(0, 2.0) && !b.contains(0, 3.0));
        assert!(b.contains(1, 3.0) && b.contains(1, 5.0) && !b.contains(1, 5.5));
    }

    #[test]
    fn sampled_pairs_land_in_their_buckets() {
        let g = generate(&GenParams::Grid { rows: 20, cols: 20 }, 0).unwrap();
        let workload = Workload {
            query_count: 40,
            buckets: Buckets::new(vec![1.0, 5.0, 10.0, 20.0]).unwrap(),
            bucket_by: BucketBy::Hops,
            seed: 4,
        };
        let pairs = sample_pairs(&g, &workload);
        assert_eq!(pairs.len(), 40);
        for p in &pairs {
            let d = crate::search::dijkstra_query(&g, p.s, p.t);
            assert_eq!(d.distance, Some(p.length));
            assert!(workload.buckets.contains(p.bucket, p.length));
        }
        assert_eq!(pairs, sample_pairs(&g, &workload));
    }

    #[test]
    fn unreachable_bucket_drops_queries() {
        let g = generate(&GenParams::Grid { rows: 3, cols: 3 }, 0).unwrap();
        let workload = Workload {
            query_count: 2,
            buckets: Buckets::new(vec![100.0, 200.0]).unwrap(),
            bucket_by: BucketBy::Hops,
            seed: 0,
        };
        assert!(sample_pairs(&g, &workload).is_empty());
    }

    #[test]
    fn single_query_populates_one_row_per_engine() {
        let g = generate(&GenParams::Grid { rows: 12, cols: 12 }, 0).unwrap();
        let p = Partition::from_labels(&(0..144).map(|v| (v % 12 / 6) as u32).collect::<Vec<_>>());
        let landmarks = select_landmarks(&g, &p, LandmarkMethod::Random, 1).unwrap();
        let alt = build_alt_index(&g, &landmarks).unwrap();
        let alp = build_alp_index(&g, &p, &landmarks, EmbeddingMode::Exact).unwrap();
        let idx = BenchIndices {
            alt: &alt,
            alp: &alp,
            cfg: HeuristicConfig::default(),
        };
        let buckets = Buckets::new(vec![1.0, 4.0, 8.0, 30.0]).unwrap();
        let workload = Workload {
            query_count: 1,
            buckets: buckets.clone(),
            bucket_by: BucketBy::Hops,
            seed: 2,
        };
        let runs = run_pairs(&g, &idx, &sample_pairs(&g, &workload)).unwrap();
        let rows = aggregate(&runs, &buckets, &idx);
        assert_eq!(rows.len(), 9);
        for engine in Engine::ALL {
            let populated = rows
                .iter()
                .filter(|r| r.engine == engine && r.n > 0)
                .count();
            assert_eq!(populated, 1);
        }
        let mut csv = Vec::new();
        write_csv(&rows, false, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert!(text.contains("dijkstra,4,8,0,,,,,0,0"));
        assert_eq!(text.lines().count(), 10);
    }

    #[test]
    fn fit_recovers_line() {
        let (s, i, r2) = linear_fit(&[1.0, 2.0, 3.0, 4.0], &[3.0, 5.0, 7.0, 9.0]);
        assert!((s - 2.0).abs() < 1e-12 && (i - 1.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn median_handles_even_and_empty() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[3.0, 1.0]), Some(2.0));
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
    }
}
