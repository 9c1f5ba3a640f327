//! Seeded synthetic graph families.
//!
//! Every generator returns a connected symmetric graph: when a draw is
//! disconnected only its largest component is kept.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GenParams {
    Grid { rows: usize, cols: usize },
    ErdosRenyi { n: usize, p: f64 },
    BarabasiAlbert { n: usize, m: usize },
    WattsStrogatz { n: usize, k: usize, p: f64 },
    RandomGeometric { n: usize, radius: f64 },
}

impl GenParams {
    pub fn family_name(&self) -> &'static str {
        match self {
            GenParams::Grid { .. } => "grid",
            GenParams::ErdosRenyi { .. } => "erdos_renyi",
            GenParams::BarabasiAlbert { .. } => "barabasi_albert",
            GenParams::WattsStrogatz { .. } => "watts_strogatz",
            GenParams::RandomGeometric { .. } => "random_geometric",
        }
    }

    fn validate(&self) -> Result<()> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        let ok = match *self {
            GenParams::Grid { rows, cols } => rows >= 1 && cols >= 1,
            GenParams::ErdosRenyi { n, p } => n >= 1 && prob(p),
            GenParams::BarabasiAlbert { n, m } => m >= 1 && m < n,
            GenParams::WattsStrogatz { n, k, p } => k >= 2 && k < n && prob(p),
            GenParams::RandomGeometric { n, radius } => {
                n >= 1 && radius > 0.0 && radius.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "invalid generator parameters {self}"
            )))
        }
    }
}

impl fmt::Display for GenParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenParams::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            GenParams::ErdosRenyi { n, p } => write!(f, "er:{n}:{p}"),
            GenParams::BarabasiAlbert { n, m } => write!(f, "ba:{n}:{m}"),
            GenParams::WattsStrogatz { n, k, p } => write!(f, "ws:{n}:{k}:{p}"),
            GenParams::RandomGeometric { n, radius } => write!(f, "rgg:{n}:{radius}"),
        }
    }
}

/// Parses `grid:RxC`, `er:N:P`, `ba:N:M`, `ws:N:K:P` or `rgg:N:RADIUS`.
impl FromStr for GenParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("cannot parse generator spec `{s}`"));
        let (family, rest) = s.split_once(':').ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad)
        };
        let real =
            |i: usize| -> Result<f64> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let params = match (family, parts.len()) {
            ("grid", 1) => {
                let (r, c) = rest.split_once('x').ok_or_else(bad)?;
                GenParams::Grid {
                    rows: r.parse().map_err(|_| bad())?,
                    cols: c.parse().map_err(|_| bad())?,
                }
            }
            ("er", 2) => GenParams::ErdosRenyi {
                n: num(0)?,
                p: real(1)?,
            },
            ("ba", 2) => GenParams::BarabasiAlbert {
                n: num(0)?,
                m: num(1)?,
            },
            ("ws", 3) => GenParams::WattsStrogatz {
                n: num(0)?,
                k: num(1)?,
                p: real(2)?,
            },
            ("rgg", 2) => GenParams::RandomGeometric {
                n: num(0)?,
                radius: real(1)?,
            },
            _ => return Err(bad()),
        };
        params.validate()?;
        Ok(params)
    }
}

/// Edge weights for the non-geometric families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weights {
    #[default]
    Unit,
    /// Uniform integers in `[lo, hi]`, drawn per edge after the topology.
    UniformInt { lo: u32, hi: u32 },
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "unit" {
            return Ok(Weights::Unit);
        }
        let bad = || Error::domain(format!("cannot parse weight spec `{s}` (unit | int:LO:HI)"));
        let rest = s.strip_prefix("int:").ok_or_else(bad)?;
        let (lo, hi) = rest.split_once(':').ok_or_else(bad)?;
        let (lo, hi) = (
            lo.parse().map_err(|_| bad())?,
            hi.parse().map_err(|_| bad())?,
        );
        if lo > hi {
            return Err(bad());
        }
        Ok(Weights::UniformInt { lo, hi })
    }
}

/// Full recipe for a generated graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub params: GenParams,
    #[serde(default)]
    pub weights: Weights,
    pub seed: u64,
}

impl GraphSpec {
    pub fn new(params: GenParams, seed: u64) -> Self {
        GraphSpec {
            params,
            weights: Weights::Unit,
            seed,
        }
    }

    pub fn build(&self) -> Result<Graph> {
        generate_weighted(&self.params, self.weights, self.seed)
    }
}

pub fn generate(params: &GenParams, seed: u64) -> Result<Graph> {
    generate_weighted(params, Weights::Unit, seed)
}

pub fn generate_weighted(params: &GenParams, weights: Weights, seed: u64) -> Result<Graph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, mut edges) = match *params {
        GenParams::Grid { rows, cols } => (rows * cols, grid(rows, cols)),
        GenParams::ErdosRenyi { n, p } => (n, erdos_renyi(n, p, &mut rng)),
        GenParams::BarabasiAlbert { n, m } => (n, barabasi_albert(n, m, &mut rng)),
        GenParams::WattsStrogatz { n, k, p } => (n, watts_strogatz(n, k, p, &mut rng)),
        GenParams::RandomGeometric { n, radius } => (n, random_geometric(n, radius, &mut rng)),
    };
    if let (Weights::UniformInt { lo, hi }, false) =
        (weights, matches!(params, GenParams::RandomGeometric { .. }))
    {
        for e in &mut edges {
            e.2 = rng.gen_range(lo..=hi) as f64;
        }
    }
    let g = Graph::from_edges(n, edges, true)?;
    Ok(g.largest_component())
}

type EdgeList = Vec<(VertexId, VertexId, f64)>;

fn grid(rows: usize, cols: usize) -> EdgeList {
    let id = |r: usize, c: usize| (r * cols + c) as VertexId;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), 1.0));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), 1.0));
            }
        }
    }
    edges
}

/// G(n, p) by geometric skipping over the pairs `v > w`.
fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> EdgeList {
    let mut edges = Vec::new();
    if p <= 0.0 || n < 2 {
        return edges;
    }
    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                edges.push((w as VertexId, v as VertexId, 1.0));
            }
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as VertexId, v as VertexId, 1.0));
        }
    }
    edges
}

/// Preferential attachment: each new vertex links to `m` distinct existing
/// vertices drawn proportionally to degree.
fn barabasi_albert(n: usize, m: usize, rng: &mut ChaCha8Rng) -> EdgeList {
    let mut edges = Vec::new();
    let mut targets: Vec<usize> = (0..m).collect();
    let mut repeated: Vec<usize> = Vec::new();
    for source in m..n {
        for &t in &targets {
            edges.push((source as VertexId, t as VertexId, 1.0));
        }
        repeated.extend(targets.iter().copied());
        repeated.extend(std::iter::repeat_n(source, m));
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        while chosen.len() < m {
            let pick = *repeated.choose(rng).expect("nonempty after first step");
            if !chosen.contains(&pick) {
                chosen.push(pick);
            }
        }
        targets = chosen;
    }
    edges
}

/// Ring lattice with `k/2` neighbours per side, each lattice edge rewired
/// with probability `p` to a uniform non-duplicate endpoint.
fn watts_strogatz(n: usize, k: usize, p: f64, rng: &mut ChaCha8Rng) -> EdgeList {
    let half = k / 2;
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for j in 1..=half {
        for u in 0..n {
            let v = (u + j) % n;
            if !adj[u].contains(&v) || rng.gen::<f64>() >= p {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let mut w = rng.gen_range(0..n);
            while w == u || adj[u].contains(&w) {
                w = rng.gen_range(0..n);
            }
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let mut edges = Vec::new();
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs.range(u + 1..) {
            edges.push((u as VertexId, v as VertexId, 1.0));
        }
    }
    edges
}

/// Uniform points in the unit square joined when within `radius`; edge
/// weight is the Euclidean length.
fn random_geometric(n: usize, radius: f64, rng: &mut ChaCha8Rng) -> EdgeList {
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let cells = ((1.0 / radius).floor() as usize).clamp(1, 4096);
    let cell_of = |x: f64| ((x * cells as f64) as usize).min(cells - 1);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in points.iter().enumerate() {
        buckets[cell_of(y) * cells + cell_of(x)].push(i);
    }
    let mut edges = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        let (cx, cy) = (cell_of(x), cell_of(y));
        for ny in cy.saturating_sub(1)..=(cy + 1).min(cells - 1) {
            for nx in cx.saturating_sub(1)..=(cx + 1).min(cells - 1) {
                for &j in &buckets[ny * cells + nx] {
                    if j <= i {
                        continue;
                    }
                    let d = ((points[j].0 - x).powi(2) + (points[j].1 - y).powi(2)).sqrt();
                    if d <= radius {
                        edges.push((i as VertexId, j as VertexId, d));
                    }
                }
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_2x2() {
        let g = generate(&GenParams::Grid { rows: 2, cols: 2 }, 0).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.weights().iter().all(|&w| w == 1.0));
    }

    #[test]
    fn empty_erdos_renyi_keeps_one_vertex() {
        let g = generate(&GenParams::ErdosRenyi { n: 10, p: 0.0 }, 3).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.arc_count(), 0);
    }

    #[test]
    fn invalid_parameters() {
        for params in [
            GenParams::Grid { rows: 0, cols: 3 },
            GenParams::ErdosRenyi { n: 5, p: 1.5 },
            GenParams::BarabasiAlbert { n: 3, m: 3 },
            GenParams::WattsStrogatz { n: 5, k: 6, p: 0.1 },
            GenParams::RandomGeometric { n: 5, radius: -1.0 },
        ] {
            assert!(
                matches!(generate(&params, 0), Err(Error::Domain(_))),
                "{params}"
            );
        }
    }

    #[test]
    fn all_families_connected_symmetric_and_deterministic() {
        let families = [
            GenParams::Grid { rows: 4, cols: 7 },
            GenParams::ErdosRenyi { n: 60, p: 0.08 },
            GenParams::BarabasiAlbert { n: 60, m: 2 },
            GenParams::WattsStrogatz {
                n: 60,
                k: 4,
                p: 0.2,
            },
            GenParams::RandomGeometric {
                n: 80,
                radius: 0.25,
            },
        ];
        for params in &families {
            let a = generate(params, 11).unwrap();
            let b = generate(params, 11).unwrap();
            assert_eq!(a, b, "{params}");
            assert!(a.is_symmetric() && a.is_connected(), "{params}");
            assert!(a.vertex_count() > 1, "{params}");
        }
    }

    #[test]
    fn random_geometric_edges_are_euclidean_and_short() {
        let g = generate(
            &GenParams::RandomGeometric {
                n: 100,
                radius: 0.2,
            },
            5,
        )
        .unwrap();
        assert!(g.weights().iter().all(|&w| w > 0.0 && w <= 0.2));
        assert!(!g.has_integer_weights());
    }

    #[test]
    fn integer_weights_applied() {
        let g = generate_weighted(
            &GenParams::Grid { rows: 5, cols: 5 },
            Weights::UniformInt { lo: 1, hi: 9 },
            2,
        )
        .unwrap();
        assert!(g.has_integer_weights());
        assert!(g.weights().iter().all(|&w| (1.0..=9.0).contains(&w)));
        assert!(g.weights().iter().any(|&w| w != 1.0));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "grid:3x4",
            "er:10:0.5",
            "ba:10:2",
            "ws:10:4:0.1",
            "rgg:10:0.3",
        ] {
            let p: GenParams = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("grid:3".parse::<GenParams>().is_err());
        assert_eq!(
            "int:1:5".parse::<Weights>().unwrap(),
            Weights::UniformInt { lo: 1, hi: 5 }
        );
    }
}
