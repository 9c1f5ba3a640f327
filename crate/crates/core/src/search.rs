//! Point-to-point Dijkstra and A*.
//!
//! A* reopens settled vertices whenever a strictly shorter path reaches
//! them, so it stays optimal for admissible but inconsistent heuristics.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use crate::graph::{Graph, VertexId};
use crate::heuristics::Heuristic;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Settle events, reopenings included.
    pub expanded: u64,
    pub reopened: u64,
    pub heap_pushes: u64,
    pub heuristic_evals: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryResult {
    /// `None` when the target is unreachable.
    pub distance: Option<f64>,
    pub path: Vec<VertexId>,
    pub stats: QueryStats,
}

impl QueryResult {
    pub fn is_reachable(&self) -> bool {
        self.distance.is_some()
    }

    pub fn hops(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

/// Heap entry ordered by priority, then vertex id, then g-value, smallest
/// first.
#[derive(Clone, Copy, Debug)]
struct Entry {
    priority: f64,
    g: f64,
    vertex: VertexId,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .priority
            .total_cmp(&self.priority)
            .then_with(|| other.vertex.cmp(&self.vertex))
            .then_with(|| other.g.total_cmp(&self.g))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable per-query state. Arrays are reset lazily through an epoch
/// stamp, so a query only pays for the vertices it touches.
pub struct Searcher<'g> {
    graph: &'g Graph,
    dist: Vec<f64>,
    parent: Vec<VertexId>,
    potential: Vec<f64>,
    settled: Vec<bool>,
    stamp: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<Entry>,
}

impl<'g> Searcher<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        Searcher {
            graph,
            dist: vec![f64::INFINITY; n],
            parent: vec![VertexId::MAX; n],
            potential: vec![0.0; n],
            settled: vec![false; n],
            stamp: vec![0; n],
            epoch: 0,
            heap: BinaryHeap::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn dijkstra(&mut self, s: VertexId, t: VertexId) -> QueryResult {
        self.run(s, t, None::<&dyn Heuristic>)
    }

    pub fn astar<H: Heuristic + ?Sized>(&mut self, h: &H, s: VertexId, t: VertexId) -> QueryResult {
        self.run(s, t, Some(h))
    }

    fn begin(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.heap.clear();
    }

    /// Initializes `v` for this query on first touch; returns false if it
    /// was already touched.
    #[inline]
    fn touch(&mut self, v: VertexId) -> bool {
        let i = v as usize;
        if self.stamp[i] == self.epoch {
            return false;
        }
        self.stamp[i] = self.epoch;
        self.dist[i] = f64::INFINITY;
        self.parent[i] = VertexId::MAX;
        self.settled[i] = false;
        true
    }

    /// Heuristic value of `v`, evaluated once per query.
    #[inline]
    fn potential<H: Heuristic + ?Sized>(
        &mut self,
        h: Option<&H>,
        v: VertexId,
        t: VertexId,
        fresh: bool,
        evals: &mut u64,
    ) -> f64 {
        let Some(h) = h else { return 0.0 };
        if fresh {
            *evals += 1;
            self.potential[v as usize] = h.estimate(v, t);
        }
        self.potential[v as usize]
    }

    fn run<H: Heuristic + ?Sized>(
        &mut self,
        s: VertexId,
        t: VertexId,
        h: Option<&H>,
    ) -> QueryResult {
        let started = Instant::now();
        let mut stats = QueryStats::default();
        self.begin();

        self.touch(s);
        self.dist[s as usize] = 0.0;
        let hs = self.potential(h, s, t, true, &mut stats.heuristic_evals);
        self.heap.push(Entry {
            priority: hs,
            g: 0.0,
            vertex: s,
        });
        stats.heap_pushes += 1;

        let mut found = false;
        while let Some(Entry { g, vertex: u, .. }) = self.heap.pop() {
            if g > self.dist[u as usize] {
                continue;
            }
            if self.settled[u as usize] {
                stats.reopened += 1;
            }
            self.settled[u as usize] = true;
            stats.expanded += 1;
            if u == t {
                found = true;
                break;
            }
            for (v, w) in self.graph.neighbors(u) {
                let fresh = self.touch(v);
                let ng = g + w;
                if ng < self.dist[v as usize] {
                    self.dist[v as usize] = ng;
                    self.parent[v as usize] = u;
                    let hv = self.potential(h, v, t, fresh, &mut stats.heuristic_evals);
                    self.heap.push(Entry {
                        priority: ng + hv,
                        g: ng,
                        vertex: v,
                    });
                    stats.heap_pushes += 1;
                }
            }
        }

        let (distance, path) = if found {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = self.parent[cur as usize];
                path.push(cur);
            }
            path.reverse();
            (Some(self.dist[t as usize]), path)
        } else {
            (None, Vec::new())
        };
        stats.wall_time = started.elapsed();
        QueryResult {
            distance,
            path,
            stats,
        }
    }
}

pub fn dijkstra_query(g: &Graph, s: VertexId, t: VertexId) -> QueryResult {
    Searcher::new(g).dijkstra(s, t)
}

pub fn astar_query<H: Heuristic + ?Sized>(
    g: &Graph,
    h: &H,
    s: VertexId,
    t: VertexId,
) -> QueryResult {
    Searcher::new(g).astar(h, s, t)
}
