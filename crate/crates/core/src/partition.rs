//! Vertex partitions: Louvain community detection, modularity, and seeded
//! BFS regions for experiments that need a fixed community count.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

pub const DEFAULT_MIN_GAIN: f64 = 1e-7;

/// Upper bound on local-move passes per level; each pass strictly raises
/// modularity, so this only trips on floating-point cycling.
const MAX_PASSES: usize = 10_000;

/// Total assignment of vertices to dense community ids.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    assignment: Vec<u32>,
    communities: Vec<VertexSet>,
}

impl Partition {
    /// Community ids must already be dense in `[0, k)` with no empty class.
    pub fn from_assignment(assignment: Vec<u32>) -> Result<Self> {
        let n = assignment.len();
        let k = assignment
            .iter()
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(0);
        let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); k];
        for (v, &c) in assignment.iter().enumerate() {
            members[c as usize].push(v as VertexId);
        }
        if let Some(c) = members.iter().position(Vec::is_empty) {
            return Err(Error::domain(format!("community {c} is empty")));
        }
        let communities = members
            .into_iter()
            .map(|ids| VertexSet::new(ids, n))
            .collect::<Result<_>>()?;
        Ok(Partition {
            assignment,
            communities,
        })
    }

    /// Accepts arbitrary labels and renumbers them by first appearance.
    pub fn from_labels(labels: &[u32]) -> Self {
        let mut map = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|&l| {
                let next = map.len() as u32;
                *map.entry(l).or_insert(next)
            })
            .collect();
        Self::from_assignment(assignment).expect("renumbered labels are dense")
    }

    pub fn whole(n: usize) -> Self {
        Self::from_assignment(vec![0; n]).expect("one community")
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_assignment((0..n as u32).collect()).expect("n communities")
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.communities.len()
    }

    #[inline]
    pub fn community_of(&self, v: VertexId) -> u32 {
        self.assignment[v as usize]
    }

    pub fn community(&self, c: u32) -> &VertexSet {
        &self.communities[c as usize]
    }

    pub fn communities(&self) -> &[VertexSet] {
        &self.communities
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// One `<vertex-id> <community-id>` line per vertex.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        for (v, c) in self.assignment.iter().enumerate() {
            writeln!(out, "{v} {c}")?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(reader: R, vertex_count: usize) -> Result<Self> {
        let mut assignment = vec![u32::MAX; vertex_count];
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let mut fields = line.split_whitespace();
            let (Some(v), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err(format!(
                    "expected `<vertex> <community>`, got `{line}`"
                )));
            };
            let v: usize = v.parse().map_err(|_| err(format!("bad vertex id `{v}`")))?;
            let c: u32 = c
                .parse()
                .map_err(|_| err(format!("bad community id `{c}`")))?;
            if v >= vertex_count {
                return Err(err(format!("vertex {v} outside [0, {vertex_count})")));
            }
            if assignment[v] != u32::MAX {
                return Err(err(format!("vertex {v} assigned twice")));
            }
            assignment[v] = c;
        }
        if let Some(v) = assignment.iter().position(|&c| c == u32::MAX) {
            return Err(Error::domain(format!("vertex {v} has no community")));
        }
        Self::from_assignment(assignment)
    }
}

/// Weighted Newman modularity `Σ_c [e_c/m − (d_c/2m)²]`.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    if !g.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::domain("partition does not cover the graph"));
    }
    let k = p.community_count();
    let mut internal = vec![0.0; k];
    let mut degree = vec![0.0; k];
    let mut two_m = 0.0;
    for (u, v, w) in g.arcs() {
        let cu = p.community_of(u) as usize;
        two_m += w;
        degree[cu] += w;
        if cu == p.community_of(v) as usize {
            internal[cu] += w;
        }
    }
    if two_m <= 0.0 {
        return Err(Error::domain("modularity is undefined without edge weight"));
    }
    let m = two_m / 2.0;
    Ok((0..k)
        .map(|c| internal[c] / 2.0 / m - (degree[c] / two_m).powi(2))
        .sum())
}

/// Aggregated graph used between Louvain levels. Self-loop weight counts
/// each internal edge once.
struct Level {
    adj: Vec<Vec<(u32, f64)>>,
    self_loops: Vec<f64>,
    degree: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(u32, f64)>> = (0..g.vertex_count() as VertexId)
            .map(|u| g.neighbors(u).collect())
            .collect();
        let degree = adj
            .iter()
            .map(|row| row.iter().map(|e| e.1).sum())
            .collect();
        Level {
            self_loops: vec![0.0; adj.len()],
            adj,
            degree,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn aggregate(&self, comm: &[u32], k: usize) -> Level {
        let mut self_loops = vec![0.0; k];
        let mut triples: Vec<(u32, u32, f64)> = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            let cu = comm[u];
            self_loops[cu as usize] += self.self_loops[u];
            for &(v, w) in row {
                let cv = comm[v as usize];
                if cu == cv {
                    self_loops[cu as usize] += w / 2.0;
                } else {
                    triples.push((cu, cv, w));
                }
            }
        }
        triples.sort_by_key(|t| (t.0, t.1));
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); k];
        for (cu, cv, w) in triples {
            let row = &mut adj[cu as usize];
            match row.last_mut() {
                Some(last) if last.0 == cv => last.1 += w,
                _ => row.push((cv, w)),
            }
        }
        let degree = (0..k)
            .map(|c| adj[c].iter().map(|e| e.1).sum::<f64>() + 2.0 * self_loops[c])
            .collect();
        Level {
            adj,
            self_loops,
            degree,
        }
    }
}

/// Two-phase Louvain with resolution 1. Vertices are visited in a
/// seed-shuffled order; equal gains go to the lowest community id.
pub fn louvain(g: &Graph, seed: u64, min_gain: f64) -> Result<Partition> {
    if !g.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    if min_gain.is_nan() || min_gain < 0.0 {
        return Err(Error::domain("min_gain must be nonnegative"));
    }
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = Level::from_graph(g);
    let two_m: f64 = level.degree.iter().sum();
    if two_m <= 0.0 {
        return Ok(Partition::singletons(n));
    }
    let m = two_m / 2.0;
    // original vertex -> node of the current level
    let mut membership: Vec<u32> = (0..n as u32).collect();

    loop {
        let (comm, moved) = local_moves(&level, two_m, m, min_gain, &mut rng);
        if !moved {
            break;
        }
        let (comm, k) = renumber(&comm);
        for node in membership.iter_mut() {
            *node = comm[*node as usize];
        }
        level = level.aggregate(&comm, k);
        if k == 1 {
            break;
        }
    }
    Ok(Partition::from_labels(&membership))
}

fn local_moves(
    level: &Level,
    two_m: f64,
    m: f64,
    min_gain: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<u32>, bool) {
    let n = level.len();
    let mut comm: Vec<u32> = (0..n as u32).collect();
    let mut total = level.degree.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut link = vec![0.0f64; n];
    let mut seen = vec![false; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut moved_any = false;

    for _ in 0..MAX_PASSES {
        let mut moved = false;
        for &i in &order {
            let own = comm[i];
            let ki = level.degree[i];
            for &(j, w) in &level.adj[i] {
                let c = comm[j as usize];
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    touched.push(c);
                }
                link[c as usize] += w;
            }
            total[own as usize] -= ki;
            let stay_gain = link[own as usize] - total[own as usize] * ki / two_m;

            touched.sort_unstable();
            let mut best: Option<(u32, f64)> = None;
            for &c in &touched {
                if c == own {
                    continue;
                }
                let gain = link[c as usize] - total[c as usize] * ki / two_m;
                if best.is_none_or(|(_, b)| gain > b) {
                    best = Some((c, gain));
                }
            }
            let target = match best {
                Some((c, gain)) if (gain - stay_gain) / m > min_gain => c,
                _ => own,
            };
            total[target as usize] += ki;
            if target != own {
                comm[i] = target;
                moved = true;
            }
            for &c in &touched {
                link[c as usize] = 0.0;
                seen[c as usize] = false;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    (comm, moved_any)
}

fn renumber(comm: &[u32]) -> (Vec<u32>, usize) {
    let mut map = vec![u32::MAX; comm.len()];
    let mut next = 0u32;
    let out = comm
        .iter()
        .map(|&c| {
            if map[c as usize] == u32::MAX {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect();
    (out, next as usize)
}

/// `k` regions grown by simultaneous BFS from `k` seeded distinct sources.
/// Vertices unreachable from every source form extra regions, one per
/// connected component.
pub fn bfs_regions(g: &Graph, k: usize, seed: u64) -> Result<Partition> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "cannot grow {k} regions on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
    ids.shuffle(&mut rng);
    let mut label = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    for (r, &s) in ids[..k].iter().enumerate() {
        label[s as usize] = r as u32;
        queue.push_back(s);
    }
    let mut next = k as u32;
    let mut start = 0usize;
    loop {
        while let Some(u) = queue.pop_front() {
            for (v, _) in g.neighbors(u) {
                if label[v as usize] == u32::MAX {
                    label[v as usize] = label[u as usize];
                    queue.push_back(v);
                }
            }
        }
        while start < n && label[start] != u32::MAX {
            start += 1;
        }
        if start == n {
            break;
        }
        label[start] = next;
        next += 1;
        queue.push_back(start as VertexId);
    }
    Partition::from_assignment(label)
}
