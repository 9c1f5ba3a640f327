//! Compressed adjacency graph, vertex sets and induced subgraph views.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Immutable weighted graph in CSR form.
///
/// Parallel edges are collapsed to their minimum weight and self-loops are
/// dropped at construction; neither can lie on a shortest path.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Vec<f64>,
    symmetric: bool,
}

impl Graph {
    /// Builds a graph from arcs `(u, v, w)`. With `symmetrize` every arc is
    /// also inserted reversed.
    pub fn from_edges<I>(vertex_count: usize, edges: I, symmetrize: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, f64)>,
    {
        if vertex_count > VertexId::MAX as usize {
            return Err(Error::domain("vertex count exceeds 32-bit id space"));
        }
        let mut arcs: Vec<(VertexId, VertexId, f64)> = Vec::new();
        for (u, v, w) in edges {
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) references a vertex outside [0, {vertex_count})"
                )));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) has invalid weight {w}"
                )));
            }
            if u == v {
                continue;
            }
            arcs.push((u, v, w));
            if symmetrize {
                arcs.push((v, u, w));
            }
        }
        arcs.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then(x.2.total_cmp(&y.2)));
        arcs.dedup_by(|later, kept| later.0 == kept.0 && later.1 == kept.1);

        let mut offsets = vec![0usize; vertex_count + 1];
        for &(u, _, _) in &arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let targets = arcs.iter().map(|a| a.1).collect();
        let weights = arcs.iter().map(|a| a.2).collect();
        let mut graph = Graph {
            offsets,
            targets,
            weights,
            symmetric: true,
        };
        graph.symmetric = symmetrize || graph.check_symmetric();
        Ok(graph)
    }

    /// Rebuilds a graph from raw CSR arrays, validating their shape.
    pub fn from_csr(
        offsets: Vec<usize>,
        targets: Vec<VertexId>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let bad = |m: &str| Error::format("graph", m.to_string());
        if offsets.is_empty() || offsets[0] != 0 {
            return Err(bad("offsets must start at 0"));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad("offsets are not monotone"));
        }
        if *offsets.last().unwrap() != targets.len() || targets.len() != weights.len() {
            return Err(bad("edge arrays disagree with offsets"));
        }
        let n = offsets.len() - 1;
        if targets.iter().any(|&t| t as usize >= n) {
            return Err(bad("target id out of range"));
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(bad("negative or non-finite weight"));
        }
        let mut graph = Graph {
            offsets,
            targets,
            weights,
            symmetric: true,
        };
        graph.symmetric = graph.check_symmetric();
        Ok(graph)
    }

    fn check_symmetric(&self) -> bool {
        (0..self.vertex_count() as VertexId).all(|u| {
            self.neighbors(u)
                .all(|(v, w)| self.edge_weight(v, u) == Some(w))
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of stored arcs. A symmetric graph stores each edge twice.
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    /// Number of undirected edges (arcs / 2) for symmetric graphs.
    pub fn edge_count(&self) -> usize {
        if self.symmetric {
            self.targets.len() / 2
        } else {
            self.targets.len()
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let range = self.offsets[v as usize]..self.offsets[v as usize + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// Weight of arc `u → v`, if present.
    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        let range = self.offsets[u as usize]..self.offsets[u as usize + 1];
        let slice = &self.targets[range.clone()];
        slice
            .binary_search(&v)
            .ok()
            .map(|i| self.weights[range.start + i])
    }

    /// All arcs in CSR order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        (0..self.vertex_count() as VertexId)
            .flat_map(move |u| self.neighbors(u).map(move |(v, w)| (u, v, w)))
    }

    /// Undirected edges `u < v` of a symmetric graph.
    pub fn undirected_edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.arcs().filter(|&(u, v, _)| u < v)
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    /// True when every weight is a whole number (DIMACS-representable).
    pub fn has_integer_weights(&self) -> bool {
        self.weights.iter().all(|w| w.fract() == 0.0)
    }

    /// Same topology with every weight set to 1.
    pub fn unit_weighted(&self) -> Graph {
        Graph {
            offsets: self.offsets.clone(),
            targets: self.targets.clone(),
            weights: vec![1.0; self.targets.len()],
            symmetric: self.symmetric,
        }
    }

    /// Component label per vertex, components numbered by lowest member id.
    /// Arcs are followed in both directions.
    pub fn connected_components(&self) -> (Vec<u32>, usize) {
        let n = self.vertex_count();
        let reverse = (!self.symmetric).then(|| self.reversed_adjacency());
        let mut label = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start as VertexId);
            while let Some(u) = queue.pop_front() {
                let forward = self.neighbors(u).map(|(v, _)| v);
                let backward = reverse
                    .as_ref()
                    .map(|r| r[u as usize].as_slice())
                    .unwrap_or(&[])
                    .iter()
                    .copied();
                for v in forward.chain(backward) {
                    if label[v as usize] == u32::MAX {
                        label[v as usize] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    fn reversed_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut rev = vec![Vec::new(); self.vertex_count()];
        for (u, v, _) in self.arcs() {
            rev[v as usize].push(u);
        }
        rev
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().1 == 1
    }

    /// The largest connected component, vertices renumbered in host order.
    /// Ties go to the component containing the lowest vertex id.
    pub fn largest_component(&self) -> Graph {
        let (label, count) = self.connected_components();
        if count <= 1 {
            return self.clone();
        }
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l as usize] += 1;
        }
        let best = (0..count)
            .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
            .unwrap() as u32;
        let members: Vec<VertexId> = (0..self.vertex_count() as VertexId)
            .filter(|&v| label[v as usize] == best)
            .collect();
        let set = VertexSet::new(members, self.vertex_count()).expect("component ids are valid");
        induced_subgraph(self, &set)
            .expect("component is nonempty")
            .graph
    }
}

/// Ordered set of distinct vertex ids with a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    ids: Vec<VertexId>,
    bits: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(ids: Vec<VertexId>, universe: usize) -> Result<Self> {
        let mut bits = vec![0u64; universe.div_ceil(64)];
        for &v in &ids {
            if v as usize >= universe {
                return Err(Error::domain(format!("vertex {v} outside [0, {universe})")));
            }
            let (word, bit) = (v as usize / 64, v % 64);
            if bits[word] >> bit & 1 == 1 {
                return Err(Error::domain(format!("duplicate vertex {v}")));
            }
            bits[word] |= 1 << bit;
        }
        Ok(VertexSet {
            ids,
            bits,
            universe,
        })
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.universe && self.bits[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }
}

/// Induced subgraph with id maps in both directions. Sub-ids follow the
/// order of the originating [`VertexSet`].
#[derive(Clone, Debug)]
pub struct SubgraphView {
    pub graph: Graph,
    to_host: Vec<VertexId>,
    to_sub: Vec<VertexId>,
}

const NOT_IN_VIEW: VertexId = VertexId::MAX;

impl SubgraphView {
    pub fn host_id(&self, sub: VertexId) -> VertexId {
        self.to_host[sub as usize]
    }

    pub fn sub_id(&self, host: VertexId) -> Option<VertexId> {
        match self.to_sub.get(host as usize) {
            Some(&s) if s != NOT_IN_VIEW => Some(s),
            _ => None,
        }
    }

    pub fn host_ids(&self) -> &[VertexId] {
        &self.to_host
    }
}

pub fn induced_subgraph(g: &Graph, set: &VertexSet) -> Result<SubgraphView> {
    if set.is_empty() {
        return Err(Error::domain("induced subgraph of an empty vertex set"));
    }
    if set.universe() != g.vertex_count() {
        return Err(Error::domain("vertex set belongs to a different graph"));
    }
    let mut to_sub = vec![NOT_IN_VIEW; g.vertex_count()];
    for (i, &v) in set.ids().iter().enumerate() {
        to_sub[v as usize] = i as VertexId;
    }
    let mut offsets = Vec::with_capacity(set.len() + 1);
    let mut targets = Vec::new();
    let mut weights = Vec::new();
    offsets.push(0);
    for &u in set.ids() {
        let mut row: Vec<(VertexId, f64)> = g
            .neighbors(u)
            .filter(|&(v, _)| set.contains(v))
            .map(|(v, w)| (to_sub[v as usize], w))
            .collect();
        row.sort_by_key(|e| e.0);
        for (v, w) in row {
            targets.push(v);
            weights.push(w);
        }
        offsets.push(targets.len());
    }
    let graph = Graph {
        offsets,
        targets,
        weights,
        symmetric: g.is_symmetric(),
    };
    Ok(SubgraphView {
        graph,
        to_host: set.ids().to_vec(),
        to_sub,
    })
}
