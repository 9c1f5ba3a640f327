//! Landmark selection and the two competing index structures.
//!
//! [`AltIndex`] keeps a full `|L|×|V|` distance table. [`AlpIndex`] is the
//! distributed embedding: each vertex carries one `(landmark, distance)`
//! label for the landmark of its own partition, and landmarks share an
//! `|L|×|L|` distance matrix, for `|V| + |L|²` entries in total.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, VertexId};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq)]
struct HeapItem {
    dist: f64,
    vertex: VertexId,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source Dijkstra. Unreachable vertices get `f64::INFINITY`.
pub fn sssp(g: &Graph, source: VertexId) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.vertex_count()];
    dist[source as usize] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem {
        dist: 0.0,
        vertex: source,
    });
    while let Some(HeapItem { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u as usize] {
            continue;
        }
        for (v, w) in g.neighbors(u) {
            let nd = d + w;
            if nd < dist[v as usize] {
                dist[v as usize] = nd;
                heap.push(HeapItem {
                    dist: nd,
                    vertex: v,
                });
            }
        }
    }
    dist
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LandmarkMethod {
    #[default]
    Random,
    Farthest,
}

impl std::str::FromStr for LandmarkMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(LandmarkMethod::Random),
            "farthest" => Ok(LandmarkMethod::Farthest),
            _ => Err(Error::domain(format!("unknown landmark method `{s}`"))),
        }
    }
}

/// One landmark per community, in community order.
///
/// `Random` draws uniformly inside each community. `Farthest` starts from
/// the community's lowest vertex id and takes the member farthest from it
/// inside the induced subgraph (lowest id on ties).
pub fn select_landmarks(
    g: &Graph,
    p: &Partition,
    method: LandmarkMethod,
    seed: u64,
) -> Result<Vec<VertexId>> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::domain("partition does not cover the graph"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    p.communities()
        .iter()
        .map(|members| match method {
            LandmarkMethod::Random => Ok(members.ids()[rng.gen_range(0..members.len())]),
            LandmarkMethod::Farthest => {
                let view = induced_subgraph(g, members)?;
                let start = (0..members.len())
                    .min_by_key(|&i| members.ids()[i])
                    .expect("communities are nonempty") as VertexId;
                let dist = sssp(&view.graph, start);
                let mut best = start;
                for (i, &d) in dist.iter().enumerate() {
                    let (i, b) = (i as VertexId, dist[best as usize]);
                    if d.is_finite() && (d > b || (d == b && view.host_id(i) < view.host_id(best)))
                    {
                        best = i;
                    }
                }
                Ok(view.host_id(best))
            }
        })
        .collect()
}

fn check_landmarks(g: &Graph, landmarks: &[VertexId]) -> Result<()> {
    if !g.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    if landmarks.is_empty() {
        return Err(Error::domain("at least one landmark is required"));
    }
    let mut seen = vec![false; g.vertex_count()];
    for &l in landmarks {
        let slot = seen
            .get_mut(l as usize)
            .ok_or_else(|| Error::domain(format!("landmark {l} is not a vertex")))?;
        if *slot {
            return Err(Error::domain(format!("duplicate landmark {l}")));
        }
        *slot = true;
    }
    Ok(())
}

/// Full landmark distance table. Stored vertex-major so the distances a
/// heuristic evaluation needs for one vertex are contiguous.
#[derive(Clone, Debug, PartialEq)]
pub struct AltIndex {
    landmarks: Vec<VertexId>,
    vertex_count: usize,
    table: Vec<f64>,
}

impl AltIndex {
    pub(crate) fn from_parts(
        landmarks: Vec<VertexId>,
        vertex_count: usize,
        table: Vec<f64>,
    ) -> Self {
        AltIndex {
            landmarks,
            vertex_count,
            table,
        }
    }

    pub fn landmarks(&self) -> &[VertexId] {
        &self.landmarks
    }

    pub fn landmark_count(&self) -> usize {
        self.landmarks.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `d(landmarks[i], v)`.
    #[inline]
    pub fn distance(&self, i: usize, v: VertexId) -> f64 {
        self.table[v as usize * self.landmarks.len() + i]
    }

    /// Distances from every landmark to `v`.
    #[inline]
    pub fn vertex_row(&self, v: VertexId) -> &[f64] {
        let k = self.landmarks.len();
        &self.table[v as usize * k..(v as usize + 1) * k]
    }

    pub fn entry_count(&self) -> usize {
        self.table.len()
    }

    /// Payload bytes: landmark ids plus 8-byte distances.
    pub fn payload_bytes(&self) -> usize {
        4 * self.landmarks.len() + 8 * self.table.len()
    }
}

pub fn build_alt_index(g: &Graph, landmarks: &[VertexId]) -> Result<AltIndex> {
    check_landmarks(g, landmarks)?;
    let n = g.vertex_count();
    let k = landmarks.len();
    let mut table = vec![0.0; n * k];
    for (i, &l) in landmarks.iter().enumerate() {
        for (v, d) in sssp(g, l).into_iter().enumerate() {
            table[v * k + i] = d;
        }
    }
    Ok(AltIndex {
        landmarks: landmarks.to_vec(),
        vertex_count: n,
        table,
    })
}

/// How per-vertex label distances are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingMode {
    /// Full-graph distance to the vertex's landmark.
    #[default]
    Exact,
    /// Distance inside the subgraph induced by the vertex's partition.
    Induced,
}

impl std::str::FromStr for EmbeddingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(EmbeddingMode::Exact),
            "induced" => Ok(EmbeddingMode::Induced),
            _ => Err(Error::domain(format!("unknown embedding mode `{s}`"))),
        }
    }
}

/// Per-vertex label: ordinal of the vertex's landmark and distance to it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Label {
    pub landmark: u32,
    pub dist: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlpIndex {
    mode: EmbeddingMode,
    landmarks: Vec<VertexId>,
    labels: Vec<Label>,
    matrix: Vec<f64>,
    unreachable: Vec<VertexId>,
}

impl AlpIndex {
    pub(crate) fn from_parts(
        mode: EmbeddingMode,
        landmarks: Vec<VertexId>,
        labels: Vec<Label>,
        matrix: Vec<f64>,
    ) -> Self {
        let unreachable = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.dist.is_finite())
            .map(|(v, _)| v as VertexId)
            .collect();
        AlpIndex {
            mode,
            landmarks,
            labels,
            matrix,
            unreachable,
        }
    }

    pub fn mode(&self) -> EmbeddingMode {
        self.mode
    }

    pub fn landmarks(&self) -> &[VertexId] {
        &self.landmarks
    }

    pub fn landmark_count(&self) -> usize {
        self.landmarks.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn label(&self, v: VertexId) -> Label {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// `d(landmarks[i], landmarks[j])`.
    #[inline]
    pub fn landmark_distance(&self, i: u32, j: u32) -> f64 {
        self.matrix[i as usize * self.landmarks.len() + j as usize]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    /// Vertices whose label is infinite because their partition does not
    /// connect them to its landmark.
    pub fn unreachable_labels(&self) -> &[VertexId] {
        &self.unreachable
    }

    /// `|V|` labels plus `|L|²` matrix entries.
    pub fn entry_count(&self) -> usize {
        self.labels.len() + self.matrix.len()
    }

    /// Landmark ids, 12-byte labels, 8-byte matrix entries.
    pub fn payload_bytes(&self) -> usize {
        4 * self.landmarks.len() + 12 * self.labels.len() + 8 * self.matrix.len()
    }
}

pub fn build_alp_index(
    g: &Graph,
    p: &Partition,
    landmarks: &[VertexId],
    mode: EmbeddingMode,
) -> Result<AlpIndex> {
    check_landmarks(g, landmarks)?;
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::domain("partition does not cover the graph"));
    }
    if landmarks.len() != p.community_count() {
        return Err(Error::domain(format!(
            "{} landmarks for {} communities",
            landmarks.len(),
            p.community_count()
        )));
    }
    for (i, &l) in landmarks.iter().enumerate() {
        if p.community_of(l) as usize != i {
            return Err(Error::domain(format!(
                "landmark {l} does not belong to community {i}"
            )));
        }
    }

    let k = landmarks.len();
    let mut labels = vec![
        Label {
            landmark: 0,
            dist: f64::INFINITY
        };
        g.vertex_count()
    ];
    let mut matrix = vec![0.0; k * k];
    for (i, &l) in landmarks.iter().enumerate() {
        let dist = sssp(g, l);
        for (j, &other) in landmarks.iter().enumerate() {
            matrix[i * k + j] = dist[other as usize];
        }
        let members = p.community(i as u32);
        match mode {
            EmbeddingMode::Exact => {
                for &v in members.ids() {
                    labels[v as usize] = Label {
                        landmark: i as u32,
                        dist: dist[v as usize],
                    };
                }
            }
            EmbeddingMode::Induced => {
                let view = induced_subgraph(g, members)?;
                let root = view.sub_id(l).expect("landmark is a member");
                for (sub, d) in sssp(&view.graph, root).into_iter().enumerate() {
                    labels[view.host_id(sub as VertexId) as usize] = Label {
                        landmark: i as u32,
                        dist: d,
                    };
                }
            }
        }
    }
    Ok(AlpIndex::from_parts(
        mode,
        landmarks.to_vec(),
        labels,
        matrix,
    ))
}

/// Entry and byte counts for both indices over the same landmark set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexStats {
    pub vertices: usize,
    pub landmarks: usize,
    pub alt_entries: usize,
    pub alt_bytes: usize,
    pub alp_entries: usize,
    pub alp_bytes: usize,
    pub alp_unreachable_labels: usize,
}

impl IndexStats {
    pub fn of(alt: &AltIndex, alp: &AlpIndex) -> Self {
        IndexStats {
            vertices: alp.vertex_count(),
            landmarks: alp.landmark_count(),
            alt_entries: alt.entry_count(),
            alt_bytes: alt.payload_bytes(),
            alp_entries: alp.entry_count(),
            alp_bytes: alp.payload_bytes(),
            alp_unreachable_labels: alp.unreachable_labels().len(),
        }
    }
}
