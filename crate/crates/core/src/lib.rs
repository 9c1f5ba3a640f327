//! Landmark heuristics for A* shortest-path search.
//!
//! Two competing preprocessing schemes are built over the same graph:
//!
//! * **ALT**: every landmark stores its distance to every vertex
//!   (`|L|·|V|` entries) and the heuristic is the best reverse triangle
//!   inequality over all landmarks.
//! * **ALP** (dual landmark, distributed embedding): the graph is partitioned,
//!   one landmark is chosen per partition, every vertex stores only its own
//!   landmark and the distance to it, and landmarks store distances among
//!   themselves (`|V| + |L|²` entries). The heuristic takes the best of the
//!   quadrilateral bounds over `v → l_v → l_t → t`.
//!
//! The crate also ships the tooling around them: DIMACS ingestion and graph
//! generators, Louvain partitioning, an A* engine that stays optimal under
//! inconsistent heuristics, oracle-based verification sweeps and a seeded
//! benchmark harness.

pub mod bench;
pub mod cli;
pub mod codec;
pub mod dimacs;
pub mod embedding;
pub mod error;
pub mod generate;
pub mod graph;
pub mod heuristics;
pub mod partition;
pub mod search;
pub mod verify;

pub use embedding::{
    build_alp_index, build_alt_index, select_landmarks, sssp, AlpIndex, AltIndex, EmbeddingMode,
    LandmarkMethod,
};
pub use error::{Error, Result};
pub use generate::{generate, GenParams, GraphSpec, Weights};
pub use graph::{induced_subgraph, Graph, SubgraphView, VertexId, VertexSet};
pub use heuristics::{alp_bounds, alp_h, alt_h, Heuristic, HeuristicConfig, QuadSides};
pub use partition::{louvain, modularity, Partition};
pub use search::{astar_query, dijkstra_query, QueryResult, QueryStats, Searcher};
