//! Commuting graphs Γ(G) and Γ̃(H), their quasirandomness statistics, and
//! explicit embeddings of finite graphs into Heisenberg commuting graphs.

mod bitmatrix;
mod embed;
mod graph;
mod stats;

pub use bitmatrix::BitMatrix;
pub use embed::{embed_graph, induced_subgraph_check, EmbeddingWitness, SimpleGraph};
pub use graph::{build_graph, CommGraph, Family, Mode, VertexTag, DENSE_LIMIT};
pub use stats::{bipartite_edge_count, quasi_stats, random_subset, BipartiteCount, QuasiStats};
