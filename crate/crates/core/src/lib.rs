//! Combinatorial workbench for bipartite graphs drawn with at most one
//! crossing per edge: plane embeddings, planarity testing, crossing
//! registries, planarization, edge-count bounds, and exhaustive search.

pub mod bounds;
pub mod drawing;
pub mod editor;
pub mod embedding;
pub mod extension;
pub mod graph;
pub mod planarity;
pub mod gen;
pub mod search;
pub mod textio;
