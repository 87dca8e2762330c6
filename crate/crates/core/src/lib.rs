//! Generalized Sierpiński graphs and exact computation of their metric,
//! edge metric, and fault-tolerant dimensions.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: simple undirected graphs, BFS distances, bipartiteness.
//! - [`sierpinski`]: `S_G^r` construction, vertex words, prefix blocks.
//! - [`metric`]: the four generator predicates with witness certificates.
//! - [`twins`]: twin partition, twin lower bounds, forced inclusions.
//! - [`solver`]: exact minimum generators plus a brute-force reference.
//! - [`c4`]: the resolving sets `R_r` and closed forms for `S_{C4}^r`.
//! - [`cli`]: the `sierpinski` command-line tool.

pub mod c4;
pub mod cli;
pub mod error;
pub mod graph;
pub mod metric;
pub mod sierpinski;
pub mod solver;
pub mod twins;

pub use error::{Error, Result};
pub use graph::{Bipartition, DistanceMatrix, Graph};
pub use metric::{GeneratorCertificate, Metric, UnresolvedPair, Variant, Witness};
pub use sierpinski::{index_of, word_of, PrefixBlock, SierpinskiGraph, VertexWord};
pub use solver::{
    brute_force_dimension, exact_dimension, greedy_upper_bound, SolveOutcome, SolveResult,
};
pub use twins::{find_twins, LowerBounds, TwinKind, TwinPartition};
