//! Hermitian eigendecomposition by successive rank-1 edge elimination.
//!
//! A Hermitian matrix is written as a diagonal plus one rank-1 term per
//! conjugate pair of off-diagonal entries. Eliminating the terms one at a
//! time, each by a diagonal-plus-rank-1 eigensolve, yields the full
//! eigendecomposition. The supports of the pending rank-1 vectors evolve like
//! hyperedges under edge elimination, which the symbolic engine in
//! [`ordering`] predicts exactly and uses to pick cheap orderings.

pub mod eliminator;
pub mod error;
pub mod hypergraph;
pub mod matio;
pub mod ordering;
pub mod pattern;
pub mod secular;

pub use error::{Error, Result};
pub use hypergraph::{Dual, EdgeId, HyperEdge, Hypergraph, VertexId};
pub use pattern::SparsityPattern;
