//! Sorted collections, the circuit triangulation of the hypersimplex, its dual
//! graph, and exact arrangements of largest Plücker minors on the positive
//! Grassmannian.

pub mod config;
pub mod error;
pub mod grassmann;
pub mod order_theory;
pub mod subset;
pub mod dual_graph;
pub mod triangulation;
pub mod verification;

pub use config::Limits;
pub use error::{Error, Result};
pub use subset::{EpsilonVector, KSubset, OrderedSetPartition};
pub use triangulation::{MinimalCircuit, SortedCollection};
