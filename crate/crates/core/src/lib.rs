//! Modular decomposition and fixed-parameter algorithms parameterized by
//! modular-width: exact chromatic number, partitioning into paths,
//! Hamiltonian path and Hamiltonian cycle, each with a checkable witness.
//!
//! Every solver works bottom-up over the normalized decomposition tree, where
//! each internal node substitutes its children into a small quotient graph.
//! Brute-force reference implementations live in [`oracles`].

pub mod coloring;
pub mod diversity;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod ham;
pub mod ilp;
pub mod mdtree;
pub mod oracles;
pub mod partition;

pub use error::{Error, Result};
pub use graph::{add_universal, induced_subgraph, substitute, Graph, VertexSet};
pub use mdtree::{is_module, modular_decomposition, modular_width, normalize, NodeKind, ParseTree};
