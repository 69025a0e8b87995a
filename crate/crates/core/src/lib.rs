//! Exact solvers, proof-derived constructions and certifiers for
//! all-k-isolation in trees.

pub mod cli;
pub mod coloring;
pub mod constructive;
pub mod dp;
pub mod families;
pub mod oracle;
pub mod predicates;
pub mod set;
pub mod suite;
pub mod tree;

pub use predicates::{Certificate, Coloring, IsolationSpec};
pub use set::VertexSet;
pub use tree::{parse_edge_list, Tree, TreeError};
