//! Exact desk-scale laboratory for median decompositions of graphs.
//!
//! The crate computes treewidth, pathwidth and the `i`-medianwidth /
//! `i`-latticewidth hierarchies through intersections of tree and path
//! decompositions, checks median-graph structure, and referees the
//! `i`-Cops-and-Robber game in its visible and invisible forms.

pub mod cliques;
pub mod corpus;
pub mod decomposition;
pub mod game;
pub mod generators;
pub mod graph;
pub mod limits;
pub mod median;
pub mod set;
pub mod solver;

pub use graph::{Graph, GraphError};
pub use set::VertexSet;
