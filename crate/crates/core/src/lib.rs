//! Parsimonious first speciations from forests of gene trees.
//!
//! Given a forest of gene trees, the library looks for a bipartition of the
//! genomes that minimizes the number of gene duplications preceding it. It
//! provides exact enumeration, the cut-graph view of the problem, a
//! submodular relaxation minimized with the pendant-pair method, and a
//! greedy species-tree builder on top of those.

pub mod cutgraph;
pub mod error;
pub mod sfm;
pub mod simgen;
pub mod solver;
pub mod trees;

pub use error::{Error, Result};
