//! Gene and species trees, label sets, LCA mapping and duplication costs.

mod costs;
mod forest;
mod labelset;
mod newick;
mod partition;
mod species;

pub use costs::{
    d1_cost, duplication_count, duplication_vertices, duplications_preceding, is_apparent_duplication, lca_mapping,
    partition_from_prefix, split_forest, LcaMapping,
};
pub use forest::{GeneForest, GeneNode, GeneTree, GeneTreeBuilder, InternalVertex, NodeId, VertexLabel};
pub use labelset::{GenomeId, GenomeTable, LabelSet};
pub use newick::{parse_newick_forest, parse_species_tree};
pub use partition::{Partition, Prefix};
pub use species::{Bipartition, SpeciesNode, SpeciesTree, SpeciesTreeBuilder};
