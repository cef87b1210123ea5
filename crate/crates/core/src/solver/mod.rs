//! Minimum-duplication bipartitions: the submodular approximation, exact
//! enumeration over cuts and over prefixes, the all-optimal partitions and
//! the greedy species-tree builder.

mod approx;
mod compiled;
mod exact;
mod greedy;
mod prefix;

pub use approx::{approx_mdbp, ApproxResult, BoundCheck};
pub use exact::{all_optimal_bipartition_partition, edge_in_some_min_cut, exact_mdbp, ExactResult};
pub use greedy::{greedy_species_tree, GreedyResult, GreedyStep, Method};
pub use prefix::{all_optimal_prefix_partition, exact_mdpp, optimal_prefixes, vertex_in_some_min_prefix, PrefixResult};

use crate::error::{Error, Result};

/// Exact enumerations refuse inputs above these sizes.
pub const HARD_MAX_K: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Genome count limit for exact bipartition enumeration and prefix search.
    pub exact_max_k: usize,
    /// Genome count limit when every optimal bipartition is collected.
    pub collect_max_k: usize,
    /// Internal-vertex limit for prefix search.
    pub prefix_max_m: usize,
    /// Workers for the exact bipartition enumeration.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exact_max_k: 20,
            collect_max_k: 16,
            prefix_max_m: 128,
            threads: 1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.exact_max_k > HARD_MAX_K || self.collect_max_k > HARD_MAX_K {
            return Err(Error::InvalidConfig(format!(
                "exact limits may not exceed {HARD_MAX_K} genomes"
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidConfig("threads must be at least 1".into()));
        }
        Ok(())
    }
}
