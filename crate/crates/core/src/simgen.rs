//! Seeded generators for species trees and gene forests.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`; gene families and uniform trees each draw from their own
//! stream (`set_stream(index)`), so a given `(inputs, seed)` always yields
//! the same output regardless of platform.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::trees::{GeneForest, GeneTreeBuilder, GenomeId, GenomeTable, NodeId, SpeciesTree, SpeciesTreeBuilder};

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub k: usize,
    pub n_families: usize,
    /// Per-lineage, per-branch duplication probability.
    pub p_dup: f64,
    /// Per-lineage, per-branch loss probability.
    pub p_loss: f64,
    pub seed: u64,
}

impl SimConfig {
    /// Rejects invalid settings; returns advisory warnings otherwise.
    pub fn validate(&self) -> Result<Vec<String>> {
        if self.k < 2 {
            return Err(Error::InvalidConfig(format!("k must be at least 2, got {}", self.k)));
        }
        for (name, p) in [("p_dup", self.p_dup), ("p_loss", self.p_loss)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        let mut warnings = Vec::new();
        if self.p_dup + self.p_loss >= 1.0 {
            warnings.push(format!(
                "p_dup + p_loss = {} >= 1; most families will be degenerate",
                self.p_dup + self.p_loss
            ));
        }
        Ok(warnings)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimReport {
    /// Duplications drawn on the stem branch, one entry per attempted family.
    pub planted_root_duplications: Vec<u32>,
    pub surviving_families: usize,
    pub dropped_families: usize,
}

/// `g0 .. g{k-1}`, zero-padded so that name order equals id order.
pub fn genome_names(k: usize) -> Vec<String> {
    let width = k.saturating_sub(1).to_string().len();
    (0..k).map(|i| format!("g{i:0width$}")).collect()
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Rooted binary topology over `n` leaves by random edge attachment.
/// Nodes `0..n` are the leaves; returns `(children, root)`.
fn random_topology(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Option<(usize, usize)>>, usize) {
    let mut children: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut root = 0;
    // Attachable edges: the branch above every node present so far (root stem included).
    let mut present = vec![0usize];
    for leaf in 1..n {
        let target = present[rng.gen_range(0..present.len())];
        let joint = children.len();
        children.push(Some((target, leaf)));
        parent.push(parent[target]);
        match parent[target] {
            Some(p) => {
                let (l, r) = children[p].expect("internal parent");
                children[p] = Some(if l == target { (joint, r) } else { (l, joint) });
            }
            None => root = joint,
        }
        parent[target] = Some(joint);
        parent[leaf] = Some(joint);
        present.push(leaf);
        present.push(joint);
    }
    (children, root)
}

/// Uniformly random rooted binary species tree on genomes `g0..`.
pub fn random_species_tree(k: usize, seed: u64) -> Result<SpeciesTree> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("k must be at least 2, got {k}")));
    }
    let mut rng = stream(seed, 0);
    let (children, root) = random_topology(&mut rng, k);
    let table = Arc::new(GenomeTable::from_names(genome_names(k))?);
    let mut builder = SpeciesTreeBuilder::new();
    let mut ids = vec![0; children.len()];
    let mut stack = vec![(root, false)];
    while let Some((n, expanded)) = stack.pop() {
        match children[n] {
            None => ids[n] = builder.leaf(GenomeId::from(n)),
            Some((l, r)) if expanded => ids[n] = builder.node(vec![ids[l], ids[r]]),
            Some((l, r)) => stack.extend([(n, true), (r, false), (l, false)]),
        }
    }
    builder.build(table, ids[root])
}

struct FamilySim<'a> {
    species: &'a SpeciesTree,
    p_dup: f64,
    p_loss: f64,
    rng: ChaCha8Rng,
    builder: GeneTreeBuilder,
    stem_duplications: u32,
}

impl FamilySim<'_> {
    fn combine(&mut self, survivors: Vec<NodeId>) -> Option<NodeId> {
        survivors.into_iter().reduce(|acc, n| self.builder.join(acc, n))
    }

    /// One lineage entering the branch above species node `v`.
    fn branch(&mut self, v: NodeId, stem: bool) -> Option<NodeId> {
        let dup = self.rng.gen_bool(self.p_dup);
        if dup && stem {
            self.stem_duplications += 1;
        }
        let mut survivors = Vec::with_capacity(2);
        for _ in 0..if dup { 2 } else { 1 } {
            if !self.rng.gen_bool(self.p_loss) {
                if let Some(n) = self.speciation(v) {
                    survivors.push(n);
                }
            }
        }
        self.combine(survivors)
    }

    fn speciation(&mut self, v: NodeId) -> Option<NodeId> {
        let node = self.species.node(v);
        if let Some(g) = node.leaf_genome {
            return Some(self.builder.leaf(g));
        }
        let kids = node.children.clone();
        let survivors: Vec<NodeId> = kids.into_iter().filter_map(|c| self.branch(c, false)).collect();
        self.combine(survivors)
    }
}

/// Duplication-loss simulation of `cfg.n_families` gene families along `species`.
///
/// Families keeping fewer than two leaves are dropped. Multifurcations are
/// resolved as left-nested binary speciations.
pub fn random_gene_forest(species: &SpeciesTree, cfg: &SimConfig) -> Result<(GeneForest, SimReport)> {
    cfg.validate()?;
    let mut trees = Vec::new();
    let mut report = SimReport::default();
    for family in 0..cfg.n_families {
        let mut sim = FamilySim {
            species,
            p_dup: cfg.p_dup,
            p_loss: cfg.p_loss,
            rng: stream(cfg.seed, family as u64 + 1),
            builder: GeneTreeBuilder::new(),
            stem_duplications: 0,
        };
        let root = sim.branch(species.root(), true);
        report.planted_root_duplications.push(sim.stem_duplications);
        match root.map(|r| sim.builder.build(r)) {
            Some(tree) if tree.leaf_count() >= 2 => {
                trees.push(tree);
                report.surviving_families += 1;
            }
            _ => report.dropped_families += 1,
        }
    }
    Ok((GeneForest::new(species.genomes_arc().clone(), trees), report))
}

/// Uniform random binary trees with leaf genomes drawn i.i.d. from `g0..g{k-1}`.
///
/// The realized ground set may be a proper subset of the table.
pub fn random_forest_uniform(k: usize, n_trees: usize, leaves_per_tree: usize, seed: u64) -> Result<GeneForest> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("k must be at least 2, got {k}")));
    }
    if leaves_per_tree < 2 {
        return Err(Error::InvalidConfig(format!(
            "leaves_per_tree must be at least 2, got {leaves_per_tree}"
        )));
    }
    let table = Arc::new(GenomeTable::from_names(genome_names(k))?);
    let mut trees = Vec::with_capacity(n_trees);
    for t in 0..n_trees {
        let mut rng = stream(seed, t as u64);
        let (children, root) = random_topology(&mut rng, leaves_per_tree);
        let mut builder = GeneTreeBuilder::new();
        let mut ids = vec![0; children.len()];
        let mut stack = vec![(root, false)];
        while let Some((n, expanded)) = stack.pop() {
            match children[n] {
                None => ids[n] = builder.leaf(GenomeId::from(rng.gen_range(0..k))),
                Some((l, r)) if expanded => ids[n] = builder.join(ids[l], ids[r]),
                Some((l, r)) => stack.extend([(n, true), (r, false), (l, false)]),
            }
        }
        trees.push(builder.build(ids[root]));
    }
    Ok(GeneForest::new(table, trees))
}

/// Size limits for a stream of uniform random forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_k: usize,
    pub max_trees: usize,
    pub max_leaves: usize,
}

/// Instance `index` of a corpus: k, tree count and leaves per tree are drawn
/// uniformly within `spec` (k ≥ 2, ≥ 1 tree, ≥ 2 leaves).
pub fn corpus_forest(spec: CorpusSpec, seed: u64, index: u64) -> Result<GeneForest> {
    if spec.max_k < 2 || spec.max_trees < 1 || spec.max_leaves < 2 {
        return Err(Error::InvalidConfig(format!("corpus limits too small: {spec:?}")));
    }
    let mut rng = stream(seed, index);
    let k = rng.gen_range(2..=spec.max_k);
    let trees = rng.gen_range(1..=spec.max_trees);
    let leaves = rng.gen_range(2..=spec.max_leaves);
    let tree_seed = rng.gen::<u64>();
    random_forest_uniform(k, trees, leaves, tree_seed)
}

/// Corpus instances with at least two distinct genomes, in index order.
pub fn corpus(spec: CorpusSpec, seed: u64) -> impl Iterator<Item = GeneForest> {
    (0u64..)
        .map(move |i| corpus_forest(spec, seed, i).expect("valid corpus spec"))
        .filter(|f| f.ground().len() >= 2)
}
