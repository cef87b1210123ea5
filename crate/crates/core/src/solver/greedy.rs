use super::approx::approx_mdbp;
use super::exact::exact_mdbp;
use super::SolverConfig;
use crate::error::{Error, Result};
use crate::trees::{
    d1_cost, duplication_count, split_forest, Bipartition, GeneForest, GenomeId, LabelSet, NodeId, SpeciesTree,
    SpeciesTreeBuilder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Approx,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyStep {
    pub depth: usize,
    pub genomes: LabelSet,
    /// `None` for an unconstrained step.
    pub bipartition: Option<Bipartition>,
    pub d1_cost: usize,
    /// No gene vertex spans two of these genomes, so any resolution is
    /// equally good; a caterpillar in name order is emitted.
    pub unconstrained: bool,
}

#[derive(Clone, Debug)]
pub struct GreedyResult {
    pub tree: SpeciesTree,
    pub steps: Vec<GreedyStep>,
    /// d(F, S) for the original forest.
    pub total_duplications: usize,
}

struct Greedy<'a> {
    method: Method,
    cfg: &'a SolverConfig,
    builder: SpeciesTreeBuilder,
    steps: Vec<GreedyStep>,
}

impl Greedy<'_> {
    fn by_name(forest: &GeneForest, set: &LabelSet) -> Vec<GenomeId> {
        let mut ids = set.to_vec();
        ids.sort_by(|&a, &b| forest.genomes().name(a).cmp(forest.genomes().name(b)));
        ids
    }

    fn build(&mut self, forest: &GeneForest, depth: usize) -> Result<NodeId> {
        let ground = forest.ground().clone();
        let names = Self::by_name(forest, &ground);
        match names.len() {
            0 => return Err(Error::TooFewGenomes(0)),
            1 => return Ok(self.builder.leaf(names[0])),
            2 => {
                let (a, b) = (self.builder.leaf(names[0]), self.builder.leaf(names[1]));
                return Ok(self.builder.node(vec![a, b]));
            }
            _ => {}
        }
        if forest.internal_vertices().all(|v| v.labels.len() < 2) {
            self.steps.push(GreedyStep {
                depth,
                genomes: ground,
                bipartition: None,
                d1_cost: 0,
                unconstrained: true,
            });
            let mut acc = self.builder.leaf(names[0]);
            for &g in &names[1..] {
                let leaf = self.builder.leaf(g);
                acc = self.builder.node(vec![acc, leaf]);
            }
            return Ok(acc);
        }
        let b = match self.method {
            Method::Approx => approx_mdbp(forest)?.bipartition,
            Method::Exact => exact_mdbp(forest, self.cfg, false)?.bipartition,
        };
        self.steps.push(GreedyStep {
            depth,
            genomes: ground,
            bipartition: Some(b.clone()),
            d1_cost: d1_cost(forest, &b)?,
            unconstrained: false,
        });
        let (left, right) = split_forest(forest, &b)?;
        let l = self.build(&left, depth + 1)?;
        let r = self.build(&right, depth + 1)?;
        Ok(self.builder.node(vec![l, r]))
    }
}

/// Top-down species tree: split by a minimum-duplication bipartition, then
/// recurse into each side's restricted forest.
pub fn greedy_species_tree(forest: &GeneForest, method: Method, cfg: &SolverConfig) -> Result<GreedyResult> {
    cfg.validate()?;
    let mut greedy = Greedy {
        method,
        cfg,
        builder: SpeciesTreeBuilder::new(),
        steps: Vec::new(),
    };
    let root = greedy.build(forest, 0)?;
    let tree = greedy.builder.build(forest.genomes_arc().clone(), root)?;
    let total_duplications = duplication_count(forest, &tree)?;
    Ok(GreedyResult {
        tree,
        steps: greedy.steps,
        total_duplications,
    })
}
