use super::exact::exact_mdbp;
use super::SolverConfig;
use crate::cutgraph::{build_i, connected_components, CutFunction, IForm};
use crate::error::{Error, Result};
use crate::sfm::{queyranne_minimize, Oracle};
use crate::trees::{d1_cost, Bipartition, GeneForest, LabelSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    /// Normalized: the smallest genome is on the left.
    pub bipartition: Bipartition,
    /// f_I of the returned cut.
    pub relaxed_value: usize,
    /// d₁ of the returned cut.
    pub realized_cost: usize,
    pub evaluations: u64,
    /// I(F) was already disconnected, so no minimization ran.
    pub disconnected: bool,
    /// Exact optimum d, once certified.
    pub bound_certificate: Option<usize>,
}

/// Comparison of an approximate cut against the exact optimum d.
///
/// `2d + 1` holds for single trees. A prefix spread over `t` trees can have
/// `t` more leaves than internal vertices, so forests only guarantee
/// `2d + t`; e.g. two copies of `((a,b),(c,d))` give d = 0 and c = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub optimum: usize,
    /// 2d + 1.
    pub bound: usize,
    pub relaxed_within: bool,
    pub realized_within: bool,
    /// 2d + t for a forest of t trees.
    pub forest_bound: usize,
    pub relaxed_within_forest_bound: bool,
    /// d ≤ realized ≤ relaxed.
    pub sandwich: bool,
}

impl BoundCheck {
    /// Every guarantee that holds for arbitrary forests.
    pub fn holds(&self) -> bool {
        self.sandwich && self.relaxed_within_forest_bound
    }
}

impl ApproxResult {
    /// Solves exactly, records d and compares both values with the bounds.
    pub fn certify(&mut self, forest: &GeneForest, cfg: &SolverConfig) -> Result<BoundCheck> {
        let optimum = exact_mdbp(forest, cfg, false)?.cost;
        self.bound_certificate = Some(optimum);
        let bound = 2 * optimum + 1;
        let forest_bound = 2 * optimum + forest.trees().len().max(1);
        Ok(BoundCheck {
            optimum,
            bound,
            relaxed_within: self.relaxed_value <= bound,
            realized_within: self.realized_cost <= bound,
            forest_bound,
            relaxed_within_forest_bound: self.relaxed_value <= forest_bound,
            sandwich: optimum <= self.realized_cost && self.realized_cost <= self.relaxed_value,
        })
    }
}

/// Minimizes the symmetric submodular f_I with the pendant-pair algorithm.
///
/// When I(F) has several components the cut between them costs nothing; the
/// components are then dealt to two sides, each to the currently smaller one.
pub fn approx_mdbp(forest: &GeneForest) -> Result<ApproxResult> {
    let ground = forest.ground();
    if ground.len() < 2 {
        return Err(Error::TooFewGenomes(ground.len()));
    }
    let components = connected_components(&build_i(forest));
    if components.len() >= 2 {
        let mut left = LabelSet::empty(forest.universe());
        let mut right = left.clone();
        for part in components.parts() {
            if left.len() <= right.len() {
                left.union_with(part);
            } else {
                right.union_with(part);
            }
        }
        let bipartition = Bipartition::new(left, right)?.normalized();
        let realized_cost = d1_cost(forest, &bipartition)?;
        return Ok(ApproxResult {
            bipartition,
            relaxed_value: 0,
            realized_cost,
            evaluations: 0,
            disconnected: true,
            bound_certificate: None,
        });
    }
    let f = CutFunction::i(forest, IForm::Compact);
    let oracle = Oracle::new(f);
    let r = queyranne_minimize(&oracle)?;
    let side = oracle.inner().to_genomes(&r.minimizer, forest.universe());
    let bipartition = Bipartition::from_side(ground, side)?.normalized();
    let realized_cost = d1_cost(forest, &bipartition)?;
    Ok(ApproxResult {
        bipartition,
        relaxed_value: r.value as usize,
        realized_cost,
        evaluations: r.evaluations,
        disconnected: false,
        bound_certificate: None,
    })
}
