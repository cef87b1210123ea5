//! Word-sized view of a forest for exhaustive searches (ground set ≤ 64).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::trees::{Bipartition, GeneForest, GenomeId, LabelSet, Partition, VertexLabel};

#[derive(Clone, Copy, Debug)]
pub(crate) struct CompiledVertex {
    pub label: VertexLabel,
    /// Index of the parent in `Compiled::vertices`.
    pub parent: Option<usize>,
    pub left: u64,
    pub right: u64,
}

#[inline]
pub(crate) fn straddles(set: u64, side: u64) -> bool {
    set & side != 0 && set & !side != 0
}

pub(crate) struct Compiled {
    pub n: usize,
    pub full: u64,
    pub universe: usize,
    members: Vec<GenomeId>,
    /// Position of each local element in name order.
    name_rank: Vec<usize>,
    pub vertices: Vec<CompiledVertex>,
}

impl Compiled {
    pub fn new(forest: &GeneForest, limit: usize, what: &'static str) -> Result<Self> {
        let members = forest.ground().to_vec();
        let n = members.len();
        if n < 2 {
            return Err(Error::TooFewGenomes(n));
        }
        if n > limit {
            return Err(Error::LimitExceeded { what, size: n, limit });
        }
        let mut local_of = vec![usize::MAX; forest.universe()];
        for (i, g) in members.iter().enumerate() {
            local_of[g.index()] = i;
        }
        let mask = |s: &LabelSet| s.iter().fold(0u64, |m, g| m | 1 << local_of[g.index()]);
        let vertices = forest
            .internal_vertices()
            .map(|v| CompiledVertex {
                label: v.label,
                parent: v.parent.map(|p| p as usize - 1),
                left: mask(v.left),
                right: mask(v.right),
            })
            .collect();
        let mut by_name: Vec<usize> = (0..n).collect();
        by_name.sort_by(|&a, &b| forest.genomes().name(members[a]).cmp(forest.genomes().name(members[b])));
        let mut name_rank = vec![0; n];
        for (rank, &i) in by_name.iter().enumerate() {
            name_rank[i] = rank;
        }
        Ok(Compiled {
            n,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            universe: forest.universe(),
            members,
            name_rank,
            vertices,
        })
    }

    /// d₁ of the bipartition `side | full − side`.
    pub fn d1(&self, side: u64) -> usize {
        self.vertices
            .iter()
            .filter(|v| straddles(v.left, side) || straddles(v.right, side))
            .count()
    }

    /// Orders sides by their sorted genome names.
    pub fn lex_cmp(&self, a: u64, b: u64) -> Ordering {
        self.name_key(a).cmp(&self.name_key(b))
    }

    fn name_key(&self, side: u64) -> Vec<usize> {
        let mut ranks: Vec<usize> = (0..self.n)
            .filter(|&i| side >> i & 1 == 1)
            .map(|i| self.name_rank[i])
            .collect();
        ranks.sort_unstable();
        ranks
    }

    pub fn to_labelset(&self, side: u64) -> LabelSet {
        LabelSet::from_ids(
            self.universe,
            (0..self.n).filter(|&i| side >> i & 1 == 1).map(|i| self.members[i]),
        )
    }

    pub fn bipartition(&self, side: u64) -> Bipartition {
        Bipartition::new(self.to_labelset(side), self.to_labelset(self.full & !side)).expect("proper side")
    }

    pub fn partition(&self, components: &[u64]) -> Partition {
        let ground = self.to_labelset(self.full);
        let parts = components.iter().map(|&c| self.to_labelset(c)).collect();
        Partition::new(&ground, parts).expect("components partition the ground set")
    }
}
