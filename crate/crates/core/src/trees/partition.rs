use std::collections::{BTreeSet, HashMap};

use super::forest::{GeneForest, VertexLabel};
use super::labelset::{GenomeId, GenomeTable, LabelSet};
use crate::error::{Error, Result};

/// An ancestor-closed set of internal vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Prefix {
    vertices: BTreeSet<VertexLabel>,
}

impl Prefix {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks every label exists in `forest` and that the set is ancestor-closed.
    pub fn new<I: IntoIterator<Item = VertexLabel>>(forest: &GeneForest, labels: I) -> Result<Self> {
        let vertices: BTreeSet<VertexLabel> = labels.into_iter().collect();
        for &v in &vertices {
            if let Some(p) = forest.parent_label(v)? {
                if !vertices.contains(&p) {
                    return Err(Error::NotAncestorClosed(v));
                }
            }
        }
        Ok(Prefix { vertices })
    }

    pub(crate) fn from_sorted_unchecked(vertices: BTreeSet<VertexLabel>) -> Self {
        Prefix { vertices }
    }

    pub fn contains(&self, label: VertexLabel) -> bool {
        self.vertices.contains(&label)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexLabel> + '_ {
        self.vertices.iter().copied()
    }
}

/// A set partition of a ground set, parts ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<LabelSet>,
}

impl Partition {
    pub fn new(ground: &LabelSet, mut parts: Vec<LabelSet>) -> Result<Self> {
        let mut seen = LabelSet::empty(ground.universe());
        for part in &parts {
            if part.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            if part.intersects(&seen) {
                return Err(Error::InvalidPartition("parts overlap".into()));
            }
            seen.union_with(part);
        }
        if seen != *ground {
            return Err(Error::InvalidPartition("parts do not cover the ground set".into()));
        }
        parts.sort_by_key(|p| p.first());
        Ok(Partition { parts })
    }

    /// Groups `ground` by a per-genome key; equal keys share a part.
    pub fn from_key<K, F>(ground: &LabelSet, mut key: F) -> Self
    where
        K: std::hash::Hash + Eq,
        F: FnMut(GenomeId) -> K,
    {
        let mut by_key: HashMap<K, usize> = HashMap::new();
        let mut parts: Vec<LabelSet> = Vec::new();
        for g in ground.iter() {
            let slot = *by_key.entry(key(g)).or_insert_with(|| {
                parts.push(LabelSet::empty(ground.universe()));
                parts.len() - 1
            });
            parts[slot].insert(g);
        }
        // Ground iteration is ascending, so parts are already ordered by first member.
        Partition { parts }
    }

    pub fn parts(&self) -> &[LabelSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ground(&self) -> LabelSet {
        let universe = self.parts.first().map_or(0, LabelSet::universe);
        self.parts.iter().fold(LabelSet::empty(universe), |acc, p| acc.union(p))
    }

    pub fn part_of(&self, g: GenomeId) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(g))
    }

    pub fn same_part(&self, a: GenomeId, b: GenomeId) -> bool {
        match (self.part_of(a), self.part_of(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    /// Coarsest common refinement: two genomes share a part iff they do in both.
    pub fn meet(&self, other: &Partition) -> Partition {
        let ground = self.ground();
        Partition::from_key(&ground, |g| (self.part_of(g), other.part_of(g)))
    }

    /// Sorted names per part, parts sorted by their first name.
    pub fn to_names(&self, table: &GenomeTable) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .parts
            .iter()
            .map(|p| table.sorted_names(p).into_iter().map(str::to_string).collect())
            .collect();
        out.sort();
        out
    }
}
