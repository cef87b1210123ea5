//! Dense genome identifiers, the name table, and bitset-backed label sets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Dense genome index in `0..k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenomeId(pub u32);

impl GenomeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for GenomeId {
    fn from(i: usize) -> Self {
        GenomeId(i as u32)
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-'))
}

/// Bijection between genome names and dense ids, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenomeTable {
    names: Vec<String>,
    index: HashMap<String, GenomeId>,
}

impl GenomeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut table = Self::new();
        for name in names {
            let name = name.as_ref();
            if table.get(name).is_some() {
                return Err(Error::InvalidName(format!("{name} (duplicate)")));
            }
            table.intern(name)?;
        }
        Ok(table)
    }

    /// Returns the id of `name`, adding it if unseen.
    pub fn intern(&mut self, name: &str) -> Result<GenomeId> {
        if let Some(&id) = self.index.get(name) {
            return Ok(id);
        }
        if !valid_name(name) {
            return Err(Error::InvalidName(name.to_string()));
        }
        let id = GenomeId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn get(&self, name: &str) -> Option<GenomeId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: GenomeId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Sorted names of the members of `set`.
    pub fn sorted_names(&self, set: &LabelSet) -> Vec<&str> {
        let mut out: Vec<&str> = set.iter().map(|g| self.name(g)).collect();
        out.sort_unstable();
        out
    }
}

/// A set of genomes over a fixed dense universe.
///
/// Two sets compare equal only when they have the same members; the universe
/// size is carried for complement-style operations but sets built over the
/// same table always share it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabelSet {
    bits: FixedBitSet,
}

impl LabelSet {
    pub fn empty(universe: usize) -> Self {
        LabelSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        LabelSet { bits }
    }

    pub fn singleton(universe: usize, id: GenomeId) -> Self {
        let mut s = Self::empty(universe);
        s.insert(id);
        s
    }

    pub fn from_ids<I: IntoIterator<Item = GenomeId>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Builds the set whose members are the set bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        let mut s = Self::empty(universe);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s.bits.insert(i);
            m &= m - 1;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, id: GenomeId) {
        self.bits.insert(id.index());
    }

    pub fn remove(&mut self, id: GenomeId) {
        self.bits.set(id.index(), false);
    }

    pub fn contains(&self, id: GenomeId) -> bool {
        self.bits.contains(id.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn first(&self) -> Option<GenomeId> {
        self.bits.ones().next().map(GenomeId::from)
    }

    pub fn iter(&self) -> impl Iterator<Item = GenomeId> + '_ {
        self.bits.ones().map(GenomeId::from)
    }

    pub fn to_vec(&self) -> Vec<GenomeId> {
        self.iter().collect()
    }

    pub fn union(&self, other: &LabelSet) -> LabelSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &LabelSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &LabelSet) -> LabelSet {
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn difference(&self, other: &LabelSet) -> LabelSet {
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        out
    }

    pub fn is_subset(&self, other: &LabelSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &LabelSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &LabelSet) -> bool {
        !self.is_disjoint(other)
    }

    /// True when `self` has members both inside and outside `side`.
    pub fn straddles(&self, side: &LabelSet) -> bool {
        self.intersects(side) && !self.is_subset(side)
    }

    /// Lexicographic order of the sorted member lists.
    pub fn lex_cmp(&self, other: &LabelSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u32]) -> LabelSet {
        LabelSet::from_ids(8, ids.iter().map(|&i| GenomeId(i)))
    }

    #[test]
    fn straddle_semantics() {
        let side = set(&[0, 1]);
        assert!(set(&[1, 2]).straddles(&side));
        assert!(!set(&[0, 1]).straddles(&side));
        assert!(!set(&[2, 3]).straddles(&side));
        assert!(!set(&[]).straddles(&side));
    }

    #[test]
    fn lexicographic_order_is_on_sorted_members() {
        assert_eq!(set(&[0]).lex_cmp(&set(&[0, 1])), Ordering::Less);
        assert_eq!(set(&[0, 1]).lex_cmp(&set(&[0, 2])), Ordering::Less);
        assert_eq!(set(&[0, 2]).lex_cmp(&set(&[1])), Ordering::Less);
        assert_eq!(set(&[3]).lex_cmp(&set(&[3])), Ordering::Equal);
    }

    #[test]
    fn mask_round_trip() {
        let s = LabelSet::from_mask(8, 0b1010_0101);
        assert_eq!(s.to_vec(), vec![GenomeId(0), GenomeId(2), GenomeId(5), GenomeId(7)]);
    }

    #[test]
    fn table_rejects_bad_names() {
        let mut t = GenomeTable::new();
        assert!(t.intern("ok_name-1.2").is_ok());
        assert!(matches!(t.intern("bad name"), Err(Error::InvalidName(_))));
        assert!(matches!(t.intern(""), Err(Error::InvalidName(_))));
        assert_eq!(t.intern("ok_name-1.2").unwrap(), GenomeId(0));
        assert!(GenomeTable::from_names(["a", "a"]).is_err());
    }
}
