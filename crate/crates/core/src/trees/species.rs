//! Species trees (possibly multifurcating) and bipartitions.

use std::sync::Arc;

use super::forest::NodeId;
use super::labelset::{GenomeId, GenomeTable, LabelSet};
use super::newick::write_newick;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SpeciesNode {
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub leaf_genome: Option<GenomeId>,
    pub labels: LabelSet,
    pub depth: usize,
}

/// A rooted species tree, one leaf per genome.
#[derive(Clone, Debug)]
pub struct SpeciesTree {
    genomes: Arc<GenomeTable>,
    nodes: Vec<SpeciesNode>,
    root: NodeId,
    leaf_of: Vec<Option<NodeId>>,
}

impl SpeciesTree {
    pub fn genomes(&self) -> &GenomeTable {
        &self.genomes
    }

    pub fn genomes_arc(&self) -> &Arc<GenomeTable> {
        &self.genomes
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn nodes(&self) -> &[SpeciesNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &SpeciesNode {
        &self.nodes[id]
    }

    /// Genomes labeling the leaves.
    pub fn ground(&self) -> &LabelSet {
        &self.nodes[self.root].labels
    }

    pub fn leaf(&self, genome: GenomeId) -> Option<NodeId> {
        self.leaf_of.get(genome.index()).copied().flatten()
    }

    pub fn leaf_by_name(&self, name: &str) -> Option<NodeId> {
        self.genomes.get(name).and_then(|g| self.leaf(g))
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.children.is_empty()).count()
    }

    pub fn lca(&self, mut a: NodeId, mut b: NodeId) -> NodeId {
        while self.nodes[a].depth > self.nodes[b].depth {
            a = self.nodes[a].parent.expect("non-root");
        }
        while self.nodes[b].depth > self.nodes[a].depth {
            b = self.nodes[b].parent.expect("non-root");
        }
        while a != b {
            a = self.nodes[a].parent.expect("non-root");
            b = self.nodes[b].parent.expect("non-root");
        }
        a
    }

    pub fn to_newick(&self) -> String {
        write_newick(
            self.root,
            |n| &self.nodes[n].children,
            |n| self.genomes.name(self.nodes[n].leaf_genome.expect("leaf")),
        )
    }

    /// The three-internal-vertex tree of a bipartition: a root whose two
    /// children are the sides, each flattened into a star (or a bare leaf).
    pub fn from_bipartition(genomes: Arc<GenomeTable>, b: &Bipartition) -> Result<Self> {
        let mut builder = SpeciesTreeBuilder::new();
        let mut side = |s: &LabelSet| {
            let leaves: Vec<NodeId> = s.iter().map(|g| builder.leaf(g)).collect();
            if leaves.len() == 1 {
                leaves[0]
            } else {
                builder.node(leaves)
            }
        };
        let l = side(b.left());
        let r = side(b.right());
        let root = builder.node(vec![l, r]);
        builder.build(genomes, root)
    }
}

#[derive(Default)]
pub struct SpeciesTreeBuilder {
    children: Vec<Vec<NodeId>>,
    genome: Vec<Option<GenomeId>>,
}

impl SpeciesTreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, genome: GenomeId) -> NodeId {
        self.children.push(Vec::new());
        self.genome.push(Some(genome));
        self.children.len() - 1
    }

    pub fn node(&mut self, children: Vec<NodeId>) -> NodeId {
        self.children.push(children);
        self.genome.push(None);
        self.children.len() - 1
    }

    /// Validates the shape (distinct leaves, no unary vertices) and fills caches.
    pub fn build(self, genomes: Arc<GenomeTable>, root: NodeId) -> Result<SpeciesTree> {
        let k = genomes.len();
        let mut nodes: Vec<SpeciesNode> = Vec::new();
        let mut leaf_of = vec![None; k];
        let mut stack: Vec<(NodeId, Option<NodeId>)> = vec![(root, None)];
        while let Some((old, parent)) = stack.pop() {
            let id = nodes.len();
            let depth = parent.map_or(0, |p| nodes[p].depth + 1);
            let kids = &self.children[old];
            if kids.len() == 1 {
                return Err(Error::UnaryVertex { line: 0, column: 0 });
            }
            if let Some(g) = self.genome[old] {
                if leaf_of[g.index()].replace(id).is_some() {
                    return Err(Error::DuplicateSpeciesLeaf(genomes.name(g).to_string()));
                }
            }
            nodes.push(SpeciesNode {
                parent,
                children: Vec::new(),
                leaf_genome: self.genome[old],
                labels: LabelSet::empty(k),
                depth,
            });
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            for &c in kids.iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        for id in (0..nodes.len()).rev() {
            let labels = match nodes[id].leaf_genome {
                Some(g) => LabelSet::singleton(k, g),
                None => {
                    let mut acc = LabelSet::empty(k);
                    for &c in &nodes[id].children {
                        acc.union_with(&nodes[c].labels);
                    }
                    acc
                }
            };
            nodes[id].labels = labels;
        }
        Ok(SpeciesTree {
            genomes,
            nodes,
            root: 0,
            leaf_of,
        })
    }
}

/// A first speciation: two disjoint nonempty sides covering `ground`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    left: LabelSet,
    right: LabelSet,
}

impl Bipartition {
    pub fn new(left: LabelSet, right: LabelSet) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidBipartition("both sides must be nonempty".into()));
        }
        if left.intersects(&right) {
            return Err(Error::InvalidBipartition("sides overlap".into()));
        }
        Ok(Bipartition { left, right })
    }

    /// `left` against its complement within `ground`.
    pub fn from_side(ground: &LabelSet, left: LabelSet) -> Result<Self> {
        if !left.is_subset(ground) {
            return Err(Error::GroundMismatch("side is not contained in the ground set".into()));
        }
        let right = ground.difference(&left);
        Self::new(left, right)
    }

    pub fn left(&self) -> &LabelSet {
        &self.left
    }

    pub fn right(&self) -> &LabelSet {
        &self.right
    }

    pub fn ground(&self) -> LabelSet {
        self.left.union(&self.right)
    }

    pub fn swapped(&self) -> Self {
        Bipartition {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// Puts the side holding the smallest genome id on the left.
    pub fn normalized(self) -> Self {
        if self.left.first() < self.right.first() {
            self
        } else {
            self.swapped()
        }
    }

    pub fn separates(&self, a: GenomeId, b: GenomeId) -> bool {
        self.left.contains(a) != self.left.contains(b)
    }

    pub(crate) fn check_ground(&self, ground: &LabelSet) -> Result<()> {
        if self.ground() != *ground {
            return Err(Error::GroundMismatch(
                "bipartition does not cover exactly the forest's genomes".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::newick::parse_species_tree;
    use super::*;

    #[test]
    fn bipartition_tree_shape() {
        let table = Arc::new(GenomeTable::from_names(["a", "b", "c"]).unwrap());
        let left = LabelSet::from_ids(3, [GenomeId(0), GenomeId(1)]);
        let b = Bipartition::from_side(&LabelSet::full(3), left).unwrap();
        let s = SpeciesTree::from_bipartition(table, &b).unwrap();
        assert_eq!(s.to_newick(), "((a,b),c);");
        assert_eq!(s.internal_count(), 2);
    }

    #[test]
    fn bipartition_validation() {
        let full = LabelSet::full(3);
        assert!(Bipartition::from_side(&full, LabelSet::empty(3)).is_err());
        assert!(Bipartition::from_side(&full, full.clone()).is_err());
        let a = LabelSet::singleton(3, GenomeId(0));
        assert!(Bipartition::new(a.clone(), a.clone()).is_err());
        let b = Bipartition::from_side(&full, LabelSet::singleton(3, GenomeId(2))).unwrap();
        assert_eq!(b.clone().normalized(), b.swapped());
    }

    #[test]
    fn lca_on_multifurcation() {
        let s = parse_species_tree("((a,b,c),(d,e));").unwrap();
        let leaf = |n: &str| s.leaf_by_name(n).unwrap();
        let abc = s.lca(leaf("a"), leaf("c"));
        assert_eq!(s.genomes().sorted_names(&s.node(abc).labels), vec!["a", "b", "c"]);
        assert_eq!(s.lca(leaf("b"), leaf("e")), s.root());
        assert_eq!(s.lca(leaf("d"), leaf("d")), leaf("d"));
    }
}
