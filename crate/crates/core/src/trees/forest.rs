//! Gene trees and forests.
//!
//! Trees are arenas stored in pre-order, so node 0 is the root and every
//! parent precedes its children. Internal vertices carry a forest-wide
//! label in `1..=m`, assigned in pre-order across the trees in input order.

use std::sync::Arc;

use super::labelset::{GenomeId, GenomeTable, LabelSet};
use super::newick::write_newick;
use crate::error::{Error, Result};

pub type NodeId = usize;

/// Internal-vertex label, unique across a forest.
pub type VertexLabel = u32;

#[derive(Clone, Debug)]
pub struct GeneNode {
    pub parent: Option<NodeId>,
    children: Vec<NodeId>,
    pub leaf_genome: Option<GenomeId>,
    pub vertex_label: Option<VertexLabel>,
    pub labels: LabelSet,
}

impl GeneNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// `(left, right)` for internal vertices.
    pub fn children(&self) -> Option<(NodeId, NodeId)> {
        match self.children.as_slice() {
            [l, r] => Some((*l, *r)),
            _ => None,
        }
    }

    pub(crate) fn child_slice(&self) -> &[NodeId] {
        &self.children
    }
}

#[derive(Clone, Debug)]
pub struct GeneTree {
    nodes: Vec<GeneNode>,
}

impl GeneTree {
    pub fn root(&self) -> NodeId {
        0
    }

    pub fn nodes(&self) -> &[GeneNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &GeneNode {
        &self.nodes[id]
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    pub fn to_newick(&self, genomes: &GenomeTable) -> String {
        write_newick(
            self.root(),
            |n| self.nodes[n].child_slice(),
            |n| genomes.name(self.nodes[n].leaf_genome.expect("leaf")),
        )
    }

    pub(crate) fn labels(&self, id: NodeId) -> &LabelSet {
        &self.nodes[id].labels
    }
}

/// Incremental construction of a binary gene tree, bottom-up.
#[derive(Default)]
pub struct GeneTreeBuilder {
    children: Vec<Option<(NodeId, NodeId)>>,
    genome: Vec<Option<GenomeId>>,
}

impl GeneTreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, genome: GenomeId) -> NodeId {
        self.children.push(None);
        self.genome.push(Some(genome));
        self.children.len() - 1
    }

    pub fn join(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.children.push(Some((left, right)));
        self.genome.push(None);
        self.children.len() - 1
    }

    /// Keeps the nodes reachable from `root`, renumbered in pre-order.
    ///
    /// Label caches are filled in when the tree joins a forest.
    pub fn build(self, root: NodeId) -> GeneTree {
        let mut nodes: Vec<GeneNode> = Vec::new();
        let mut stack: Vec<(NodeId, Option<NodeId>)> = vec![(root, None)];
        while let Some((old, parent)) = stack.pop() {
            let id = nodes.len();
            nodes.push(GeneNode {
                parent,
                children: Vec::new(),
                leaf_genome: self.genome[old],
                vertex_label: None,
                labels: LabelSet::empty(0),
            });
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            if let Some((l, r)) = self.children[old] {
                stack.push((r, Some(id)));
                stack.push((l, Some(id)));
            }
        }
        GeneTree { nodes }
    }
}

/// A forest of binary gene trees over a shared genome table.
#[derive(Clone, Debug)]
pub struct GeneForest {
    genomes: Arc<GenomeTable>,
    trees: Vec<GeneTree>,
    ground: LabelSet,
    /// `vertex_index[label - 1] = (tree, node)`.
    vertex_index: Vec<(usize, NodeId)>,
}

impl GeneForest {
    /// Assigns vertex labels and fills the label caches.
    pub fn new(genomes: Arc<GenomeTable>, mut trees: Vec<GeneTree>) -> Self {
        let k = genomes.len();
        let mut ground = LabelSet::empty(k);
        let mut vertex_index = Vec::new();
        for (t, tree) in trees.iter_mut().enumerate() {
            for id in 0..tree.nodes.len() {
                if !tree.nodes[id].is_leaf() {
                    vertex_index.push((t, id));
                    tree.nodes[id].vertex_label = Some(vertex_index.len() as VertexLabel);
                }
            }
            // Reverse pre-order visits children before parents.
            for id in (0..tree.nodes.len()).rev() {
                let labels = match tree.nodes[id].children() {
                    None => {
                        let g = tree.nodes[id].leaf_genome.expect("leaf genome");
                        ground.insert(g);
                        LabelSet::singleton(k, g)
                    }
                    Some((l, r)) => tree.nodes[l].labels.union(&tree.nodes[r].labels),
                };
                tree.nodes[id].labels = labels;
            }
        }
        GeneForest {
            genomes,
            trees,
            ground,
            vertex_index,
        }
    }

    pub fn genomes(&self) -> &GenomeTable {
        &self.genomes
    }

    pub fn genomes_arc(&self) -> &Arc<GenomeTable> {
        &self.genomes
    }

    pub fn trees(&self) -> &[GeneTree] {
        &self.trees
    }

    /// L(F): genomes labeling at least one leaf.
    pub fn ground(&self) -> &LabelSet {
        &self.ground
    }

    /// Universe size of every label set in this forest.
    pub fn universe(&self) -> usize {
        self.genomes.len()
    }

    /// m: number of internal vertices.
    pub fn internal_count(&self) -> usize {
        self.vertex_index.len()
    }

    pub fn vertex_labels(&self) -> impl Iterator<Item = VertexLabel> {
        1..=self.vertex_index.len() as VertexLabel
    }

    /// Tree index and node of an internal vertex.
    pub fn locate(&self, label: VertexLabel) -> Result<(usize, NodeId)> {
        label
            .checked_sub(1)
            .and_then(|i| self.vertex_index.get(i as usize))
            .copied()
            .ok_or(Error::UnknownVertex(label))
    }

    pub fn vertex(&self, label: VertexLabel) -> Result<&GeneNode> {
        let (t, n) = self.locate(label)?;
        Ok(&self.trees[t].nodes[n])
    }

    /// Child label sets `(L(x_l), L(x_r))` of an internal vertex.
    pub fn child_labels(&self, label: VertexLabel) -> Result<(&LabelSet, &LabelSet)> {
        let (t, n) = self.locate(label)?;
        let tree = &self.trees[t];
        let (l, r) = tree.nodes[n].children().expect("internal vertex");
        Ok((tree.labels(l), tree.labels(r)))
    }

    pub fn parent_label(&self, label: VertexLabel) -> Result<Option<VertexLabel>> {
        let (t, n) = self.locate(label)?;
        let tree = &self.trees[t];
        Ok(tree.nodes[n]
            .parent
            .map(|p| tree.nodes[p].vertex_label.expect("internal parent")))
    }

    /// Iterates internal vertices in label order as `(label, L(x), L(x_l), L(x_r))`.
    pub fn internal_vertices(&self) -> impl Iterator<Item = InternalVertex<'_>> {
        self.vertex_index.iter().enumerate().map(move |(i, &(t, n))| {
            let tree = &self.trees[t];
            let node = &tree.nodes[n];
            let (l, r) = node.children().expect("internal vertex");
            InternalVertex {
                label: i as VertexLabel + 1,
                parent: node
                    .parent
                    .map(|p| tree.nodes[p].vertex_label.expect("internal parent")),
                labels: &node.labels,
                left: tree.labels(l),
                right: tree.labels(r),
            }
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(GeneTree::leaf_count).sum()
    }

    /// One line per tree, no trailing newline.
    pub fn to_newick(&self) -> Result<String> {
        if self.trees.is_empty() {
            return Err(Error::EmptyForest);
        }
        let lines: Vec<String> = self.trees.iter().map(|t| t.to_newick(&self.genomes)).collect();
        Ok(lines.join("\n"))
    }
}

/// Borrowed view of one internal vertex.
#[derive(Clone, Copy, Debug)]
pub struct InternalVertex<'a> {
    pub label: VertexLabel,
    pub parent: Option<VertexLabel>,
    pub labels: &'a LabelSet,
    pub left: &'a LabelSet,
    pub right: &'a LabelSet,
}

impl InternalVertex<'_> {
    /// L(x_l) ∩ L(x_r) ≠ ∅.
    pub fn is_apparent_duplication(&self) -> bool {
        self.left.intersects(self.right)
    }
}
