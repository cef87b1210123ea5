//! Edge-labeled genome graphs H(F) and I(F), their cut label-sizes, and the
//! set-function oracles that evaluate those cuts without materializing edges.
//!
//! A graph is stored as cliques ("hyperedges") per vertex label: every pair
//! of distinct genomes inside one clique is an edge carrying that label. A
//! cut crosses some edge of a clique exactly when the clique straddles the
//! cut, which is what the oracles test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::sfm::SetFunction;
use crate::trees::{Bipartition, GeneForest, GenomeId, GenomeTable, LabelSet, Partition, VertexLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// Pairs inside each child's label set.
    H,
    /// As H, plus pairs inside L(x) for vertices that are not apparent duplications.
    I,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::H => "H",
            GraphKind::I => "I",
        }
    }
}

/// Edge `u -- v` with `u < v`, labeled by an internal vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledEdge {
    pub u: GenomeId,
    pub v: GenomeId,
    pub label: VertexLabel,
}

#[derive(Clone, Debug)]
pub struct EdgeLabeledMultigraph {
    kind: GraphKind,
    vertices: LabelSet,
    hyperedges: BTreeMap<VertexLabel, Vec<LabelSet>>,
}

impl EdgeLabeledMultigraph {
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertices(&self) -> &LabelSet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Generating cliques per label; only labels that carry at least one edge appear.
    pub fn hyperedges(&self) -> &BTreeMap<VertexLabel, Vec<LabelSet>> {
        &self.hyperedges
    }

    pub fn labels(&self) -> impl Iterator<Item = VertexLabel> + '_ {
        self.hyperedges.keys().copied()
    }

    pub fn label_count(&self) -> usize {
        self.hyperedges.len()
    }

    /// Every distinct `(pair, label)` edge, sorted by `(u, v, label)`.
    pub fn edges(&self) -> Vec<LabeledEdge> {
        let mut out = BTreeSet::new();
        for (&label, cliques) in &self.hyperedges {
            for clique in cliques {
                let members = clique.to_vec();
                for (i, &u) in members.iter().enumerate() {
                    for &v in &members[i + 1..] {
                        out.insert(LabeledEdge { u, v, label });
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Number of distinct unordered vertex pairs joined by at least one edge.
    pub fn adjacent_pair_count(&self) -> usize {
        self.edges().iter().map(|e| (e.u, e.v)).collect::<BTreeSet<_>>().len()
    }
}

fn push_clique(cliques: &mut Vec<LabelSet>, set: &LabelSet) {
    if set.len() >= 2 && !cliques.contains(set) {
        cliques.push(set.clone());
    }
}

fn build(forest: &GeneForest, kind: GraphKind) -> EdgeLabeledMultigraph {
    let mut hyperedges = BTreeMap::new();
    for v in forest.internal_vertices() {
        let mut cliques = Vec::new();
        match kind {
            GraphKind::I if !v.is_apparent_duplication() => push_clique(&mut cliques, v.labels),
            _ => {
                push_clique(&mut cliques, v.left);
                push_clique(&mut cliques, v.right);
            }
        }
        if !cliques.is_empty() {
            hyperedges.insert(v.label, cliques);
        }
    }
    EdgeLabeledMultigraph {
        kind,
        vertices: forest.ground().clone(),
        hyperedges,
    }
}

/// H(F): for each internal x labeled a, all pairs within L(x_l) and within L(x_r).
pub fn build_h(forest: &GeneForest) -> EdgeLabeledMultigraph {
    build(forest, GraphKind::H)
}

/// I(F): as H(F), except non-apparent-duplication vertices contribute all
/// pairs of L(x), which subsumes the pairs inside each child.
pub fn build_i(forest: &GeneForest) -> EdgeLabeledMultigraph {
    build(forest, GraphKind::I)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutEvaluation {
    pub crossing_labels: BTreeSet<VertexLabel>,
    pub label_size: usize,
}

/// Label-size of the edge-cut induced by `b`, by scanning the pair edges.
pub fn cut_label_size(g: &EdgeLabeledMultigraph, b: &Bipartition) -> Result<CutEvaluation> {
    if !g.vertices.is_subset(&b.ground()) {
        return Err(Error::GroundMismatch(
            "bipartition does not cover every graph vertex".into(),
        ));
    }
    let crossing_labels: BTreeSet<VertexLabel> = g
        .edges()
        .into_iter()
        .filter(|e| b.separates(e.u, e.v))
        .map(|e| e.label)
        .collect();
    Ok(CutEvaluation {
        label_size: crossing_labels.len(),
        crossing_labels,
    })
}

/// Connectivity classes of the vertex set, ignoring labels.
pub fn connected_components(g: &EdgeLabeledMultigraph) -> Partition {
    let mut uf: UnionFind<usize> = UnionFind::new(g.vertices.universe());
    for cliques in g.hyperedges.values() {
        for clique in cliques {
            let mut it = clique.iter();
            if let Some(first) = it.next() {
                for other in it {
                    uf.union(first.index(), other.index());
                }
            }
        }
    }
    Partition::from_key(&g.vertices, |x| uf.find(x.index()))
}

fn quoted(name: &str) -> String {
    format!("\"{name}\"")
}

/// Undirected DOT text: vertices sorted by name, edges by `(u, v, label)` on names.
pub fn export_dot(g: &EdgeLabeledMultigraph, names: &GenomeTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", g.kind.name());
    for name in names.sorted_names(&g.vertices) {
        let _ = writeln!(out, "  {};", quoted(name));
    }
    let mut edges: Vec<(&str, &str, VertexLabel)> = g
        .edges()
        .into_iter()
        .map(|e| {
            let (a, b) = (names.name(e.u), names.name(e.v));
            if a <= b {
                (a, b, e.label)
            } else {
                (b, a, e.label)
            }
        })
        .collect();
    edges.sort_unstable();
    for (a, b, label) in edges {
        let _ = writeln!(out, "  {} -- {} [label=\"{label}\"];", quoted(a), quoted(b));
    }
    out.push_str("}\n");
    out
}

/// How I(F) cliques are formed for apparent duplications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IForm {
    /// One clique L(x) for every vertex.
    Compact,
    /// The literal definition: child cliques for apparent duplications.
    Literal,
}

/// Cut-set function of an edge-labeled graph, as a set function over the
/// forest's ground set re-indexed to `0..n`.
///
/// `value(X)` is the number of labels with at least one straddling clique.
#[derive(Clone, Debug)]
pub struct CutFunction {
    members: Vec<GenomeId>,
    local_of: Vec<Option<usize>>,
    groups: Vec<Vec<LabelSet>>,
}

impl CutFunction {
    /// f(H(F)).
    pub fn h(forest: &GeneForest) -> Self {
        Self::from_forest(forest, |v, out| {
            out.push(v.left.clone());
            out.push(v.right.clone());
        })
    }

    /// f(I(F)).
    pub fn i(forest: &GeneForest, form: IForm) -> Self {
        Self::from_forest(forest, |v, out| {
            if form == IForm::Literal && v.is_apparent_duplication() {
                out.push(v.left.clone());
                out.push(v.right.clone());
            } else {
                out.push(v.labels.clone());
            }
        })
    }

    fn from_forest<F>(forest: &GeneForest, mut cliques: F) -> Self
    where
        F: FnMut(&crate::trees::InternalVertex<'_>, &mut Vec<LabelSet>),
    {
        let members = forest.ground().to_vec();
        let mut local_of = vec![None; forest.universe()];
        for (i, g) in members.iter().enumerate() {
            local_of[g.index()] = Some(i);
        }
        let n = members.len();
        let mut groups = Vec::with_capacity(forest.internal_count());
        for v in forest.internal_vertices() {
            let mut raw = Vec::new();
            cliques(&v, &mut raw);
            let local: Vec<LabelSet> = raw
                .iter()
                .filter(|s| s.len() >= 2)
                .map(|s| LabelSet::from_ids(n, s.iter().map(|g| GenomeId::from(local_of[g.index()].unwrap()))))
                .collect();
            if !local.is_empty() {
                groups.push(local);
            }
        }
        CutFunction {
            members,
            local_of,
            groups,
        }
    }

    /// A hypergraph cut function: one label per clique.
    pub fn from_hyperedges(n: usize, hyperedges: Vec<LabelSet>) -> Self {
        CutFunction {
            members: (0..n).map(GenomeId::from).collect(),
            local_of: (0..n).map(Some).collect(),
            groups: hyperedges.into_iter().map(|h| vec![h]).collect(),
        }
    }

    /// Ground genomes in local index order.
    pub fn members(&self) -> &[GenomeId] {
        &self.members
    }

    pub fn to_local(&self, genomes: &LabelSet) -> Result<LabelSet> {
        let mut out = LabelSet::empty(self.members.len());
        for g in genomes.iter() {
            match self.local_of.get(g.index()).copied().flatten() {
                Some(i) => out.insert(GenomeId::from(i)),
                None => return Err(Error::GroundMismatch("set is not contained in L(F)".into())),
            }
        }
        Ok(out)
    }

    pub fn to_genomes(&self, local: &LabelSet, universe: usize) -> LabelSet {
        LabelSet::from_ids(universe, local.iter().map(|i| self.members[i.index()]))
    }
}

impl SetFunction for CutFunction {
    fn ground_size(&self) -> usize {
        self.members.len()
    }

    fn value(&self, set: &LabelSet) -> i64 {
        self.groups
            .iter()
            .filter(|cliques| cliques.iter().any(|c| c.straddles(set)))
            .count() as i64
    }

    fn is_symmetric(&self) -> bool {
        true
    }
}

/// f(H(F))(X): vertices with a child label set meeting both X and L(F) − X.
pub fn f_h(forest: &GeneForest, x: &LabelSet) -> Result<usize> {
    if !x.is_subset(forest.ground()) {
        return Err(Error::GroundMismatch("set is not contained in L(F)".into()));
    }
    Ok(forest
        .internal_vertices()
        .filter(|v| v.left.straddles(x) || v.right.straddles(x))
        .count())
}

/// f(I(F))(X): vertices whose own label set meets both X and L(F) − X.
///
/// For an apparent duplication the children overlap, so a set straddles one
/// of them iff it straddles their union; every vertex therefore reduces to
/// the single test on L(x).
pub fn f_i(forest: &GeneForest, x: &LabelSet) -> Result<usize> {
    if !x.is_subset(forest.ground()) {
        return Err(Error::GroundMismatch("set is not contained in L(F)".into()));
    }
    Ok(forest.internal_vertices().filter(|v| v.labels.straddles(x)).count())
}
