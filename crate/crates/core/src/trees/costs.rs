//! LCA mapping, duplication costs, and the bipartition-driven forest split.

use std::collections::BTreeSet;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::forest::{GeneForest, GeneTree, GeneTreeBuilder, NodeId, VertexLabel};
use super::labelset::GenomeId;
use super::partition::{Partition, Prefix};
use super::species::{Bipartition, SpeciesTree};
use crate::error::{Error, Result};

pub fn is_apparent_duplication(forest: &GeneForest, label: VertexLabel) -> Result<bool> {
    let (l, r) = forest.child_labels(label)?;
    Ok(l.intersects(r))
}

/// Images of every gene node under the LCA mapping, indexed `[tree][node]`.
#[derive(Clone, Debug)]
pub struct LcaMapping {
    images: Vec<Vec<NodeId>>,
}

impl LcaMapping {
    pub fn image(&self, tree: usize, node: NodeId) -> NodeId {
        self.images[tree][node]
    }

    pub fn image_of_vertex(&self, forest: &GeneForest, label: VertexLabel) -> Result<NodeId> {
        let (t, n) = forest.locate(label)?;
        Ok(self.images[t][n])
    }
}

/// Maps every gene node to the lowest species node whose leaf set contains its labels.
///
/// Genomes are matched by name, so the forest and species tree may use
/// different tables.
pub fn lca_mapping(forest: &GeneForest, species: &SpeciesTree) -> Result<LcaMapping> {
    let same_table = Arc::ptr_eq(forest.genomes_arc(), species.genomes_arc());
    let leaf_for = |g: GenomeId| -> Result<NodeId> {
        let found = if same_table {
            species.leaf(g)
        } else {
            species.leaf_by_name(forest.genomes().name(g))
        };
        found.ok_or_else(|| Error::GenomeNotInSpecies(forest.genomes().name(g).to_string()))
    };
    let mut images = Vec::with_capacity(forest.trees().len());
    for tree in forest.trees() {
        let mut img = vec![0; tree.nodes().len()];
        for id in (0..tree.nodes().len()).rev() {
            let node = tree.node(id);
            img[id] = match node.children() {
                None => leaf_for(node.leaf_genome.expect("leaf genome"))?,
                Some((l, r)) => species.lca(img[l], img[r]),
            };
        }
        images.push(img);
    }
    Ok(LcaMapping { images })
}

/// Internal vertices x with M(x) = M(x_l) or M(x) = M(x_r), in label order.
pub fn duplication_vertices(forest: &GeneForest, species: &SpeciesTree) -> Result<Vec<VertexLabel>> {
    let map = lca_mapping(forest, species)?;
    let mut out = Vec::new();
    for (t, tree) in forest.trees().iter().enumerate() {
        for (id, node) in tree.nodes().iter().enumerate() {
            if let Some((l, r)) = node.children() {
                let m = map.image(t, id);
                if m == map.image(t, l) || m == map.image(t, r) {
                    out.push(node.vertex_label.expect("internal"));
                }
            }
        }
    }
    Ok(out)
}

/// d(F, S).
pub fn duplication_count(forest: &GeneForest, species: &SpeciesTree) -> Result<usize> {
    Ok(duplication_vertices(forest, species)?.len())
}

/// Duplications preceding the first speciation of `b`: vertices with a child
/// label set meeting both sides.
pub fn duplications_preceding(forest: &GeneForest, b: &Bipartition) -> Result<Prefix> {
    b.check_ground(forest.ground())?;
    let side = b.left();
    let vertices: BTreeSet<VertexLabel> = forest
        .internal_vertices()
        .filter(|v| v.left.straddles(side) || v.right.straddles(side))
        .map(|v| v.label)
        .collect();
    Ok(Prefix::from_sorted_unchecked(vertices))
}

/// d₁(F, B).
pub fn d1_cost(forest: &GeneForest, b: &Bipartition) -> Result<usize> {
    Ok(duplications_preceding(forest, b)?.len())
}

fn copy_subtree(tree: &GeneTree, root: NodeId) -> GeneTree {
    let mut builder = GeneTreeBuilder::new();
    let mut ids: Vec<Option<NodeId>> = vec![None; tree.nodes().len()];
    // Arena is pre-order, so a reverse scan of the subtree range sees children first.
    let mut members = vec![root];
    let mut i = 0;
    while i < members.len() {
        if let Some((l, r)) = tree.node(members[i]).children() {
            members.push(l);
            members.push(r);
        }
        i += 1;
    }
    members.sort_unstable();
    for &n in members.iter().rev() {
        let node = tree.node(n);
        ids[n] = Some(match node.children() {
            None => builder.leaf(node.leaf_genome.expect("leaf")),
            Some((l, r)) => builder.join(ids[l].expect("child"), ids[r].expect("child")),
        });
    }
    builder.build(ids[root].expect("root"))
}

/// Removes every vertex whose label set meets both sides and sorts the
/// surviving complete subtrees into a left and a right forest.
pub fn split_forest(forest: &GeneForest, b: &Bipartition) -> Result<(GeneForest, GeneForest)> {
    b.check_ground(forest.ground())?;
    let side = b.left();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for tree in forest.trees() {
        let removed: Vec<bool> = tree.nodes().iter().map(|n| n.labels.straddles(side)).collect();
        for (id, node) in tree.nodes().iter().enumerate() {
            let top = !removed[id] && node.parent.is_none_or(|p| removed[p]);
            if top {
                let sub = copy_subtree(tree, id);
                if node.labels.is_subset(side) {
                    left.push(sub);
                } else {
                    right.push(sub);
                }
            }
        }
    }
    let genomes = forest.genomes_arc().clone();
    Ok((GeneForest::new(genomes.clone(), left), GeneForest::new(genomes, right)))
}

/// P(I): components of H(F) once the edges labeled by `prefix` are gone.
pub fn partition_from_prefix(forest: &GeneForest, prefix: &Prefix) -> Result<Partition> {
    let checked = Prefix::new(forest, prefix.iter())?;
    let mut uf: UnionFind<usize> = UnionFind::new(forest.universe());
    for v in forest.internal_vertices() {
        if checked.contains(v.label) {
            continue;
        }
        for child in [v.left, v.right] {
            let mut members = child.iter();
            if let Some(first) = members.next() {
                for g in members {
                    uf.union(first.index(), g.index());
                }
            }
        }
    }
    Ok(Partition::from_key(forest.ground(), |g| uf.find(g.index())))
}

#[cfg(test)]
mod tests {
    use super::super::labelset::LabelSet;
    use super::super::newick::{parse_newick_forest, parse_species_tree};
    use super::*;

    fn forest(text: &str) -> GeneForest {
        parse_newick_forest(text).unwrap()
    }

    fn side(f: &GeneForest, names: &[&str]) -> Bipartition {
        let left = LabelSet::from_ids(f.universe(), names.iter().map(|n| f.genomes().get(n).unwrap()));
        Bipartition::from_side(f.ground(), left).unwrap()
    }

    fn names(f: &GeneForest, p: &Partition) -> Vec<Vec<String>> {
        p.to_names(f.genomes())
    }

    #[test]
    fn apparent_duplications() {
        let f = forest("((a,b),(a,c));");
        assert!(is_apparent_duplication(&f, 1).unwrap());
        assert!(!is_apparent_duplication(&f, 2).unwrap());
        assert!(!is_apparent_duplication(&forest("((a,b),(c,d));"), 1).unwrap());
        assert!(is_apparent_duplication(&forest("(a,a);"), 1).unwrap());
        assert_eq!(is_apparent_duplication(&f, 9), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn lca_images_by_hand() {
        let f = forest("((a,b),(a,c));");
        let s = parse_species_tree("((a,b),c);").unwrap();
        let map = lca_mapping(&f, &s).unwrap();
        let ab = s.lca(s.leaf_by_name("a").unwrap(), s.leaf_by_name("b").unwrap());
        assert_eq!(map.image_of_vertex(&f, 1).unwrap(), s.root());
        assert_eq!(map.image_of_vertex(&f, 2).unwrap(), ab);
        assert_eq!(map.image_of_vertex(&f, 3).unwrap(), s.root());
        assert_eq!(duplication_vertices(&f, &s).unwrap(), vec![1]);

        let leaf = forest("a;");
        let m = lca_mapping(&leaf, &s).unwrap();
        assert_eq!(m.image(0, 0), s.leaf_by_name("a").unwrap());

        let cherry = forest("(a,b);");
        let split = parse_species_tree("(a,b);").unwrap();
        assert_eq!(lca_mapping(&cherry, &split).unwrap().image(0, 0), split.root());
    }

    #[test]
    fn duplication_counts() {
        let s = parse_species_tree("((a,b),c);").unwrap();
        assert_eq!(duplication_count(&forest("((a,b),(a,c));"), &s).unwrap(), 1);
        assert_eq!(duplication_count(&forest("(a,b);"), &s).unwrap(), 0);
        assert_eq!(duplication_count(&forest("(a,a);"), &s).unwrap(), 1);
        let missing = parse_species_tree("(a,b);").unwrap();
        assert_eq!(
            duplication_count(&forest("((a,b),(a,c));"), &missing),
            Err(Error::GenomeNotInSpecies("c".into()))
        );
    }

    #[test]
    fn d1_examples() {
        let f = forest("((a,b),(a,c));");
        assert_eq!(d1_cost(&f, &side(&f, &["a", "b"])).unwrap(), 1);
        let f2 = forest("(a,b);");
        assert_eq!(d1_cost(&f2, &side(&f2, &["a"])).unwrap(), 0);
        let f3 = forest("((a,a),b);");
        assert_eq!(d1_cost(&f3, &side(&f3, &["a"])).unwrap(), 0);
    }

    #[test]
    fn preceding_prefixes() {
        let f = forest("((a,b),(a,c));");
        let p = duplications_preceding(&f, &side(&f, &["a", "b"])).unwrap();
        assert_eq!(p.iter().collect::<Vec<_>>(), vec![1]);
        let f2 = forest("(a,b);");
        assert!(duplications_preceding(&f2, &side(&f2, &["a"])).unwrap().is_empty());
        let f3 = forest("((a,c),(b,c));");
        let p3 = duplications_preceding(&f3, &side(&f3, &["a", "b"])).unwrap();
        // The cherries' children are single leaves; only the root has straddling children.
        assert_eq!(p3.iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn ground_mismatch_is_reported() {
        let f = forest("((a,b),(a,c));");
        let other = forest("((a,b),(c,d));");
        let b = side(&other, &["a", "b"]);
        assert!(matches!(d1_cost(&f, &b), Err(Error::GroundMismatch(_))));
        assert!(matches!(split_forest(&f, &b), Err(Error::GroundMismatch(_))));
    }

    #[test]
    fn split_examples() {
        let f = forest("((a,b),(a,c));");
        let (l, r) = split_forest(&f, &side(&f, &["a", "b"])).unwrap();
        assert_eq!(l.to_newick().unwrap(), "(a,b);\na;");
        assert_eq!(r.to_newick().unwrap(), "c;");

        let f = forest("((a,b),(c,d));");
        let (l, r) = split_forest(&f, &side(&f, &["a", "b"])).unwrap();
        assert_eq!(l.to_newick().unwrap(), "(a,b);");
        assert_eq!(r.to_newick().unwrap(), "(c,d);");

        let f = forest("(a,b);");
        let (l, r) = split_forest(&f, &side(&f, &["a"])).unwrap();
        assert_eq!(l.to_newick().unwrap(), "a;");
        assert_eq!(r.to_newick().unwrap(), "b;");
    }

    #[test]
    fn prefix_partitions() {
        let f = forest("((a,b),(a,c));");
        let p = partition_from_prefix(&f, &Prefix::new(&f, [1]).unwrap()).unwrap();
        assert_eq!(names(&f, &p), vec![vec!["a"], vec!["b"], vec!["c"]]);
        let p0 = partition_from_prefix(&f, &Prefix::empty()).unwrap();
        assert_eq!(p0.len(), 1);

        let f = forest("((a,b),(c,d));");
        let p = partition_from_prefix(&f, &Prefix::empty()).unwrap();
        assert_eq!(names(&f, &p), vec![vec!["a", "b"], vec!["c", "d"]]);

        assert_eq!(Prefix::new(&f, [2]), Err(Error::NotAncestorClosed(2)));
    }
}
