//! Exact minimum prefix search by iterative deepening over ancestor-closed sets.
//!
//! Only vertices with a child label set of two or more genomes are
//! candidates: the others contribute no edge to H(F), and their presence in a
//! prefix only inflates its size.

use std::collections::BTreeSet;

use super::compiled::Compiled;
use super::SolverConfig;
use crate::error::{Error, Result};
use crate::trees::{GeneForest, Partition, Prefix, VertexLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixResult {
    /// The first optimal prefix in label order.
    pub prefix: Prefix,
    pub induced_partition: Partition,
    pub size: usize,
    pub prefixes_examined: u64,
}

struct Search<'a> {
    c: &'a Compiled,
    /// Indices into `c.vertices`, increasing.
    candidates: Vec<usize>,
    /// `(owner vertex index, clique mask)`.
    cliques: Vec<(usize, u64)>,
    chosen: Vec<bool>,
    examined: u64,
}

impl<'a> Search<'a> {
    fn new(c: &'a Compiled) -> Self {
        let mut candidates = Vec::new();
        let mut cliques = Vec::new();
        for (i, v) in c.vertices.iter().enumerate() {
            let mut bearing = false;
            for side in [v.left, v.right] {
                if side.count_ones() >= 2 {
                    cliques.push((i, side));
                    bearing = true;
                }
            }
            if bearing {
                candidates.push(i);
            }
        }
        Search {
            c,
            candidates,
            cliques,
            chosen: vec![false; c.vertices.len()],
            examined: 0,
        }
    }

    /// Genomes reachable from `seed` once the chosen vertices' edges are gone.
    fn closure(&self, seed: u64) -> u64 {
        let mut comp = seed;
        loop {
            let mut grown = comp;
            for &(owner, clique) in &self.cliques {
                if !self.chosen[owner] && clique & grown != 0 {
                    grown |= clique;
                }
            }
            if grown == comp {
                return comp;
            }
            comp = grown;
        }
    }

    fn components(&self) -> Vec<u64> {
        let mut rest = self.c.full;
        let mut parts = Vec::new();
        while rest != 0 {
            let comp = self.closure(rest & rest.wrapping_neg());
            parts.push(comp);
            rest &= !comp;
        }
        parts
    }

    fn splits(&self) -> bool {
        self.closure(1) != self.c.full
    }

    fn can_add(&self, v: usize) -> bool {
        self.c.vertices[v].parent.is_none_or(|p| self.chosen[p])
    }

    /// Visits every closed set of exactly `t` more candidates drawn from
    /// position `from` on. `visit` returns `false` to stop the search.
    fn walk(&mut self, from: usize, t: usize, visit: &mut dyn FnMut(&Self) -> bool) -> bool {
        if t == 0 {
            self.examined += 1;
            return visit(self);
        }
        for pos in from..self.candidates.len() {
            if self.candidates.len() - pos < t {
                break;
            }
            let v = self.candidates[pos];
            if !self.can_add(v) {
                continue;
            }
            self.chosen[v] = true;
            let go_on = self.walk(pos + 1, t - 1, visit);
            self.chosen[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn current(&self) -> Vec<usize> {
        (0..self.chosen.len()).filter(|&i| self.chosen[i]).collect()
    }

    /// Smallest size `d` admitting a splitting prefix, with every such prefix
    /// when `collect`, else just the first.
    fn run(&mut self, collect: bool) -> (usize, Vec<Vec<usize>>) {
        for t in 0..=self.candidates.len() {
            let mut found: Vec<Vec<usize>> = Vec::new();
            self.walk(0, t, &mut |s| {
                if s.splits() {
                    found.push(s.current());
                    return collect;
                }
                true
            });
            if !found.is_empty() {
                return (t, found);
            }
        }
        unreachable!("removing every edge-bearing vertex leaves singletons")
    }
}

fn compile(forest: &GeneForest, cfg: &SolverConfig) -> Result<Compiled> {
    cfg.validate()?;
    let c = Compiled::new(forest, cfg.exact_max_k, "genomes for prefix search")?;
    if c.vertices.len() > cfg.prefix_max_m {
        return Err(Error::LimitExceeded {
            what: "internal vertices for prefix search",
            size: c.vertices.len(),
            limit: cfg.prefix_max_m,
        });
    }
    Ok(c)
}

fn to_prefix(c: &Compiled, chosen: &[usize]) -> Prefix {
    Prefix::from_sorted_unchecked(
        chosen
            .iter()
            .map(|&i| c.vertices[i].label)
            .collect::<BTreeSet<VertexLabel>>(),
    )
}

/// Minimum-duplication partition problem: the smallest prefix whose removal
/// disconnects H(F).
pub fn exact_mdpp(forest: &GeneForest, cfg: &SolverConfig) -> Result<PrefixResult> {
    let c = compile(forest, cfg)?;
    let mut search = Search::new(&c);
    let (size, found) = search.run(false);
    let chosen = &found[0];
    search.chosen.iter_mut().for_each(|b| *b = false);
    for &i in chosen {
        search.chosen[i] = true;
    }
    Ok(PrefixResult {
        prefix: to_prefix(&c, chosen),
        induced_partition: c.partition(&search.components()),
        size,
        prefixes_examined: search.examined,
    })
}

/// Every minimum splitting prefix, in the order found (lexicographic by label).
pub fn optimal_prefixes(forest: &GeneForest, cfg: &SolverConfig) -> Result<Vec<Prefix>> {
    let c = compile(forest, cfg)?;
    let mut search = Search::new(&c);
    let (_, found) = search.run(true);
    Ok(found.iter().map(|chosen| to_prefix(&c, chosen)).collect())
}

/// Meet of P(I) over all minimum splitting prefixes I.
pub fn all_optimal_prefix_partition(forest: &GeneForest, cfg: &SolverConfig) -> Result<Partition> {
    let c = compile(forest, cfg)?;
    let mut search = Search::new(&c);
    let (_, found) = search.run(true);
    let mut parts = vec![c.full];
    for chosen in &found {
        search.chosen.iter_mut().for_each(|b| *b = false);
        for &i in chosen {
            search.chosen[i] = true;
        }
        let comps = search.components();
        parts = parts
            .into_iter()
            .flat_map(|p| comps.iter().map(move |&q| p & q))
            .filter(|&p| p != 0)
            .collect();
    }
    Ok(c.partition(&parts))
}

/// Whether internal vertex `label` belongs to some minimum splitting prefix.
pub fn vertex_in_some_min_prefix(forest: &GeneForest, label: VertexLabel, cfg: &SolverConfig) -> Result<bool> {
    forest.locate(label)?;
    Ok(optimal_prefixes(forest, cfg)?.iter().any(|p| p.contains(label)))
}
