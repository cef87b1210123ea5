use std::cmp::Ordering;

use super::compiled::Compiled;
use super::SolverConfig;
use crate::error::{Error, Result};
use crate::trees::{Bipartition, GeneForest, GenomeId, Partition, VertexLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    /// The optimum chosen by tie-breaking: the smallest genome is on the left
    /// and, among those, the left side with the smallest sorted names wins.
    pub bipartition: Bipartition,
    pub cost: usize,
    /// Every optimal bipartition, normalized and ordered, when requested.
    pub optimal_cuts: Option<Vec<Bipartition>>,
    pub bipartitions_examined: u64,
}

struct Shard {
    best: usize,
    winner: u64,
    ties: Vec<u64>,
}

fn scan(c: &Compiled, range: std::ops::Range<u64>, collect: bool) -> Shard {
    let mut shard = Shard {
        best: usize::MAX,
        winner: 0,
        ties: Vec::new(),
    };
    for rest in range {
        // Local element 0 is always on the left.
        let side = rest << 1 | 1;
        let cost = c.d1(side);
        match cost.cmp(&shard.best) {
            Ordering::Less => {
                shard.best = cost;
                shard.winner = side;
                shard.ties.clear();
                if collect {
                    shard.ties.push(side);
                }
            }
            Ordering::Equal => {
                if c.lex_cmp(side, shard.winner) == Ordering::Less {
                    shard.winner = side;
                }
                if collect {
                    shard.ties.push(side);
                }
            }
            Ordering::Greater => {}
        }
    }
    shard
}

fn optimal_sides(c: &Compiled, threads: usize, collect: bool) -> (usize, u64, Vec<u64>, u64) {
    let count = (1u64 << (c.n - 1)) - 1;
    let shards: Vec<Shard> = if threads <= 1 || count < 1024 {
        vec![scan(c, 0..count, collect)]
    } else {
        let chunk = count.div_ceil(threads as u64);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let lo = (t * chunk).min(count);
                    let hi = ((t + 1) * chunk).min(count);
                    s.spawn(move || scan(c, lo..hi, collect))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let best = shards.iter().map(|s| s.best).min().expect("one shard");
    let mut winner = None::<u64>;
    let mut ties = Vec::new();
    for s in shards.into_iter().filter(|s| s.best == best) {
        if winner.is_none_or(|w| c.lex_cmp(s.winner, w) == Ordering::Less) {
            winner = Some(s.winner);
        }
        ties.extend(s.ties);
    }
    ties.sort_by(|&a, &b| c.lex_cmp(a, b));
    (best, winner.expect("one optimum"), ties, count)
}

/// Exhaustive minimum-duplication bipartition over all 2^(k−1) − 1 cuts.
pub fn exact_mdbp(forest: &GeneForest, cfg: &SolverConfig, collect_all: bool) -> Result<ExactResult> {
    cfg.validate()?;
    let limit = if collect_all {
        cfg.collect_max_k
    } else {
        cfg.exact_max_k
    };
    let c = Compiled::new(forest, limit, "genomes for exact bipartition search")?;
    let (cost, winner, ties, examined) = optimal_sides(&c, cfg.threads, collect_all);
    Ok(ExactResult {
        bipartition: c.bipartition(winner),
        cost,
        optimal_cuts: collect_all.then(|| ties.iter().map(|&s| c.bipartition(s)).collect()),
        bipartitions_examined: examined,
    })
}

/// Meet of all optimal bipartitions: two genomes share a part exactly when no
/// optimal bipartition separates them.
pub fn all_optimal_bipartition_partition(forest: &GeneForest, cfg: &SolverConfig) -> Result<Partition> {
    cfg.validate()?;
    let c = Compiled::new(forest, cfg.collect_max_k, "genomes for exact bipartition search")?;
    let (_, _, ties, _) = optimal_sides(&c, cfg.threads, true);
    // Refine by signature: which optimal sides contain each element.
    let mut parts: Vec<u64> = vec![c.full];
    for side in ties {
        parts = parts
            .into_iter()
            .flat_map(|p| [p & side, p & !side])
            .filter(|&p| p != 0)
            .collect();
    }
    Ok(c.partition(&parts))
}

/// Whether the H(F) edge `{u, v}` with label `label` is cut by some optimal
/// bipartition.
pub fn edge_in_some_min_cut(
    forest: &GeneForest,
    u: GenomeId,
    v: GenomeId,
    label: VertexLabel,
    cfg: &SolverConfig,
) -> Result<bool> {
    let not_edge = || Error::EdgeNotInGraph {
        u: forest.genomes().name(u).to_string(),
        v: forest.genomes().name(v).to_string(),
        label,
    };
    let (l, r) = forest.child_labels(label).map_err(|_| not_edge())?;
    if u == v || !((l.contains(u) && l.contains(v)) || (r.contains(u) && r.contains(v))) {
        return Err(not_edge());
    }
    let all = exact_mdbp(forest, cfg, true)?.optimal_cuts.expect("collected");
    Ok(all.iter().any(|b| b.separates(u, v)))
}
