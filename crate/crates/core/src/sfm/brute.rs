use std::cmp::Ordering;

use super::{MinCutResult, Oracle, SetFunction};
use crate::error::{Error, Result};
use crate::trees::LabelSet;

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug)]
pub struct BruteForceOptions {
    pub limit: usize,
    pub threads: usize,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            limit: DEFAULT_BRUTE_FORCE_LIMIT,
            threads: 1,
        }
    }
}

fn better(value: i64, set: &LabelSet, best: &Option<(i64, LabelSet)>) -> bool {
    match best {
        None => true,
        Some((v, s)) => value < *v || (value == *v && set.lex_cmp(s) == Ordering::Less),
    }
}

/// Exhaustive minimization over proper nonempty subsets.
///
/// Symmetric oracles are enumerated over subsets containing element 0 only.
/// Ties resolve to the lexicographically smallest sorted member list.
pub fn brute_force_minimize<F: SetFunction>(oracle: &Oracle<F>, opts: BruteForceOptions) -> Result<MinCutResult> {
    let n = oracle.ground_size();
    if n < 2 {
        return Err(Error::TooFewGenomes(n));
    }
    if n > opts.limit || n > 63 {
        return Err(Error::LimitExceeded {
            what: "brute-force ground set",
            size: n,
            limit: opts.limit.min(63),
        });
    }
    let symmetric = oracle.is_symmetric();
    // Each index in 0..count maps to one candidate subset.
    let (count, to_mask): (u64, Box<dyn Fn(u64) -> u64 + Sync>) = if symmetric {
        ((1u64 << (n - 1)) - 1, Box::new(|i| (i << 1) | 1))
    } else {
        ((1u64 << n) - 2, Box::new(|i| i + 1))
    };
    let before = oracle.evaluation_count();
    let scan = |lo: u64, hi: u64| {
        let mut best: Option<(i64, LabelSet)> = None;
        for i in lo..hi {
            let set = LabelSet::from_mask(n, to_mask(i));
            let value = oracle.evaluate(&set);
            if better(value, &set, &best) {
                best = Some((value, set));
            }
        }
        best
    };
    let threads = opts.threads.max(1) as u64;
    let best = if threads == 1 || count < 1024 {
        scan(0, count)
    } else {
        let chunk = count.div_ceil(threads);
        let partial: Vec<Option<(i64, LabelSet)>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let lo = (t * chunk).min(count);
                    let hi = ((t + 1) * chunk).min(count);
                    s.spawn(move || scan(lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        partial
            .into_iter()
            .flatten()
            .fold(None, |acc, (v, s)| if better(v, &s, &acc) { Some((v, s)) } else { acc })
    };
    let (value, minimizer) = best.expect("at least one candidate");
    Ok(MinCutResult {
        minimizer,
        value,
        evaluations: oracle.evaluation_count() - before,
    })
}
