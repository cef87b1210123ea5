//! Pendant-pair minimization of symmetric submodular functions.
//!
//! Each phase orders the current super-elements greedily: starting from the
//! first, repeatedly append the element `u` minimizing
//! `f(W ∪ {u}) − f({u})`, where `W` is the union of those already ordered.
//! The last two elements form a pendant pair, so the last one alone is a
//! minimum cut separating them. Recording that candidate and merging the pair
//! loses no optimum; after `n − 1` phases the best candidate is a global
//! minimizer.

use super::{MinCutResult, Oracle, SetFunction};
use crate::error::{Error, Result};
use crate::trees::LabelSet;

pub fn queyranne_minimize<F: SetFunction>(oracle: &Oracle<F>) -> Result<MinCutResult> {
    let n = oracle.ground_size();
    if n < 2 {
        return Err(Error::TooFewGenomes(n));
    }
    let before = oracle.evaluation_count();
    let mut groups: Vec<LabelSet> = (0..n).map(|i| LabelSet::singleton(n, i.into())).collect();
    let mut best: Option<(i64, LabelSet)> = None;

    while groups.len() >= 2 {
        let singles: Vec<i64> = groups.iter().map(|g| oracle.evaluate(g)).collect();
        let mut remaining: Vec<usize> = (1..groups.len()).collect();
        let mut order = vec![0usize];
        let mut acc = groups[0].clone();
        while !remaining.is_empty() {
            let mut pick: Option<(i64, usize)> = None;
            for (pos, &u) in remaining.iter().enumerate() {
                let key = if remaining.len() == 1 {
                    // Only one choice left; its key is never compared.
                    0
                } else {
                    oracle.evaluate(&acc.union(&groups[u])) - singles[u]
                };
                if pick.is_none_or(|(k, _)| key < k) {
                    pick = Some((key, pos));
                }
            }
            let (_, pos) = pick.expect("nonempty");
            let u = remaining.remove(pos);
            acc.union_with(&groups[u]);
            order.push(u);
        }
        let last = order[order.len() - 1];
        let prev = order[order.len() - 2];
        let value = singles[last];
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, groups[last].clone()));
        }
        let merged = groups[prev].union(&groups[last]);
        let (hi, lo) = if prev > last { (prev, last) } else { (last, prev) };
        groups.remove(hi);
        groups[lo] = merged;
    }

    let (value, minimizer) = best.expect("at least one phase");
    Ok(MinCutResult {
        minimizer,
        value,
        evaluations: oracle.evaluation_count() - before,
    })
}
