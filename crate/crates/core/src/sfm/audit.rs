use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Oracle, SetFunction};
use crate::trees::{GenomeId, LabelSet};

/// A pair with f(A) + f(B) < f(A ∪ B) + f(A ∩ B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub a: LabelSet,
    pub b: LabelSet,
    /// f(A ∪ B) + f(A ∩ B) − f(A) − f(B), always positive.
    pub deficit: i64,
}

/// Evaluates the submodular inequality on one pair.
pub fn check_pair<F: SetFunction>(oracle: &Oracle<F>, a: &LabelSet, b: &LabelSet) -> Option<Violation> {
    let lhs = oracle.evaluate(a) + oracle.evaluate(b);
    let rhs = oracle.evaluate(&a.union(b)) + oracle.evaluate(&a.intersection(b));
    (lhs < rhs).then(|| Violation {
        a: a.clone(),
        b: b.clone(),
        deficit: rhs - lhs,
    })
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> LabelSet {
    LabelSet::from_ids(n, (0..n).filter(|_| rng.gen::<bool>()).map(GenomeId::from))
}

/// Samples `samples` uniform pairs of subsets from a ChaCha8 stream seeded
/// with `seed` and returns every violating pair. An empty result is evidence,
/// not proof.
pub fn check_submodular<F: SetFunction>(oracle: &Oracle<F>, samples: usize, seed: u64) -> Vec<Violation> {
    let n = oracle.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let a = random_subset(&mut rng, n);
        let b = random_subset(&mut rng, n);
        if let Some(v) = check_pair(oracle, &a, &b) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutgraph::{CutFunction, IForm};
    use crate::sfm::FnSetFunction;
    use crate::trees::parse_newick_forest;

    #[test]
    fn f_h_counterexample() {
        let forest = parse_newick_forest("((a,b),(c,d));").unwrap();
        let h = CutFunction::h(&forest);
        let ids = |names: &[&str]| {
            let genomes = LabelSet::from_ids(
                forest.universe(),
                names.iter().map(|n| forest.genomes().get(n).unwrap()),
            );
            h.to_local(&genomes).unwrap()
        };
        let oracle = Oracle::new(h.clone());
        let (a, b) = (ids(&["a", "c"]), ids(&["a", "b"]));
        assert_eq!(oracle.evaluate(&a), 1);
        assert_eq!(oracle.evaluate(&b), 0);
        assert_eq!(oracle.evaluate(&a.union(&b)), 1);
        assert_eq!(oracle.evaluate(&a.intersection(&b)), 1);
        let v = check_pair(&oracle, &a, &b).unwrap();
        assert_eq!(v.deficit, 1);
    }

    #[test]
    fn constant_zero_has_no_violations() {
        let oracle = Oracle::new(FnSetFunction::new(6, true, |_| 0));
        assert!(check_submodular(&oracle, 500, 3).is_empty());
        assert_eq!(oracle.evaluation_count(), 2000);
    }

    #[test]
    fn f_i_sample_has_no_violations() {
        let forest = parse_newick_forest("(((a,b),(a,c)),((d,e),(b,(c,e))));((a,d),(e,(b,b)));").unwrap();
        let oracle = Oracle::new(CutFunction::i(&forest, IForm::Compact));
        assert!(check_submodular(&oracle, 10_000, 11).is_empty());
    }

    #[test]
    fn sampling_is_deterministic() {
        // Supermodular on purpose: |X|² violates the inequality often.
        let f = || Oracle::new(FnSetFunction::new(7, false, |s: &LabelSet| (s.len() * s.len()) as i64));
        let a = check_submodular(&f(), 200, 99);
        let b = check_submodular(&f(), 200, 99);
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}
