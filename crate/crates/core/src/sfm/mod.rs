//! Set-function minimization over proper nonempty subsets.
//!
//! [`queyranne_minimize`] is exact for symmetric submodular functions using
//! O(n³) evaluations; [`brute_force_minimize`] is the exhaustive reference;
//! [`check_submodular`] samples the submodular inequality.

mod audit;
mod brute;
mod queyranne;

use std::sync::atomic::{AtomicU64, Ordering};

use crate::trees::LabelSet;

pub use audit::{check_pair, check_submodular, Violation};
pub use brute::{brute_force_minimize, BruteForceOptions, DEFAULT_BRUTE_FORCE_LIMIT};
pub use queyranne::queyranne_minimize;

/// An integer-valued function on subsets of `0..ground_size()`.
///
/// Sets passed to `value` have universe `ground_size()`.
pub trait SetFunction: Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &LabelSet) -> i64;

    /// Declares f(X) = f(V − X); brute force then enumerates half the subsets.
    fn is_symmetric(&self) -> bool {
        false
    }
}

/// Set function backed by a closure.
pub struct FnSetFunction<F> {
    n: usize,
    symmetric: bool,
    f: F,
}

impl<F: Fn(&LabelSet) -> i64 + Sync> FnSetFunction<F> {
    pub fn new(n: usize, symmetric: bool, f: F) -> Self {
        FnSetFunction { n, symmetric, f }
    }
}

impl<F: Fn(&LabelSet) -> i64 + Sync> SetFunction for FnSetFunction<F> {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: &LabelSet) -> i64 {
        (self.f)(set)
    }

    fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

/// Wraps a set function with an evaluation counter.
pub struct Oracle<F> {
    f: F,
    evaluations: AtomicU64,
}

impl<F: SetFunction> Oracle<F> {
    pub fn new(f: F) -> Self {
        Oracle {
            f,
            evaluations: AtomicU64::new(0),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.f.ground_size()
    }

    pub fn is_symmetric(&self) -> bool {
        self.f.is_symmetric()
    }

    pub fn evaluate(&self, set: &LabelSet) -> i64 {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        self.f.value(set)
    }

    pub fn evaluation_count(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &F {
        &self.f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCutResult {
    /// Proper nonempty subset of the ground set.
    pub minimizer: LabelSet,
    pub value: i64,
    /// Oracle calls made by this run.
    pub evaluations: u64,
}
