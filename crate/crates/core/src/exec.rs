//! Execution strategy for exhaustive sweeps.
//!
//! Subset expansions and state enumerations are folds over an index range
//! whose per-index work is independent. With the `parallel` feature the
//! range is split across the rayon pool; otherwise (or when
//! [`Exec::Sequential`] is requested) it is a plain loop. Both paths produce
//! identical results as long as `reduce` is associative and commutative.

use crate::edgeset::EdgeSet;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Folds `fold` over `0..count`, merging partial accumulators with
    /// `reduce`.
    #[cfg_attr(not(feature = "parallel"), allow(unused_variables))]
    pub fn fold_indices<T, I, F, R>(self, count: u64, init: I, fold: F, reduce: R) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(T, u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..count)
                    .into_par_iter()
                    .fold(&init, &fold)
                    .reduce(&init, &reduce)
            }
            _ => (0..count).fold(init(), fold),
        }
    }

    /// Folds over every subset of `ground`.
    pub fn fold_subsets<T, I, F, R>(self, ground: EdgeSet, init: I, fold: F, reduce: R) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(T, EdgeSet) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        self.fold_indices(
            ground.subset_count(),
            init,
            |acc, i| fold(acc, ground.subset_by_index(i)),
            reduce,
        )
    }

    /// The witness for the first subset of `ground`, in subset-index
    /// order, for which `pred` returns one. The result does not depend on
    /// how the range is split.
    pub fn find_subset<W, P>(self, ground: EdgeSet, pred: P) -> Option<W>
    where
        W: Send,
        P: Fn(EdgeSet) -> Option<W> + Sync + Send,
    {
        self.fold_indices(
            ground.subset_count(),
            || None,
            |acc: Option<(u64, W)>, i| acc.or_else(|| pred(ground.subset_by_index(i)).map(|w| (i, w))),
            |l, r| match (l, r) {
                (Some(l), Some(r)) => Some(if l.0 <= r.0 { l } else { r }),
                (l, r) => l.or(r),
            },
        )
        .map(|(_, w)| w)
    }
}
