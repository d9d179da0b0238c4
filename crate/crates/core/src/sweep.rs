//! Data-parallel maps over independent work items.
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] runs
//! on the rayon pool; without it every strategy runs sequentially.
//! Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::catalog::{catalog, CatalogEntry};
use crate::kinv::KInvariant;
use crate::obstruct::{classify, Verdict};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// Whether `Parallel` actually runs in parallel in this build.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Every ordered pair of `items`, row-major.
pub fn pairs<T: Clone>(items: &[T]) -> Vec<(T, T)> {
    items
        .iter()
        .flat_map(|a| items.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

pub struct PairVerdict {
    pub left: CatalogEntry,
    pub right: CatalogEntry,
    pub verdict: Verdict,
}

/// `classify` on the full catalog cross product.
pub fn classify_catalog(strategy: Strategy) -> Vec<PairVerdict> {
    let entries: Vec<(CatalogEntry, KInvariant)> =
        catalog().into_iter().map(|e| (e, e.invariant())).collect();
    let ps = pairs(&entries);
    map(strategy, &ps, |((l, a), (r, b))| PairVerdict {
        left: *l,
        right: *r,
        verdict: classify(a, b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..200).collect();
        let f = |x: &u64| x * x + 1;
        assert_eq!(
            map(Strategy::Sequential, &xs, f),
            map(Strategy::Parallel, &xs, f)
        );
    }

    #[test]
    fn catalog_sweep_is_ordered() {
        let seq = classify_catalog(Strategy::Sequential);
        let par = classify_catalog(Strategy::Parallel);
        assert_eq!(seq.len(), catalog().len().pow(2));
        for (s, p) in seq.iter().zip(&par) {
            assert_eq!((s.left, s.right), (p.left, p.right));
            assert_eq!(s.verdict, p.verdict);
        }
    }
}
