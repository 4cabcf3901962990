//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature disabled every strategy runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

#[cfg(feature = "parallel")]
impl Strategy {
    fn parallel(self) -> bool {
        self == Strategy::Parallel
    }
}

/// Maps `f` over `items`, preserving input order in the output.
pub fn map<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Number of indices in `0..total` for which `pred` holds.
pub fn count_indices<F>(strategy: Strategy, total: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.parallel() {
        return (0..total).into_par_iter().filter(|&i| pred(i)).count() as u64;
    }
    let _ = strategy;
    (0..total).filter(|&i| pred(i)).count() as u64
}

/// Minimum of `f(i)` over `0..total`; `None` when `total == 0`.
pub fn min_over<F>(strategy: Strategy, total: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.parallel() {
        return (0..total).into_par_iter().map(f).min();
    }
    let _ = strategy;
    (0..total).map(f).min()
}
