//! Execution strategy for the data-parallel loops (enumeration oracles,
//! batch evaluation). With the `parallel` feature disabled every strategy
//! runs sequentially.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Number of `i` in `range` with `pred(i)`.
pub fn count_where<F>(exec: Execution, range: Range<u64>, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().filter(|&i| pred(i)).count() as u64
        }
        _ => range.filter(|&i| pred(i)).count() as u64,
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
