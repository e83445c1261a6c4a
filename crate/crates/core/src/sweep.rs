//! Batch evaluation over independent inputs (families of monoids, random
//! matrices, seeds).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::Execution;

/// Map `f` over `items`, preserving order.
pub fn map_with<T, R, F>(items: &[T], mode: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_with(items, Execution::default(), f)
}
