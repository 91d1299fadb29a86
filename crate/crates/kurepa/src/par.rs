//! Ordered map over work items, sequential or on a rayon pool.

use crate::Result;

/// Worker-count policy for batch operations.
///
/// The CLI convention maps `0` to [`Jobs::Auto`], `1` to
/// [`Jobs::Sequential`], and any larger `n` to a dedicated pool of `n`
/// threads. Without the `parallel` feature every variant runs
/// sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Jobs {
    /// Use the global thread pool (all cores).
    #[default]
    Auto,
    /// Single-threaded reference path.
    Sequential,
    /// Dedicated pool with exactly this many threads.
    Threads(usize),
}

impl Jobs {
    /// Map a plain thread count (`0` = auto, `1` = sequential).
    pub fn from_count(n: usize) -> Self {
        match n {
            0 => Jobs::Auto,
            1 => Jobs::Sequential,
            n => Jobs::Threads(n),
        }
    }
}

/// Apply `f` to every item and collect the outputs in input order.
///
/// Results are position-stable: the output for `items[i]` is at index `i`
/// no matter how many threads ran, so downstream serialization is
/// byte-identical across job counts. If any call fails, one of the errors
/// is returned.
#[cfg(feature = "parallel")]
pub fn try_map_ordered<T, U, F>(jobs: Jobs, items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    use rayon::prelude::*;

    match jobs {
        Jobs::Sequential => items.iter().map(f).collect(),
        Jobs::Auto => items.par_iter().map(f).collect(),
        Jobs::Threads(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("failed to build worker pool");
            pool.install(|| items.par_iter().map(f).collect())
        }
    }
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn try_map_ordered<T, U, F>(jobs: Jobs, items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    let _ = jobs;
    items.iter().map(f).collect()
}
