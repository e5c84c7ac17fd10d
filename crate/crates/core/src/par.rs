//! Data-parallel execution of independent verification cases.
//!
//! With the `parallel` feature (default) cases fan out over a rayon pool;
//! without it the same API runs sequentially, which is useful for
//! single-threaded builds and for benchmarking the speedup.

/// Map a function over items in parallel (feature `parallel`) and collect in
/// input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential variant, kept available for comparison benchmarks.
pub fn map_collect_seq<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
