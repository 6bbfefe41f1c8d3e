//! Ordered fan-out over independent tasks. With the `parallel` feature the
//! tasks run on a dedicated rayon pool of the requested size; results are
//! always returned in task order, so callers see the same output for any
//! worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool")
}

/// `items.map(f)` in order, on up to `workers` threads.
pub(crate) fn map_ordered<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        return pool(workers).install(|| items.par_iter().map(&f).collect());
    }
    let _ = workers;
    items.iter().map(f).collect()
}

/// The first (in task order) `Some` produced by `f`.
pub(crate) fn find_map_first<T, R, F>(items: &[T], workers: usize, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        return pool(workers).install(|| items.par_iter().find_map_first(&f));
    }
    let _ = workers;
    items.iter().find_map(f)
}
