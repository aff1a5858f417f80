//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature and `workers > 1` the closure runs on a
//! dedicated rayon pool of exactly `workers` threads. Output order always
//! matches input order, so callers can merge results deterministically.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_ordered<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers > 1 && items.len() > 1 {
            match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                Ok(pool) => return pool.install(|| items.into_par_iter().map(&f).collect()),
                Err(_) => return items.into_iter().map(f).collect(),
            }
        }
    }
    let _ = workers;
    items.into_iter().map(f).collect()
}

/// Whether `workers > 1` actually fans out in this build.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        for workers in [1, 2, 4] {
            let out = map_ordered((0..100).collect(), workers, |x: i32| x * x);
            assert_eq!(out, (0..100).map(|x| x * x).collect::<Vec<_>>());
        }
    }
}
