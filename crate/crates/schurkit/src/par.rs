//! Data-parallel map with a sequential fallback.
//!
//! All verification sweeps funnel through [`maybe_par_map`] so the criterion
//! bench can compare the rayon path against the sequential one in a single
//! build. Without the `parallel` feature the function is always sequential.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn maybe_par_map<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}
