//! Deterministic parallel helpers.
//!
//! With the `parallel` feature the maps run on rayon; otherwise they are
//! plain loops. Results are collected in input order, and any floating-point
//! reduction happens over the ordered collected buffer, so output bytes do
//! not depend on the feature or on thread scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Ordered map over indices `0..n`.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Ordered map over a slice.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential twins of the maps above, kept callable with the feature on so
/// the benches can compare both code paths in one build.
pub mod sequential {
    pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
    where
        F: Fn(usize) -> T,
    {
        (0..n).map(f).collect()
    }

    pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> U,
    {
        items.iter().map(f).collect()
    }
}
