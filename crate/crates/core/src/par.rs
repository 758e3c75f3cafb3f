//! Data-parallel helpers. With the `parallel` feature these fan out over
//! rayon's global pool; without it they run sequentially. Every reduction
//! used through this module is exact (integers, exact rationals, or max),
//! so both builds produce bit-identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Apply `f` to every column of a `dim x dim` column-major buffer.
pub(crate) fn for_each_column<F>(data: &mut [f64], dim: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    data.par_chunks_mut(dim)
        .enumerate()
        .for_each(|(c, col)| f(c, col));
    #[cfg(not(feature = "parallel"))]
    data.chunks_mut(dim)
        .enumerate()
        .for_each(|(c, col)| f(c, col));
}

/// Map `f` over `0..n` and collect the results in index order.
pub(crate) fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
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

/// Map the items of a slice through `f` and combine with the associative
/// operation `reduce`.
pub(crate) fn map_reduce<I, T, ID, F, R>(items: &[I], identity: ID, f: F, reduce: R) -> T
where
    I: Sync,
    T: Send,
    ID: Fn() -> T + Sync + Send,
    F: Fn(&I) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).reduce(identity, reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).fold(identity(), reduce)
    }
}
