//! Order-preserving maps over independent cells.
//!
//! With the `parallel` feature (default) [`map_cells`] fans out over the rayon
//! pool; without it the same call runs sequentially. Both variants are always
//! available under explicit names so they can be benchmarked side by side.

/// Maps `f` over `cells`, keeping input order in the output.
pub fn map_cells<T, R, F>(cells: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(cells, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(cells, f)
    }
}

pub fn map_sequential<T, R, F>(cells: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    cells.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(cells: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    cells.par_iter().map(f).collect()
}
