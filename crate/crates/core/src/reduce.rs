//! Data-parallel row evaluation with a worker-count-independent reduction.
//!
//! Rows are evaluated in parallel but each row is summed sequentially, and
//! row results are combined with [`tree_sum`] over the row index. The result
//! is therefore bit-identical for any thread count.

use rayon::prelude::*;

pub use crate::geom::tree_sum;

/// Evaluate `f` for every row index in parallel, returning results in row
/// order.
pub fn par_rows<T, F>(rows: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..rows).into_par_iter().map(f).collect()
}

/// Sum a per-row scalar deterministically.
pub fn par_row_sum<F>(rows: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    tree_sum(&par_rows(rows, f))
}

/// Run `op` on a dedicated pool with exactly `workers` threads.
pub fn with_workers<R, OP>(workers: usize, op: OP) -> R
where
    R: Send,
    OP: FnOnce() -> R + Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(op)
}
