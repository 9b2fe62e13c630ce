//! Execution helpers for the enumeration-heavy sums.
//!
//! Terms are always produced in enumeration-index order and reduced
//! sequentially, so results are bit-identical whether or not the
//! `parallel` feature (rayon) is active and regardless of worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk size for term production; bounds peak memory of a chunk.
pub(crate) const CHUNK: usize = 1 << 15;

/// Ranges shorter than this stay sequential; rayon's dispatch overhead
/// dwarfs the tiny per-term work below it.
pub(crate) const MIN_PARALLEL_LEN: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ExecMode {
    /// Parallel when the `parallel` feature is enabled, sequential otherwise.
    Default,
    /// Always sequential.
    Sequential,
}

/// Map f over [start, end) preserving index order.
pub(crate) fn map_range<U, F>(mode: ExecMode, start: usize, end: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (start..end).map(f).collect(),
        ExecMode::Default => {
            #[cfg(feature = "parallel")]
            {
                if end - start < MIN_PARALLEL_LEN {
                    (start..end).map(f).collect()
                } else {
                    (start..end).into_par_iter().map(f).collect()
                }
            }
            #[cfg(not(feature = "parallel"))]
            {
                (start..end).map(f).collect()
            }
        }
    }
}

/// Produce `total` terms chunk by chunk (parallel within a chunk under
/// `ExecMode::Default`) and fold them sequentially in index order.
pub(crate) fn fold_terms<U, F, G>(mode: ExecMode, total: usize, term: F, mut fold: G)
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
    G: FnMut(usize, U),
{
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        let chunk = map_range(mode, start, end, &term);
        for (offset, value) in chunk.into_iter().enumerate() {
            fold(start + offset, value);
        }
        start = end;
    }
}
