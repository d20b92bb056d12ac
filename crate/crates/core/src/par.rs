//! Frame- and item-level parallel dispatch.
//!
//! With the `parallel` feature (default) these fan out over rayon's current
//! thread pool; without it they run sequentially. Both paths produce
//! identical bytes: work items are independent and land in index-addressed
//! slots.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Run `f(t, frame_bytes)` for every frame of a flat clip buffer.
pub(crate) fn for_each_frame<F>(data: &mut [u8], frame_len: usize, f: F)
where
    F: Fn(usize, &mut [u8]) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    data.par_chunks_mut(frame_len).enumerate().for_each(|(t, d)| f(t, d));
    #[cfg(not(feature = "parallel"))]
    data.chunks_mut(frame_len).enumerate().for_each(|(t, d)| f(t, d));
}

/// Map `f` over 0..n, collecting results in index order.
pub fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}
