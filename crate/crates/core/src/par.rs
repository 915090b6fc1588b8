//! Thin switch between rayon data-parallel loops and plain sequential
//! iteration. The `parallel` cargo feature compiles rayon in or out; on top
//! of that a runtime flag lets callers (CLI `--threads 1`, benches) force
//! the sequential path in a parallel build. Every pipeline stage reduces
//! into order-independent collections and sorts afterwards, so both paths
//! produce identical results.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL_ENABLED: AtomicBool = AtomicBool::new(true);

pub fn set_parallel(enabled: bool) {
    PARALLEL_ENABLED.store(enabled, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL_ENABLED.load(Ordering::Relaxed)
}

#[cfg(feature = "parallel")]
pub fn map_vec<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if parallel_enabled() {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn flat_map_vec<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    use rayon::prelude::*;
    if parallel_enabled() {
        items.par_iter().flat_map_iter(f).collect()
    } else {
        items.iter().flat_map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn flat_map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> Vec<U> + Sync + Send,
{
    items.iter().flat_map(f).collect()
}
