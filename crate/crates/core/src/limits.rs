//! Process-wide enumeration budget.
//!
//! A single knob bounds every operation that enumerates group elements or
//! collineations. The CLI sets it from `--max-elements`.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::{Error, Result};

pub const DEFAULT_MAX_ELEMENTS: usize = 2_000_000;

/// Largest group that is stored as a full Cayley table.
pub const DENSE_MAX_ORDER: usize = 4096;

/// Cap on the number of pair products a single product-set computation may
/// perform. Above it the soft verifier refuses.
pub const MAX_PAIR_PRODUCTS: usize = 100_000_000;

static MAX_ELEMENTS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ELEMENTS);

pub fn max_elements() -> usize {
    MAX_ELEMENTS.load(Ordering::Relaxed)
}

pub fn set_max_elements(limit: usize) {
    MAX_ELEMENTS.store(limit, Ordering::Relaxed);
}

pub(crate) fn check_elements(what: &str, size: usize) -> Result<()> {
    let limit = max_elements();
    if size > limit {
        return Err(Error::budget(what, size, limit));
    }
    Ok(())
}

/// Sizes the global worker pool. Only the first call in a process has an
/// effect.
pub fn set_worker_threads(n: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))
}
