//! Execution strategy for the independent per-cone checks: data-parallel via
//! rayon when the `parallel` feature is enabled, sequential otherwise or on
//! request. All call sites are pure, so both modes produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How to schedule independent sub-checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExecMode {
    /// Use rayon's work-stealing pool (requires the `parallel` feature;
    /// silently degrades to sequential without it).
    Parallel,
    /// Run in submission order on the calling thread.
    Sequential,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Map `f` over `items`, preserving input order in the output.
pub fn map_items<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return items.into_par_iter().map(f).collect();
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}
