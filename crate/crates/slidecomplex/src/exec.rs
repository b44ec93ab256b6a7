//! Data-parallel map with an order-preserving contract.
//!
//! Heavy per-item work (walk realization, certificate checking, frontier
//! expansion in searches) is funneled through [`map`]. With the `parallel`
//! feature the work fans out on rayon; without it, or inside
//! [`sequential_scope`], it runs as a plain iterator. Both paths return results
//! in input order, so callers are deterministic either way. The scope override
//! exists so one binary can benchmark both paths.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQ: Cell<bool> = const { Cell::new(false) };
}

/// Run `f` with parallel dispatch disabled on this thread.
pub fn sequential_scope<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQ.with(|c| {
        let prev = c.replace(true);
        let out = f();
        c.set(prev);
        out
    })
}

pub fn is_sequential() -> bool {
    FORCE_SEQ.with(|c| c.get()) || !cfg!(feature = "parallel")
}

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if is_sequential() {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
