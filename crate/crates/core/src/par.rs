//! Internal dispatch for the batch APIs: rayon when the `parallel` feature is
//! on (the default), a plain sequential loop otherwise. Both paths preserve
//! input order, so batch results are deterministic either way.

#[cfg(feature = "parallel")]
pub(crate) fn map_items<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_items<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    F: Fn(I) -> O,
{
    items.into_iter().map(f).collect()
}
