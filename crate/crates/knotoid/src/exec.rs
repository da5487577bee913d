//! Fold a per-item map over a work list, in parallel when the `parallel`
//! feature is enabled. Merges must be associative and commutative so that
//! the reduction order cannot influence results.

pub(crate) fn fold_items<T, R, F, M>(items: Vec<T>, init: impl Fn() -> R + Sync, f: F, merge: M) -> R
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
    M: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).reduce(&init, merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        fold_items_seq(items, init, f, merge)
    }
}

pub(crate) fn fold_items_seq<T, R, F, M>(
    items: Vec<T>,
    init: impl Fn() -> R,
    f: F,
    merge: M,
) -> R
where
    F: Fn(T) -> R,
    M: Fn(R, R) -> R,
{
    items.into_iter().map(f).fold(init(), merge)
}
