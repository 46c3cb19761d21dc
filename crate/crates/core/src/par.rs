//! Data-parallel helpers that fall back to sequential iteration when the
//! `parallel` feature is off.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn any<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> bool {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().any(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().any(pred)
    }
}

/// Order-preserving map.
pub(crate) fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
