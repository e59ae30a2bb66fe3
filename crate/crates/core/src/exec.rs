//! Internal dispatch between data-parallel and sequential evaluation.
//!
//! Verification sweeps map an independent check over many inputs. With the
//! `parallel` feature (on by default) the maps run on rayon's global pool;
//! without it they run as plain iterator chains. Callers either generate
//! inputs sequentially up front or derive a generator per index, so results
//! never depend on the feature or on thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_range_preserves_order() {
        let out = map_range(100, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn map_slice_preserves_order() {
        let items: Vec<i64> = (0..50).collect();
        let out = map_slice(&items, |&x| x - 1);
        assert_eq!(out, (-1..49).collect::<Vec<_>>());
    }
}
