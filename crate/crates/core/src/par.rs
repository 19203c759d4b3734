//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these run on the rayon global pool;
//! without it they are plain iterator loops. Results are always returned in
//! input order, so callers observe identical output either way.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
/// Below this many work items the sequential path is used regardless.
const MIN_PARALLEL: usize = 64;

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if items.len() < 2 {
        return items.iter().map(f).collect();
    }
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<R, F>(range: Range<u32>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u32) -> R + Sync + Send,
{
    if range.len() < MIN_PARALLEL {
        return range.map(f).collect();
    }
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(range: Range<u32>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u32) -> R + Sync + Send,
{
    range.map(f).collect()
}

/// Index of the first item satisfying `pred`, in input order.
#[cfg(feature = "parallel")]
pub fn position_first<T, F>(items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    if items.len() < 2 {
        return items.iter().position(pred);
    }
    items.par_iter().position_first(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn position_first<T, F>(items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.iter().position(pred)
}

#[cfg(feature = "parallel")]
pub fn any_in_range<F>(range: Range<u32>, pred: F) -> bool
where
    F: Fn(u32) -> bool + Sync + Send,
{
    if range.len() < 4 * MIN_PARALLEL {
        return range.into_iter().any(pred);
    }
    range.into_par_iter().any(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn any_in_range<F>(range: Range<u32>, pred: F) -> bool
where
    F: Fn(u32) -> bool + Sync + Send,
{
    range.into_iter().any(pred)
}

/// Fill `table` chunk by chunk; `f(offset, chunk)` writes entries
/// `offset..offset + chunk.len()`.
#[cfg(feature = "parallel")]
pub fn fill_chunks<F>(table: &mut [u8], f: F)
where
    F: Fn(usize, &mut [u8]) + Sync + Send,
{
    const CHUNK: usize = 1 << 12;
    if table.len() <= CHUNK {
        f(0, table);
        return;
    }
    table.par_chunks_mut(CHUNK).enumerate().for_each(|(i, chunk)| f(i * CHUNK, chunk));
}

#[cfg(not(feature = "parallel"))]
pub fn fill_chunks<F>(table: &mut [u8], f: F)
where
    F: Fn(usize, &mut [u8]) + Sync + Send,
{
    f(0, table);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_results() {
        let items: Vec<u32> = (0..500).collect();
        let doubled = map(&items, |x| x * 2);
        assert_eq!(doubled, (0..500).map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(map_range(0..300, |x| x + 1)[299], 300);
        assert_eq!(position_first(&items, |&x| x > 100 && x % 7 == 0), Some(105));
        assert!(any_in_range(0..10_000, |x| x == 9_999));
    }

    #[test]
    fn chunk_fill_covers_table() {
        let mut t = vec![0u8; 20_000];
        fill_chunks(&mut t, |off, chunk| {
            for (i, v) in chunk.iter_mut().enumerate() {
                *v = ((off + i) % 251) as u8;
            }
        });
        assert!(t.iter().enumerate().all(|(i, &v)| v as usize == i % 251));
    }
}
