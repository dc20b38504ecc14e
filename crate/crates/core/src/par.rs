//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature this module re-exports rayon's prelude.
//! Without it, [`prelude`] provides the same method names over plain
//! iterators so algorithm code is written once.

use std::sync::atomic::{AtomicU32, AtomicU64};

/// Minimum chunk handed to a worker for cheap per-element loops.
pub const GRAIN: usize = 1024;

#[cfg(feature = "parallel")]
pub mod prelude {
    pub use rayon::prelude::*;
}

#[cfg(not(feature = "parallel"))]
pub mod prelude {
    //! Sequential stand-ins for the subset of rayon used in this crate.

    pub trait IntoParallelIterator {
        type Iter: Iterator<Item = Self::Item>;
        type Item;
        fn into_par_iter(self) -> Self::Iter;
    }

    impl<I: IntoIterator> IntoParallelIterator for I {
        type Iter = I::IntoIter;
        type Item = I::Item;
        fn into_par_iter(self) -> Self::Iter {
            self.into_iter()
        }
    }

    pub trait ParallelSlice<T> {
        fn par_iter(&self) -> std::slice::Iter<'_, T>;
        fn par_chunks(&self, size: usize) -> std::slice::Chunks<'_, T>;
    }

    impl<T> ParallelSlice<T> for [T] {
        fn par_iter(&self) -> std::slice::Iter<'_, T> {
            self.iter()
        }
        fn par_chunks(&self, size: usize) -> std::slice::Chunks<'_, T> {
            self.chunks(size)
        }
    }

    pub trait ParallelSliceMut<T> {
        fn par_iter_mut(&mut self) -> std::slice::IterMut<'_, T>;
        fn par_chunks_mut(&mut self, size: usize) -> std::slice::ChunksMut<'_, T>;
        fn par_sort_unstable(&mut self)
        where
            T: Ord;
    }

    impl<T> ParallelSliceMut<T> for [T] {
        fn par_iter_mut(&mut self) -> std::slice::IterMut<'_, T> {
            self.iter_mut()
        }
        fn par_chunks_mut(&mut self, size: usize) -> std::slice::ChunksMut<'_, T> {
            self.chunks_mut(size)
        }
        fn par_sort_unstable(&mut self)
        where
            T: Ord,
        {
            self.sort_unstable()
        }
    }

    /// Rayon-only adaptors that are no-ops sequentially.
    pub trait ParallelIteratorShim: Iterator + Sized {
        fn with_min_len(self, _len: usize) -> Self {
            self
        }
        fn flat_map_iter<U, F>(self, f: F) -> std::iter::FlatMap<Self, U, F>
        where
            U: IntoIterator,
            F: FnMut(Self::Item) -> U,
        {
            self.flat_map(f)
        }
        fn find_any<P>(mut self, predicate: P) -> Option<Self::Item>
        where
            P: FnMut(&Self::Item) -> bool,
        {
            self.find(predicate)
        }
    }

    impl<I: Iterator> ParallelIteratorShim for I {}

    pub trait ParallelExtend<T> {
        fn par_extend<I: IntoIterator<Item = T>>(&mut self, items: I);
    }

    impl<T> ParallelExtend<T> for Vec<T> {
        fn par_extend<I: IntoIterator<Item = T>>(&mut self, items: I) {
            self.extend(items)
        }
    }
}

/// Number of workers the current context will use.
pub fn current_num_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (`0` = all hardware
/// threads). Sequential builds just call `f`.
pub fn install<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("failed to build thread pool");
        pool.install(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}

/// In-place exclusive prefix sum; returns the total.
pub fn exclusive_scan(values: &mut [usize]) -> usize {
    use prelude::*;
    const BLOCK: usize = 1 << 14;
    if values.len() <= BLOCK {
        return scan_seq(values, 0);
    }
    let mut sums: Vec<usize> = values
        .par_chunks(BLOCK)
        .map(|c| c.iter().sum::<usize>())
        .collect();
    let total = scan_seq(&mut sums, 0);
    values
        .par_chunks_mut(BLOCK)
        .zip(sums.par_iter())
        .for_each(|(chunk, &base)| {
            scan_seq(chunk, base);
        });
    total
}

fn scan_seq(values: &mut [usize], mut acc: usize) -> usize {
    for x in values.iter_mut() {
        let v = *x;
        *x = acc;
        acc += v;
    }
    acc
}

/// Views a mutable `u32` slice as atomics so disjoint (or monotone) parallel
/// writes can go through a shared reference.
pub fn atomic_u32(slice: &mut [u32]) -> &[AtomicU32] {
    // SAFETY: AtomicU32 has the same size, alignment and bit validity as u32,
    // and the exclusive borrow guarantees no non-atomic aliasing.
    unsafe { &*(slice as *mut [u32] as *const [AtomicU32]) }
}

pub fn atomic_u64(slice: &mut [u64]) -> &[AtomicU64] {
    assert_eq!(
        std::mem::align_of::<AtomicU64>(),
        std::mem::align_of::<u64>()
    );
    // SAFETY: same layout as checked above; exclusive borrow as for u32.
    unsafe { &*(slice as *mut [u64] as *const [AtomicU64]) }
}

/// Allocates `len` atomics initialised to `value`.
pub fn atomic_vec_u32(len: usize, value: u32) -> Vec<AtomicU32> {
    use prelude::*;
    (0..len)
        .into_par_iter()
        .with_min_len(GRAIN)
        .map(|_| AtomicU32::new(value))
        .collect()
}

/// Consumes a vector of atomics into plain integers without copying.
pub fn into_plain_u32(v: Vec<AtomicU32>) -> Vec<u32> {
    let mut v = std::mem::ManuallyDrop::new(v);
    // SAFETY: identical layout; ownership of the allocation moves over.
    unsafe { Vec::from_raw_parts(v.as_mut_ptr() as *mut u32, v.len(), v.capacity()) }
}

/// Hints that `x` will be read soon. A no-op off x86-64.
#[inline(always)]
pub fn prefetch<T>(x: &T) {
    #[cfg(target_arch = "x86_64")]
    // SAFETY: a prefetch never faults and has no architectural effect.
    #[allow(unused_unsafe)]
    unsafe {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        _mm_prefetch::<_MM_HINT_T0>(x as *const T as *const i8);
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = x;
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::Ordering;

    #[test]
    fn scan_matches_sequential() {
        for len in [0usize, 1, 7, 20_000, 100_003] {
            let orig: Vec<usize> = (0..len).map(|i| (i * 7919) % 13).collect();
            let mut v = orig.clone();
            let total = exclusive_scan(&mut v);
            let mut acc = 0;
            for i in 0..len {
                assert_eq!(v[i], acc);
                acc += orig[i];
            }
            assert_eq!(total, acc);
        }
    }

    #[test]
    fn atomic_views_round_trip() {
        let a = atomic_vec_u32(5, 9);
        a[2].store(1, Ordering::Relaxed);
        assert_eq!(into_plain_u32(a), vec![9, 9, 1, 9, 9]);

        let mut b = vec![3u32; 4];
        atomic_u32(&mut b)[0].fetch_min(1, Ordering::Relaxed);
        assert_eq!(b[0], 1);
    }
}
