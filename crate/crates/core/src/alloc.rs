//! Allocation accounting used to measure auxiliary space.
//!
//! Install [`CountingAlloc`] as the global allocator in a binary or test
//! target, then wrap a computation in [`measure`] to obtain the peak number
//! of bytes it held beyond what was live when it started:
//!
//! ```
//! #[global_allocator]
//! static ALLOC: fastbcc::alloc::CountingAlloc = fastbcc::alloc::CountingAlloc;
//!
//! let (v, peak) = fastbcc::alloc::measure(|| vec![0u64; 1000]);
//! assert!(peak.unwrap() >= 8000);
//! # drop(v);
//! ```
//!
//! Counters are process-wide, so concurrent unrelated allocations pollute a
//! measurement. Callers are expected to measure one thing at a time.

use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

static CURRENT: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);
static INSTALLED: AtomicBool = AtomicBool::new(false);

/// System allocator wrapper tracking live and peak bytes.
pub struct CountingAlloc;

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            grow(layout.size());
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc_zeroed(layout);
        if !p.is_null() {
            grow(layout.size());
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        CURRENT.fetch_sub(layout.size(), Ordering::Relaxed);
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let p = System.realloc(ptr, layout, new_size);
        if !p.is_null() {
            if new_size >= layout.size() {
                grow(new_size - layout.size());
            } else {
                CURRENT.fetch_sub(layout.size() - new_size, Ordering::Relaxed);
            }
        }
        p
    }
}

#[inline]
fn grow(bytes: usize) {
    if !INSTALLED.load(Ordering::Relaxed) {
        INSTALLED.store(true, Ordering::Relaxed);
    }
    let now = CURRENT.fetch_add(bytes, Ordering::Relaxed) + bytes;
    PEAK.fetch_max(now, Ordering::Relaxed);
}

/// Whether [`CountingAlloc`] is serving this process.
pub fn is_installed() -> bool {
    INSTALLED.load(Ordering::Relaxed)
}

/// Bytes currently live through the counting allocator.
pub fn current_bytes() -> usize {
    CURRENT.load(Ordering::Relaxed)
}

/// Runs `f` and returns its result together with the peak number of bytes
/// allocated on top of the live total at entry. `None` when the counting
/// allocator is not installed. Measurements nest: an enclosing `measure`
/// still sees the inner peak.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, Option<usize>) {
    let base = CURRENT.load(Ordering::Relaxed);
    let outer_peak = PEAK.swap(base, Ordering::Relaxed);
    let r = f();
    let peak = PEAK.fetch_max(outer_peak, Ordering::Relaxed);
    let installed = is_installed();
    (r, installed.then(|| peak.saturating_sub(base)))
}

/// Bytes to 64-bit words, rounded up.
pub fn words(bytes: usize) -> usize {
    bytes.div_ceil(8)
}
