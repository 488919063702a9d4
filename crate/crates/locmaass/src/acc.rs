//! Compensated accumulation and a deterministic chunked reduction.

use num_complex::Complex64;
use rayon::prelude::*;

/// Kahan-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanC64 {
    sum: Complex64,
    comp: Complex64,
}

impl KahanC64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Kahan-compensated real accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanF64 {
    sum: f64,
    comp: f64,
}

impl KahanF64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Chunk size of the fixed reduction tree. Results are bitwise independent of
/// the worker count because every chunk is summed sequentially and the chunk
/// partials are reduced in index order.
const CHUNK: usize = 1024;

/// Deterministic map-sum over a slice: parallel across fixed chunks, Kahan
/// within each chunk and across the ordered chunk partials.
pub fn sum_mapped<T, F>(items: &[T], f: F) -> Complex64
where
    T: Sync,
    F: Fn(&T) -> Complex64 + Sync + Send,
{
    let partials: Vec<Complex64> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = KahanC64::new();
            for item in chunk {
                acc.add(f(item));
            }
            acc.value()
        })
        .collect();
    let mut total = KahanC64::new();
    for p in partials {
        total.add(p);
    }
    total.value()
}
