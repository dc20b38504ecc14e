use crate::par::prelude::*;
use crate::par::GRAIN;
use crate::{Error, Result};

const BLOCK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Min,
    Max,
}

impl Mode {
    #[inline]
    fn pick(self, a: u32, b: u32) -> u32 {
        match self {
            Mode::Min => a.min(b),
            Mode::Max => a.max(b),
        }
    }

    /// Neutral element of [`Mode::pick`].
    pub fn identity(self) -> u32 {
        match self {
            Mode::Min => u32::MAX,
            Mode::Max => 0,
        }
    }
}

/// Idempotent range-minimum (or maximum) queries over a fixed array.
///
/// The array is cut into blocks of 32. A classic doubling table covers the
/// block aggregates, and per-position prefix and suffix aggregates inside
/// each block answer the two partial ends of a query. Space is
/// `3L + (L/32) log(L/32)` words instead of `L log L`; queries spanning
/// blocks take three lookups, queries inside one block scan at most 32
/// entries.
#[derive(Clone, Debug)]
pub struct SparseTable {
    base: Vec<u32>,
    /// Aggregate from the start of the block up to each position.
    prefix: Vec<u32>,
    /// Aggregate from each position to the end of its block.
    suffix: Vec<u32>,
    /// `levels[k][i]` aggregates blocks `i .. i + 2^k`.
    levels: Vec<Vec<u32>>,
    mode: Mode,
}

/// Builds the table, taking ownership of `base`.
pub fn build_sparse_table(base: Vec<u32>, mode: Mode) -> Result<SparseTable> {
    if base.is_empty() {
        return Err(Error::EmptyArray);
    }
    let mut prefix = vec![0u32; base.len()];
    let mut suffix = vec![0u32; base.len()];
    let blocks: Vec<u32> = base
        .par_chunks(BLOCK)
        .zip(prefix.par_chunks_mut(BLOCK))
        .zip(suffix.par_chunks_mut(BLOCK))
        .map(|((c, pre), suf)| {
            let mut acc = mode.identity();
            for (x, p) in c.iter().zip(pre.iter_mut()) {
                acc = mode.pick(acc, *x);
                *p = acc;
            }
            let mut back = mode.identity();
            for (x, s) in c.iter().zip(suf.iter_mut()).rev() {
                back = mode.pick(back, *x);
                *s = back;
            }
            acc
        })
        .collect();
    let mut levels = vec![blocks];
    let mut width = 1;
    while 2 * width <= levels[0].len() {
        let prev = levels.last().unwrap();
        let len = prev.len() - width;
        let next: Vec<u32> = (0..len)
            .into_par_iter()
            .with_min_len(GRAIN)
            .map(|i| mode.pick(prev[i], prev[i + width]))
            .collect();
        levels.push(next);
        width *= 2;
    }
    Ok(SparseTable {
        base,
        prefix,
        suffix,
        levels,
        mode,
    })
}

impl SparseTable {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Aggregate of `base[l..=r]`.
    ///
    /// # Panics
    /// If `l > r` or `r` is out of bounds.
    #[inline]
    pub fn query(&self, l: usize, r: usize) -> u32 {
        assert!(l <= r && r < self.base.len(), "bad range {l}..={r}");
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.base[l..=r]
                .iter()
                .fold(self.mode.identity(), |a, &b| self.mode.pick(a, b));
        }
        let mut acc = self.mode.pick(self.suffix[l], self.prefix[r]);
        if bl + 1 < br {
            let (lo, hi) = (bl + 1, br - 1);
            let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
            let level = &self.levels[k];
            acc = self.mode.pick(acc, level[lo]);
            acc = self.mode.pick(acc, level[hi + 1 - (1 << k)]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_element() {
        let t = build_sparse_table(vec![5], Mode::Min).unwrap();
        assert_eq!(t.query(0, 0), 5);
    }

    #[test]
    fn small_min() {
        let t = build_sparse_table(vec![3, 1, 2], Mode::Min).unwrap();
        assert_eq!(t.query(0, 2), 1);
        assert_eq!(t.query(1, 2), 1);
        assert_eq!(t.query(2, 2), 2);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(
            build_sparse_table(Vec::new(), Mode::Max),
            Err(Error::EmptyArray)
        ));
    }

    #[test]
    fn random_queries_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for len in [1usize, 31, 32, 33, 100, 1000, 10_000] {
            let base: Vec<u32> = (0..len).map(|_| rng.gen_range(0..1_000_000)).collect();
            let tmin = build_sparse_table(base.clone(), Mode::Min).unwrap();
            let tmax = build_sparse_table(base.clone(), Mode::Max).unwrap();
            for _ in 0..10_000.min(len * len) {
                let a = rng.gen_range(0..len);
                let b = rng.gen_range(0..len);
                let (l, r) = (a.min(b), a.max(b));
                let s = &base[l..=r];
                assert_eq!(tmin.query(l, r), *s.iter().min().unwrap());
                assert_eq!(tmax.query(l, r), *s.iter().max().unwrap());
            }
        }
    }
}
