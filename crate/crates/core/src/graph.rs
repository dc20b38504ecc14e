//! Compressed-sparse-row undirected graphs.

use crate::par::prelude::*;
use crate::par::GRAIN;
use crate::{Error, Result};

/// Vertex id. Graphs are limited to `u32::MAX - 1` vertices.
pub type Vertex = u32;

/// A list of `(u, v)` vertex pairs.
pub type EdgeList = Vec<(Vertex, Vertex)>;

/// Immutable CSR graph. Every undirected edge occupies two slots, one in
/// each endpoint's neighbor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    edges: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph from raw CSR arrays, checking only the structural
    /// invariants (offset bounds and vertex ids). Symmetry and simplicity are
    /// checked by [`Graph::validate`].
    pub fn from_csr(offsets: Vec<usize>, edges: Vec<Vertex>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::InvalidGraph("offsets must have n+1 entries".into()));
        }
        let n = offsets.len() - 1;
        if n as u64 >= u32::MAX as u64 {
            return Err(Error::TooManyVertices(n as u64));
        }
        if offsets[0] != 0 || offsets[n] != edges.len() {
            return Err(Error::InvalidGraph(format!(
                "offsets must start at 0 and end at m={} (got {}..{})",
                edges.len(),
                offsets[0],
                offsets[n]
            )));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidGraph("offsets are decreasing".into()));
        }
        if let Some(&bad) = edges.par_iter().find_any(|&&v| v as usize >= n) {
            return Err(Error::VertexOutOfRange {
                id: bad as u64,
                n: n as u64,
            });
        }
        Ok(Self { offsets, edges })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            edges: Vec::new(),
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of directed edge slots (twice the undirected edge count).
    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.edges[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn edges(&self) -> &[Vertex] {
        &self.edges
    }

    /// Whether `(u, v)` is an edge. Assumes sorted neighbor lists.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn undirected_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n() as Vertex).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    /// Checks every graph invariant: offset bounds, ids in range, sorted
    /// duplicate-free neighbor lists without self-loops, and symmetry.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.offsets[0] != 0 || self.offsets[n] != self.m() {
            return Err(Error::InvalidGraph("offset bounds".into()));
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidGraph("offsets are decreasing".into()));
        }
        let bad = (0..n as Vertex).into_par_iter().find_any(|&u| {
            let nb = self.neighbors(u);
            nb.iter().any(|&v| v as usize >= n)
                || nb.windows(2).any(|w| w[0] >= w[1])
                || nb.binary_search(&u).is_ok()
        });
        if let Some(u) = bad {
            return Err(Error::InvalidGraph(format!(
                "neighbor list of {u} is out of range, unsorted, duplicated or has a self-loop"
            )));
        }
        let asym = (0..n as Vertex).into_par_iter().find_any(|&u| {
            self.neighbors(u).iter().any(|&v| !self.has_edge(v, u))
        });
        if let Some(u) = asym {
            return Err(Error::InvalidGraph(format!(
                "edge slot of {u} has no reverse slot"
            )));
        }
        Ok(())
    }

    /// Whether neighbor lists are sorted, deduplicated and loop-free. Loaded
    /// files may violate this; [`Graph::simplified`] repairs them.
    pub fn is_simple(&self) -> bool {
        (0..self.n() as Vertex).into_par_iter().all(|u| {
            let nb = self.neighbors(u);
            nb.windows(2).all(|w| w[0] < w[1]) && nb.binary_search(&u).is_err()
        })
    }

    /// Symmetrized, deduplicated, loop-free copy.
    pub fn simplified(&self) -> Self {
        let pairs: EdgeList = (0..self.n() as Vertex)
            .into_par_iter()
            .flat_map_iter(|u| self.neighbors(u).iter().map(move |&v| (u, v)))
            .collect();
        symmetrize(&pairs, self.n()).expect("ids already validated")
    }
}

/// Builds a simple undirected graph from directed pairs: both directions of
/// every non-loop pair appear exactly once and neighbor lists are sorted.
pub fn symmetrize(pairs: &[(Vertex, Vertex)], n: usize) -> Result<Graph> {
    if n as u64 >= u32::MAX as u64 {
        return Err(Error::TooManyVertices(n as u64));
    }
    if let Some(&(u, v)) = pairs
        .par_iter()
        .find_any(|&&(u, v)| u as usize >= n || v as usize >= n)
    {
        return Err(Error::VertexOutOfRange {
            id: u.max(v) as u64,
            n: n as u64,
        });
    }
    let mut keys: Vec<u64> = pairs
        .par_iter()
        .filter(|&&(u, v)| u != v)
        .flat_map_iter(|&(u, v)| [key(u, v), key(v, u)])
        .collect();
    keys.par_sort_unstable();
    keys.dedup();
    Ok(from_sorted_keys(&keys, n))
}

/// CSR with both directions of every pair, by counting sort on the source.
/// Pairs must be loop-free and unique as undirected edges; neighbor lists
/// come out sorted.
pub(crate) fn from_unique_pairs(pairs: &[(Vertex, Vertex)], n: usize) -> Graph {
    if crate::par::current_num_threads() == 1 {
        return from_unique_pairs_seq(pairs, n);
    }
    use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};
    let mut offsets = vec![0usize; n + 1];
    {
        let deg: Vec<AtomicUsize> = (0..n)
            .into_par_iter()
            .with_min_len(GRAIN)
            .map(|_| AtomicUsize::new(0))
            .collect();
        pairs.par_iter().with_min_len(GRAIN).for_each(|&(u, v)| {
            deg[u as usize].fetch_add(1, Relaxed);
            deg[v as usize].fetch_add(1, Relaxed);
        });
        offsets[..n]
            .par_iter_mut()
            .zip(deg.par_iter())
            .with_min_len(GRAIN)
            .for_each(|(o, d)| *o = d.load(Relaxed));
    }
    let m = crate::par::exclusive_scan(&mut offsets);
    let mut edges = vec![0 as Vertex; m];
    {
        let cursor: Vec<AtomicUsize> = offsets[..n]
            .par_iter()
            .with_min_len(GRAIN)
            .map(|&o| AtomicUsize::new(o))
            .collect();
        let out = crate::par::atomic_u32(&mut edges);
        pairs.par_iter().with_min_len(GRAIN).for_each(|&(u, v)| {
            out[cursor[u as usize].fetch_add(1, Relaxed)].store(v, Relaxed);
            out[cursor[v as usize].fetch_add(1, Relaxed)].store(u, Relaxed);
        });
    }
    const BLOCK: usize = 4096;
    let offsets_ref = &offsets;
    let mut rest: &mut [Vertex] = &mut edges;
    let mut pieces = Vec::with_capacity(n.div_ceil(BLOCK));
    for b in 0..n.div_ceil(BLOCK) {
        let (lo, hi) = (b * BLOCK, ((b + 1) * BLOCK).min(n));
        let (piece, tail) = rest.split_at_mut(offsets_ref[hi] - offsets_ref[lo]);
        pieces.push((lo, hi, piece));
        rest = tail;
    }
    pieces.into_par_iter().for_each(|(lo, hi, piece)| {
        let base = offsets_ref[lo];
        for v in lo..hi {
            piece[offsets_ref[v] - base..offsets_ref[v + 1] - base].sort_unstable();
        }
    });
    Graph { offsets, edges }
}

/// [`from_unique_pairs`] for a single worker: the same counting sort with
/// plain increments, which are several times cheaper than uncontended
/// atomic ones.
fn from_unique_pairs_seq(pairs: &[(Vertex, Vertex)], n: usize) -> Graph {
    let mut offsets = vec![0usize; n + 1];
    for &(u, v) in pairs {
        offsets[u as usize] += 1;
        offsets[v as usize] += 1;
    }
    crate::par::exclusive_scan(&mut offsets);
    // Scatter with `offsets[v]` as the cursor, leaving it at the start of
    // `v + 1`; shifting right by one restores the starts.
    let mut edges = vec![0 as Vertex; 2 * pairs.len()];
    for &(u, v) in pairs {
        edges[offsets[u as usize]] = v;
        offsets[u as usize] += 1;
        edges[offsets[v as usize]] = u;
        offsets[v as usize] += 1;
    }
    offsets.copy_within(0..n, 1);
    offsets[0] = 0;
    for v in 0..n {
        match &mut edges[offsets[v]..offsets[v + 1]] {
            [] | [_] => {}
            [a, b] => {
                if *a > *b {
                    std::mem::swap(a, b);
                }
            }
            list => list.sort_unstable(),
        }
    }
    Graph { offsets, edges }
}

#[inline]
pub(crate) fn key(u: Vertex, v: Vertex) -> u64 {
    ((u as u64) << 32) | v as u64
}

/// CSR from sorted, unique `(src << 32) | dst` keys.
pub(crate) fn from_sorted_keys(keys: &[u64], n: usize) -> Graph {
    use std::sync::atomic::{AtomicUsize, Ordering};
    // One-past-end slot for every source that has edges, 0 otherwise. Each
    // source is written by exactly one segment boundary.
    let ends: Vec<AtomicUsize> = (0..n)
        .into_par_iter()
        .with_min_len(GRAIN)
        .map(|_| AtomicUsize::new(0))
        .collect();
    keys.par_iter()
        .enumerate()
        .with_min_len(GRAIN)
        .for_each(|(i, &k)| {
            let src = (k >> 32) as usize;
            if i + 1 == keys.len() || (keys[i + 1] >> 32) as usize != src {
                ends[src].store(i + 1, Ordering::Relaxed);
            }
        });
    let mut offsets = vec![0usize; n + 1];
    let mut prev = 0usize;
    for v in 0..n {
        prev = prev.max(ends[v].load(Ordering::Relaxed));
        offsets[v + 1] = prev;
    }
    let edges: Vec<Vertex> = keys.par_iter().map(|&k| k as Vertex).collect();
    Graph { offsets, edges }
}
