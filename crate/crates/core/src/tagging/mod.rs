//! Per-vertex `w1`/`w2` and per-subtree `low`/`high` tags.
//!
//! `w1[v]` is the smallest `first` among `v` and its non-tree neighbors,
//! `w2[v]` the largest. `low[v]` and `high[v]` aggregate them over the
//! subtree of `v`, read as one range query over tour positions
//! `[first[v], last[v]]`. Positions that are not the `first` of any vertex
//! hold the identity element, so every subtree vertex counts exactly once.

mod sparse_table;

use std::sync::atomic::Ordering::Relaxed;

pub use sparse_table::{build_sparse_table, Mode, SparseTable};

use crate::euler_tour::RootedForest;
use crate::graph::{Graph, Vertex};
use crate::par;
use crate::par::prelude::*;
use crate::par::GRAIN;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexTags {
    pub w1: Vec<u32>,
    pub w2: Vec<u32>,
    pub low: Vec<u32>,
    pub high: Vec<u32>,
}

/// `(w1, w2)`, gathered per vertex over its neighbor list.
///
/// Each vertex reads its own list, so no atomics are needed and the result
/// is deterministic. The non-tree edge `(u, v)` contributes `first[v]` to
/// `u` from `u`'s list and `first[u]` to `v` from `v`'s.
pub fn compute_w<F>(g: &Graph, rf: &RootedForest, is_tree_edge: F) -> (Vec<u32>, Vec<u32>)
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    let first = &rf.first;
    let n = g.n();
    let mut w1 = vec![0u32; n];
    let mut w2 = vec![0u32; n];
    w1.par_iter_mut()
        .zip(w2.par_iter_mut())
        .enumerate()
        .with_min_len(GRAIN / 4)
        .for_each(|(u, (lo, hi))| {
            let u = u as Vertex;
            let f = first[u as usize];
            let (mut a, mut b) = (f, f);
            for &v in g.neighbors(u) {
                if !is_tree_edge(u, v) {
                    let fv = first[v as usize];
                    a = a.min(fv);
                    b = b.max(fv);
                }
            }
            *lo = a;
            *hi = b;
        });
    (w1, w2)
}

/// Same result as [`compute_w`], by scattering every non-tree edge into both
/// endpoints with atomic min/max. Kept for differential testing.
pub fn compute_w_atomic<F>(g: &Graph, rf: &RootedForest, is_tree_edge: F) -> (Vec<u32>, Vec<u32>)
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    let first = &rf.first;
    let mut w1 = first.clone();
    let mut w2 = first.clone();
    {
        let (a1, a2) = (par::atomic_u32(&mut w1), par::atomic_u32(&mut w2));
        (0..g.n() as Vertex)
            .into_par_iter()
            .with_min_len(GRAIN / 4)
            .for_each(|u| {
                for &v in g.neighbors(u) {
                    if u < v && !is_tree_edge(u, v) {
                        let (fu, fv) = (first[u as usize], first[v as usize]);
                        a1[u as usize].fetch_min(fv, Relaxed);
                        a1[v as usize].fetch_min(fu, Relaxed);
                        a2[u as usize].fetch_max(fv, Relaxed);
                        a2[v as usize].fetch_max(fu, Relaxed);
                    }
                }
            });
    }
    (w1, w2)
}

/// Subtree range query over `w` laid out in tour order.
fn subtree_aggregate(rf: &RootedForest, w: &[u32], mode: Mode) -> Vec<u32> {
    let positions = rf.num_positions();
    if positions == 0 {
        return Vec::new();
    }
    let mut tour = vec![mode.identity(); positions];
    {
        let tour = par::atomic_u32(&mut tour);
        rf.first
            .par_iter()
            .zip(w.par_iter())
            .with_min_len(GRAIN)
            .for_each(|(&f, &x)| tour[f as usize].store(x, Relaxed));
    }
    let table = build_sparse_table(tour, mode).expect("non-empty");
    rf.first
        .par_iter()
        .zip(rf.last.par_iter())
        .with_min_len(GRAIN)
        .map(|(&f, &l)| table.query(f as usize, l as usize))
        .collect()
}

/// `low`/`high` from `w1`/`w2`. The two tables are built one after the other
/// to keep only one alive at a time.
pub fn compute_low_high(rf: &RootedForest, w1: Vec<u32>, w2: Vec<u32>) -> VertexTags {
    let low = subtree_aggregate(rf, &w1, Mode::Min);
    let high = subtree_aggregate(rf, &w2, Mode::Max);
    VertexTags { w1, w2, low, high }
}

/// All four tags for `g` over its spanning forest `rf`.
pub fn compute_tags<F>(g: &Graph, rf: &RootedForest, is_tree_edge: F) -> VertexTags
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    let (w1, w2) = compute_w(g, rf, is_tree_edge);
    compute_low_high(rf, w1, w2)
}
