//! Tarjan-Vishkin with an explicit skeleton graph.
//!
//! Each undirected edge of `G` becomes a skeleton vertex. Over the same
//! rooted spanning forest and tags as [`fast_bcc`](crate::fast_bcc), with
//! `e(u)` the edge from a non-root `u` to its parent, the skeleton links
//!
//! 1. `e(u)` with `(u, v)` for every non-tree edge with `first[v] < first[u]`;
//! 2. `e(u)` with `e(v)` for every cross edge `(u, v)`;
//! 3. `e(u)` with `e(p(u))` when `p(u)` is not a root and `T_u` has an edge
//!    leaving `T_{p(u)}`.
//!
//! Components of the skeleton are the blocks of `G`.

use std::sync::atomic::Ordering::Relaxed;

use crate::alloc;
use crate::bcc::{root_and_tag, StepTimings};
use crate::connectivity::{self, CcOptions};
use crate::graph::{from_sorted_keys, key, Graph, Vertex};
use crate::par;
use crate::par::prelude::*;
use crate::par::GRAIN;
use crate::{Error, Result, NONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TvResult {
    pub block_count: usize,
    /// Peak bytes allocated during the run, in 64-bit words. Measured by the
    /// counting allocator when it is installed; otherwise the sum of the
    /// skeleton's own arrays.
    pub memory_words: usize,
    pub skeleton_vertices: usize,
    pub skeleton_edges: usize,
}

struct EdgeIds<'a> {
    g: &'a Graph,
    /// Id of the first edge `(u, w)` with `u < w`.
    base: Vec<u32>,
}

impl EdgeIds<'_> {
    #[inline]
    fn get(&self, u: Vertex, w: Vertex) -> u32 {
        let (a, b) = (u.min(w), u.max(w));
        let nb = self.g.neighbors(a);
        let above = nb.partition_point(|&x| x < a);
        let idx = nb.binary_search(&b).expect("edge exists");
        self.base[a as usize] + (idx - above) as u32
    }
}

pub fn tarjan_vishkin(g: &Graph) -> Result<TvResult> {
    let (r, measured) = alloc::measure(|| tv_inner(g));
    let mut r = r?;
    if let Some(bytes) = measured {
        r.memory_words = alloc::words(bytes);
    }
    Ok(r)
}

fn tv_inner(g: &Graph) -> Result<TvResult> {
    let n = g.n();
    let num_edges = g.m() / 2;
    if num_edges >= NONE as usize {
        return Err(Error::TooLarge {
            n: num_edges,
            max: NONE as usize - 1,
        });
    }
    let opts = CcOptions::default();
    let (rf, tags, _) = root_and_tag(g, &opts, &mut StepTimings::default());

    let mut base: Vec<usize> = (0..n as Vertex)
        .into_par_iter()
        .with_min_len(GRAIN)
        .map(|u| {
            let nb = g.neighbors(u);
            nb.len() - nb.partition_point(|&x| x < u)
        })
        .collect();
    par::exclusive_scan(&mut base);
    let ids = EdgeIds {
        g,
        base: base.into_iter().map(|b| b as u32).collect(),
    };
    let parent_edge: Vec<u32> = (0..n as Vertex)
        .into_par_iter()
        .with_min_len(GRAIN)
        .map(|u| {
            let p = rf.parent[u as usize];
            if p == u {
                NONE
            } else {
                ids.get(u, p)
            }
        })
        .collect();

    let (first, last) = (&rf.first, &rf.last);
    let is_root = |v: Vertex| rf.parent[v as usize] == v;
    let emit = |u: Vertex, out: &mut dyn FnMut(u32, u32)| {
        let ui = u as usize;
        let pu = rf.parent[ui];
        if pu != u && !is_root(pu) {
            let pi = pu as usize;
            if tags.low[ui] < first[pi] || tags.high[ui] > last[pi] {
                out(parent_edge[ui], parent_edge[pi]);
            }
        }
        for &v in g.neighbors(u) {
            let vi = v as usize;
            let tree = pu == v || rf.parent[vi] == u;
            if tree || first[vi] >= first[ui] {
                continue;
            }
            out(parent_edge[ui], ids.get(u, v));
            if !rf.is_ancestor(v, u) {
                out(parent_edge[ui], parent_edge[vi]);
            }
        }
    };

    let mut offsets: Vec<usize> = (0..n as Vertex)
        .into_par_iter()
        .with_min_len(GRAIN / 4)
        .map(|u| {
            let mut c = 0;
            emit(u, &mut |_, _| c += 2);
            c
        })
        .collect();
    let total = par::exclusive_scan(&mut offsets);
    let mut keys: Vec<u64> = Vec::new();
    keys.try_reserve_exact(total)
        .map_err(|_| Error::Allocation { words: total })?;
    keys.resize(total, 0);
    {
        let out = par::atomic_u64(&mut keys);
        (0..n as Vertex)
            .into_par_iter()
            .with_min_len(GRAIN / 4)
            .for_each(|u| {
                let mut at = offsets[u as usize];
                emit(u, &mut |a, b| {
                    out[at].store(key(a, b), Relaxed);
                    out[at + 1].store(key(b, a), Relaxed);
                    at += 2;
                });
            });
    }
    drop(offsets);
    drop(parent_edge);
    keys.par_sort_unstable();
    keys.dedup();
    let skeleton = from_sorted_keys(&keys, num_edges);
    let tally = n * 3 + total + skeleton.n() + skeleton.m() / 2;
    drop(keys);
    let cc = connectivity::connected_components_with(
        &skeleton,
        |_, _| true,
        &CcOptions {
            collect_forest: false,
            ..opts
        },
    );
    Ok(TvResult {
        block_count: cc.num_components(),
        memory_words: tally,
        skeleton_vertices: skeleton.n(),
        skeleton_edges: skeleton.m() / 2,
    })
}
