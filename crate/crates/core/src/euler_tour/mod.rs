//! Rooting spanning forests with the Euler tour technique.
//!
//! Every tree edge becomes two directed edges, grouped by source with targets
//! ascending. The circuit follows the rotation rule: the incoming edge
//! `u_i -> v` continues with `v -> u_{i+1}`, and the last incoming edge wraps
//! to the first outgoing one. Each tree's circuit is cut at its root, the
//! trees are chained in root order and the single resulting list is ranked.
//!
//! Position scheme: tree `t` with `n_t` vertices owns the `2 n_t` positions
//! `[B_t, B_t + 2 n_t)`. Its root takes `first = B_t` and
//! `last = B_t + 2 n_t - 1`; the `k`-th directed edge of its tour sits at
//! `B_t + 1 + k`. Every other vertex's `first`/`last` are the minimum and
//! maximum positions at which it is the target of a tour edge. The subtree of
//! `u` is then exactly `{ v : first[u] <= first[v] <= last[u] }`.

mod list_ranking;

use std::sync::atomic::Ordering::Relaxed;

pub use list_ranking::list_ranking;

use crate::connectivity::UnionFind;
use crate::graph::{from_unique_pairs, Graph, Vertex};
use crate::par::prelude::*;
use crate::par::{self, GRAIN};
use crate::{Error, Result, NONE};

/// Parent pointers and Euler-tour interval of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedForest {
    /// `parent[root] == root`.
    pub parent: Vec<Vertex>,
    pub first: Vec<u32>,
    pub last: Vec<u32>,
    /// One root per tree, in tour order.
    pub roots: Vec<Vertex>,
}

impl RootedForest {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Number of tour positions used (`2n` for a spanning forest).
    pub fn num_positions(&self) -> usize {
        self.last.iter().copied().max().map_or(0, |l| l as usize + 1)
    }

    #[inline]
    pub fn is_root(&self, v: Vertex) -> bool {
        self.parent[v as usize] == v
    }

    /// Whether `u` lies on the tree path from the root to `v` (inclusive).
    #[inline]
    pub fn is_ancestor(&self, u: Vertex, v: Vertex) -> bool {
        let fv = self.first[v as usize];
        self.first[u as usize] <= fv && fv <= self.last[u as usize]
    }

    /// Index into `roots` of the tree containing `v`.
    pub fn tree_of(&self, v: Vertex) -> usize {
        let fv = self.first[v as usize];
        self.roots
            .partition_point(|&r| self.first[r as usize] <= fv)
            - 1
    }
}

/// Roots the forest formed by `tree_edges`, one tree per entry of `roots`.
pub fn build_euler_tour(
    n: usize,
    tree_edges: &[(Vertex, Vertex)],
    roots: &[Vertex],
) -> Result<RootedForest> {
    validate_forest(n, tree_edges, roots)?;
    Ok(euler_tour_unchecked(n, tree_edges, roots))
}

fn validate_forest(n: usize, tree_edges: &[(Vertex, Vertex)], roots: &[Vertex]) -> Result<()> {
    if n >= (1 << 31) {
        return Err(Error::TooManyVertices(n as u64));
    }
    if let Some(&bad) = roots.iter().find(|&&r| r as usize >= n) {
        return Err(Error::VertexOutOfRange {
            id: bad as u64,
            n: n as u64,
        });
    }
    if let Some(&(u, v)) = tree_edges
        .iter()
        .find(|&&(u, v)| u as usize >= n || v as usize >= n)
    {
        return Err(Error::VertexOutOfRange {
            id: u.max(v) as u64,
            n: n as u64,
        });
    }
    let uf = UnionFind::new(n);
    if tree_edges.par_iter().any(|&(u, v)| !uf.union(u, v)) {
        return Err(Error::InvalidForest("tree edges contain a cycle".into()));
    }
    let mut tree_of_root: Vec<Vertex> = roots.iter().map(|&r| uf.find(r)).collect();
    tree_of_root.sort_unstable();
    if tree_of_root.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidForest("multiple roots in one tree".into()));
    }
    if tree_edges.len() + roots.len() != n {
        return Err(Error::InvalidForest(format!(
            "{} trees but {} roots: some tree has no root",
            n - tree_edges.len(),
            roots.len()
        )));
    }
    Ok(())
}

/// Slot of `u -> v` in the tree CSR.
#[inline]
fn slot(tree: &Graph, u: Vertex, v: Vertex) -> usize {
    let base = tree.offsets()[u as usize];
    base + tree
        .neighbors(u)
        .binary_search(&v)
        .expect("tree edges are symmetric")
}

pub(crate) fn euler_tour_unchecked(
    n: usize,
    tree_edges: &[(Vertex, Vertex)],
    roots: &[Vertex],
) -> RootedForest {
    // Directed tree edges grouped by source, targets ascending.
    let tree = from_unique_pairs(tree_edges, n);
    let len = tree.m();

    // The reverse of every slot, found once per undirected edge from its
    // smaller endpoint.
    let offsets = tree.offsets();
    let mut twin = vec![NONE; len];
    {
        let twin = par::atomic_u32(&mut twin);
        (0..n as Vertex)
            .into_par_iter()
            .with_min_len(GRAIN / 4)
            .for_each(|v| {
                let base = offsets[v as usize];
                for (s, &u) in (base..).zip(tree.neighbors(v)) {
                    if u > v {
                        let back = slot(&tree, u, v);
                        twin[s].store(back as u32, Relaxed);
                        twin[back].store(s as u32, Relaxed);
                    }
                }
            });
    }

    // Circuit links: the edge into `v` along slot `s` continues with the
    // slot after `s` in `v`'s list, cyclically.
    let mut next = vec![NONE; len];
    {
        let next = par::atomic_u32(&mut next);
        (0..n)
            .into_par_iter()
            .with_min_len(GRAIN / 4)
            .for_each(|v| {
                let (lo, hi) = (offsets[v], offsets[v + 1]);
                for s in lo..hi {
                    let after = if s + 1 == hi { lo } else { s + 1 };
                    next[twin[s] as usize].store(after as u32, Relaxed);
                }
            });
    }

    // Cut each circuit at its root and chain the trees in root order.
    let mut heads: Vec<(usize, usize)> = Vec::new(); // (root index, head slot)
    for (t, &r) in roots.iter().enumerate() {
        if tree.degree(r) > 0 {
            heads.push((t, tree.offsets()[r as usize]));
        }
    }
    for (i, &(t, _)) in heads.iter().enumerate() {
        let r = roots[t];
        let last_out = tree.offsets()[r as usize + 1] - 1;
        let tail = twin[last_out] as usize;
        next[tail] = heads.get(i + 1).map_or(NONE, |&(_, h)| h as u32);
    }
    let ranks = match heads.first() {
        Some(&(_, h)) => list_ranking(&next, h as u32).expect("valid forest yields a valid list"),
        None => Vec::new(),
    };
    drop(next);

    // Per-tree position bases.
    let mut start_rank = vec![0usize; heads.len()];
    for (i, &(_, h)) in heads.iter().enumerate() {
        start_rank[i] = ranks[h] as usize;
    }
    let mut tour_len = vec![0usize; roots.len()];
    for (i, &(t, _)) in heads.iter().enumerate() {
        let end = start_rank.get(i + 1).copied().unwrap_or(len);
        tour_len[t] = end - start_rank[i];
    }
    let mut base: Vec<usize> = tour_len.iter().map(|&e| e + 2).collect();
    par::exclusive_scan(&mut base);

    // Positions of the edges entering each vertex: its own outgoing slots'
    // twins. Every such edge lies in the vertex's own tree.
    let mut first = vec![NONE; n];
    let mut last = vec![0u32; n];
    first
        .par_iter_mut()
        .zip(last.par_iter_mut())
        .enumerate()
        .with_min_len(GRAIN / 4)
        .for_each(|(v, (f, l))| {
            let tw = &twin[offsets[v]..offsets[v + 1]];
            let Some(&s0) = tw.first() else { return };
            let r0 = ranks[s0 as usize];
            let i = if heads.len() == 1 {
                0
            } else {
                start_rank.partition_point(|&s| s <= r0 as usize) - 1
            };
            let shift = (base[heads[i].0] + 1 - start_rank[i]) as u32;
            let (mut lo, mut hi) = (r0, r0);
            for &e in &tw[1..] {
                let r = ranks[e as usize];
                lo = lo.min(r);
                hi = hi.max(r);
            }
            *f = lo + shift;
            *l = hi + shift;
        });
    drop(ranks);
    drop(twin);
    for (t, &r) in roots.iter().enumerate() {
        first[r as usize] = base[t] as u32;
        last[r as usize] = (base[t] + tour_len[t] + 1) as u32;
    }

    // The parent is the one tree neighbor entered earlier in the tour.
    let parent: Vec<Vertex> = (0..n as Vertex)
        .into_par_iter()
        .with_min_len(GRAIN / 4)
        .map(|v| {
            let fv = first[v as usize];
            tree.neighbors(v)
                .iter()
                .copied()
                .find(|&u| first[u as usize] < fv)
                .unwrap_or(v)
        })
        .collect();

    RootedForest {
        parent,
        first,
        last,
        roots: roots.to_vec(),
    }
}
