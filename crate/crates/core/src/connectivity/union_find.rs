use std::sync::atomic::{AtomicU32, Ordering::Relaxed};

use crate::graph::Vertex;
use crate::par;

/// Concurrent union-find over `0..n`.
///
/// Roots are always linked under the smaller root and `find` applies path
/// splitting with CAS, so every parent pointer points to a smaller id. The
/// structure therefore stays acyclic under any interleaving, and the root of
/// each set is its minimum element.
pub struct UnionFind {
    parent: Vec<AtomicU32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        use par::prelude::*;
        let parent = (0..n as Vertex)
            .into_par_iter()
            .with_min_len(par::GRAIN)
            .map(AtomicU32::new)
            .collect();
        Self { parent }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Current root of `u`.
    #[inline]
    pub fn find(&self, mut u: Vertex) -> Vertex {
        loop {
            let p = self.parent[u as usize].load(Relaxed);
            if p == u {
                return u;
            }
            let gp = self.parent[p as usize].load(Relaxed);
            if gp != p {
                let _ = self.parent[u as usize].compare_exchange_weak(p, gp, Relaxed, Relaxed);
            }
            u = p;
        }
    }

    /// Merges the sets of `u` and `v`. Returns `true` iff this call performed
    /// the merge; across all concurrent callers exactly one call succeeds per
    /// pair of sets that end up joined.
    #[inline]
    pub fn union(&self, u: Vertex, v: Vertex) -> bool {
        let (mut a, mut b) = (u, v);
        loop {
            let ra = self.find(a);
            let rb = self.find(b);
            if ra == rb {
                return false;
            }
            let (hi, lo) = if ra > rb { (ra, rb) } else { (rb, ra) };
            if self.parent[hi as usize]
                .compare_exchange(hi, lo, Relaxed, Relaxed)
                .is_ok()
            {
                return true;
            }
            a = ra;
            b = rb;
        }
    }

    /// Root of every element, consuming the structure.
    pub fn into_roots(self) -> Vec<Vertex> {
        use par::prelude::*;
        let n = self.len();
        (0..n as Vertex)
            .into_par_iter()
            .with_min_len(par::GRAIN)
            .map(|u| self.find(u))
            .collect()
    }
}
