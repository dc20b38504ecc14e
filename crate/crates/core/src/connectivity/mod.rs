//! Connected components with a spanning forest, optionally restricted to the
//! edges accepted by a symmetric predicate.
//!
//! The default method runs a low-diameter decomposition and then unions the
//! clusters joined by inter-cluster edges in a concurrent union-find. Forest
//! edges are the BFS parent edges inside clusters plus every inter-cluster
//! edge whose union succeeded.

mod ldd;
mod union_find;

use std::sync::atomic::Ordering::Relaxed;

pub(crate) use ldd::Activation;
pub use ldd::{default_beta, ldd, LddPartition};
pub use union_find::UnionFind;

use crate::graph::{EdgeList, Graph, Vertex};
use crate::par::prelude::*;
use crate::par::{self, GRAIN};
use crate::NONE;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_bcc0;

#[derive(Clone, Debug)]
pub struct CcResult {
    /// Component label of every vertex: the smallest vertex id in its
    /// component.
    pub labels: Vec<Vertex>,
    /// `n - #components` undirected forest edges, each accepted by the
    /// predicate. Empty when forest collection was disabled.
    pub forest_edges: EdgeList,
}

impl CcResult {
    pub fn num_components(&self) -> usize {
        self.labels
            .par_iter()
            .enumerate()
            .filter(|&(v, &l)| v as Vertex == l)
            .count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcMethod {
    /// Low-diameter decomposition followed by union-find.
    Ldd,
    /// Union-find over every kept edge, no decomposition.
    UnionFind,
}

#[derive(Clone, Copy, Debug)]
pub struct CcOptions {
    pub method: CcMethod,
    /// Decomposition parameter; `None` means [`default_beta`].
    pub beta: Option<f64>,
    pub seed: u64,
    pub collect_forest: bool,
}

impl Default for CcOptions {
    fn default() -> Self {
        Self {
            method: CcMethod::Ldd,
            beta: None,
            seed: DEFAULT_SEED,
            collect_forest: true,
        }
    }
}

/// Components of `g` restricted to edges with `keep_edge(u, v)`. The
/// predicate must be symmetric.
pub fn connected_components<F>(g: &Graph, keep_edge: F) -> CcResult
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    connected_components_with(g, keep_edge, &CcOptions::default())
}

pub fn connected_components_with<F>(g: &Graph, keep_edge: F, opts: &CcOptions) -> CcResult
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    match opts.method {
        CcMethod::Ldd => {
            let beta = opts.beta.unwrap_or_else(|| default_beta(g.n()));
            ldd_union_find(g, keep_edge, &Activation::new(g.n(), beta, opts.seed), opts.collect_forest)
        }
        CcMethod::UnionFind => plain_union_find(g, keep_edge, opts.collect_forest),
    }
}

/// Like [`connected_components_with`] with the decomposition method, but
/// reusing a precomputed activation order.
pub(crate) fn ldd_union_find<F>(g: &Graph, keep: F, act: &Activation, collect_forest: bool) -> CcResult
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    let n = g.n();
    let state = ldd::ldd_filtered(g, act, &keep);

    let mut forest: EdgeList = if collect_forest {
        state
            .par_iter()
            .enumerate()
            .with_min_len(GRAIN)
            .filter_map(|(v, &s)| {
                let p = ldd::parent_of(s);
                (p as usize != v).then_some((p, v as Vertex))
            })
            .collect()
    } else {
        Vec::new()
    };

    let uf = UnionFind::new(n);
    let join = |u: Vertex, out: &mut dyn FnMut(Vertex, Vertex)| {
        let cu = ldd::cluster_of(state[u as usize]);
        for &w in g.neighbors(u) {
            if u < w {
                let cw = ldd::cluster_of(state[w as usize]);
                if cu != cw && keep(u, w) && uf.union(cu, cw) {
                    out(u, w);
                }
            }
        }
    };
    let vertices = (0..n as Vertex).into_par_iter().with_min_len(GRAIN / 4);
    if collect_forest {
        forest.par_extend(vertices.flat_map_iter(|u| {
            let mut found = Vec::new();
            join(u, &mut |a, b| found.push((a, b)));
            found
        }));
    } else {
        vertices.for_each(|u| join(u, &mut |_, _| {}));
    }

    // Union-find roots are minimal cluster ids; relabel to minimal vertices.
    let mut labels: Vec<Vertex> = state
        .par_iter()
        .with_min_len(GRAIN)
        .map(|&s| uf.find(ldd::cluster_of(s)))
        .collect();
    drop(state);
    drop(uf);
    let min_vertex = par::atomic_vec_u32(n, NONE);
    labels
        .par_iter()
        .enumerate()
        .with_min_len(GRAIN)
        .for_each(|(v, &r)| {
            let slot = &min_vertex[r as usize];
            if slot.load(Relaxed) > v as Vertex {
                slot.fetch_min(v as Vertex, Relaxed);
            }
        });
    labels
        .par_iter_mut()
        .with_min_len(GRAIN)
        .for_each(|r| *r = min_vertex[*r as usize].load(Relaxed));

    CcResult {
        labels,
        forest_edges: forest,
    }
}

fn plain_union_find<F>(g: &Graph, keep: F, collect_forest: bool) -> CcResult
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    let n = g.n();
    let uf = UnionFind::new(n);
    let joins = (0..n as Vertex)
        .into_par_iter()
        .with_min_len(GRAIN / 4)
        .flat_map_iter(|u| {
            let (uf, keep) = (&uf, &keep);
            g.neighbors(u)
                .iter()
                .copied()
                .filter_map(move |w| (u < w && keep(u, w) && uf.union(u, w)).then_some((u, w)))
        });
    let forest_edges = if collect_forest {
        joins.collect()
    } else {
        joins.for_each(|_| {});
        Vec::new()
    };
    // Roots are set minima already.
    CcResult {
        labels: uf.into_roots(),
        forest_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    /// Sequential BFS labeling with minimum-vertex labels.
    fn bfs_labels<F: Fn(Vertex, Vertex) -> bool>(g: &Graph, keep: F) -> Vec<Vertex> {
        let mut label = vec![NONE; g.n()];
        for s in 0..g.n() as Vertex {
            if label[s as usize] != NONE {
                continue;
            }
            label[s as usize] = s;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if label[w as usize] == NONE && keep(u, w) {
                        label[w as usize] = s;
                        queue.push_back(w);
                    }
                }
            }
        }
        label
    }

    fn check_forest(g: &Graph, cc: &CcResult) {
        let comps = cc.num_components();
        assert_eq!(cc.forest_edges.len(), g.n() - comps);
        let uf = UnionFind::new(g.n());
        for &(u, v) in &cc.forest_edges {
            assert!(g.has_edge(u, v));
            assert_eq!(cc.labels[u as usize], cc.labels[v as usize]);
            assert!(uf.union(u, v), "forest edge ({u},{v}) closes a cycle");
        }
    }

    #[test]
    fn nothing_kept() {
        let g = gen::gen_random(40, 0.2, 1);
        let cc = connected_components(&g, |_, _| false);
        assert_eq!(cc.labels, (0..40).collect::<Vec<_>>());
        assert!(cc.forest_edges.is_empty());
    }

    #[test]
    fn complete_graph() {
        let g = gen::gen_random(25, 1.0, 1);
        let cc = connected_components(&g, |_, _| true);
        assert!(cc.labels.iter().all(|&l| l == 0));
        assert_eq!(cc.forest_edges.len(), 24);
        check_forest(&g, &cc);
    }

    #[test]
    fn matches_bfs_on_random_graphs() {
        for seed in 0..50 {
            let g = gen::gen_random(64, 0.05, seed);
            let cc = connected_components(&g, |_, _| true);
            assert_eq!(cc.labels, bfs_labels(&g, |_, _| true));
            check_forest(&g, &cc);
        }
    }

    #[test]
    fn filtered_components_match_bfs() {
        let keep = |u: Vertex, v: Vertex| !(u + v).is_multiple_of(3);
        for seed in 0..20 {
            let g = gen::gen_random(200, 0.03, seed);
            for method in [CcMethod::Ldd, CcMethod::UnionFind] {
                let opts = CcOptions {
                    method,
                    ..CcOptions::default()
                };
                let cc = connected_components_with(&g, keep, &opts);
                assert_eq!(cc.labels, bfs_labels(&g, keep));
                check_forest(&g, &cc);
                assert!(cc.forest_edges.iter().all(|&(u, v)| keep(u, v)));
            }
        }
    }

    #[test]
    fn labels_independent_of_threads() {
        let g = gen::gen_grid(50, 80, true, 0.55, 3);
        let a = connected_components(&g, |_, _| true);
        for t in [1, 2, 4] {
            let b = par::install(t, || connected_components(&g, |_, _| true));
            assert_eq!(a.labels, b.labels);
        }
    }

    #[test]
    fn empty_graph() {
        let cc = connected_components(&Graph::empty(0), |_, _| true);
        assert!(cc.labels.is_empty());
    }
}
