//! Low-diameter decomposition by ball growing with exponentially staggered
//! source activation.
//!
//! Every vertex `v` draws a shift `d_v ~ Exp(beta)` and, unless some ball has
//! already reached it, starts its own cluster in round `floor(d_max - d_v)`.
//! Each round, all balls grow by one BFS hop. A vertex reached by several
//! balls in the same round joins the one with the smallest cluster id; among
//! those, its BFS parent is the smallest frontier vertex.

use std::sync::atomic::{AtomicU64, Ordering::Relaxed};
use std::sync::OnceLock;

use crate::graph::{Graph, Vertex};
use crate::par::prelude::*;
use crate::par::{self, GRAIN};

/// A partition of the vertices into connected clusters.
#[derive(Clone, Debug)]
pub struct LddPartition {
    /// Cluster id (the source vertex) of every vertex.
    pub cluster: Vec<Vertex>,
    /// BFS parent inside the cluster; sources point to themselves.
    pub parent: Vec<Vertex>,
    pub beta: f64,
}

/// `1 / log2(n)`, clamped into `(0, 1]`.
pub fn default_beta(n: usize) -> f64 {
    if n <= 2 {
        1.0
    } else {
        (1.0 / (n as f64).log2()).min(1.0)
    }
}

/// Decomposes `g` over all edges.
pub fn ldd(g: &Graph, beta: f64, seed: u64) -> LddPartition {
    assert!(beta > 0.0 && beta <= 1.0, "beta must be in (0, 1]");
    let state = ldd_filtered(g, &Activation::new(g.n(), beta, seed), |_, _| true);
    let cluster = state.par_iter().map(|&s| cluster_of(s)).collect();
    let parent = state.par_iter().map(|&s| parent_of(s)).collect();
    LddPartition {
        cluster,
        parent,
        beta,
    }
}

#[inline]
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// `log2(1 + i / 256)` for `i` in `0..=256`.
fn log2_table() -> &'static [f32; 257] {
    static TABLE: OnceLock<[f32; 257]> = OnceLock::new();
    TABLE.get_or_init(|| std::array::from_fn(|i| (1.0 + i as f64 / 256.0).log2() as f32))
}

/// Uniform draw in `(0, 1]` for vertex `v`, returned as its natural log.
/// `key` is the already mixed seed. The mantissa's log comes from a small
/// table with linear interpolation (error below `3e-6`); the shifts only
/// need to be roughly exponential, and libm's `ln` used to dominate the
/// decomposition's cost.
#[inline]
fn log_uniform(key: u64, v: Vertex, table: &[f32; 257]) -> f32 {
    // y / 2^53 is uniform in (0, 1].
    let y = (splitmix64(key.wrapping_add(v as u64)) >> 11) + 1;
    let lz = y.leading_zeros();
    let frac = (y << lz) << 1;
    let idx = (frac >> 56) as usize;
    let t = ((frac >> 32) & 0xff_ffff) as f32 * (1.0 / (1u32 << 24) as f32);
    let mant = table[idx] + (table[idx + 1] - table[idx]) * t;
    ((63 - lz as i32 - 53) as f32 + mant) * std::f32::consts::LN_2
}

/// Vertices bucketed by the round in which they try to start a cluster.
/// Depends only on `n`, `beta` and the seed, so one order can serve several
/// decompositions of graphs on the same vertex set.
#[derive(Clone, Debug)]
pub(crate) struct Activation {
    order: Vec<Vertex>,
    /// `order[starts[r]..starts[r + 1]]` activates in round `r`.
    starts: Vec<usize>,
}

impl Activation {
    pub(crate) fn new(n: usize, beta: f64, seed: u64) -> Self {
        assert!(beta > 0.0 && beta <= 1.0, "beta must be in (0, 1]");
        if n == 0 {
            return Self {
                order: Vec::new(),
                starts: vec![0],
            };
        }
        let (key, table) = (splitmix64(seed), log2_table());
        // Draws are cheap to recompute, so the minimum is found without
        // storing them.
        let min_log = (0..n as Vertex)
            .into_par_iter()
            .with_min_len(GRAIN)
            .map(|v| log_uniform(key, v, table))
            .min_by(|a, b| a.total_cmp(b))
            .unwrap();
        // round(v) = floor(d_max - d_v) with d_v = -ln(U_v) / beta.
        let inv_beta = (1.0 / beta) as f32;
        let rounds: Vec<u16> = (0..n as Vertex)
            .into_par_iter()
            .with_min_len(GRAIN)
            // Non-negative, so truncation is floor.
            .map(|v| ((log_uniform(key, v, table) - min_log) * inv_beta).min(u16::MAX as f32) as u16)
            .collect();
        let num_rounds = *rounds.par_iter().max().unwrap() as usize + 1;

        // Parallel counting sort: per-chunk histograms, round-major offsets.
        const CHUNK: usize = 1 << 16;
        let chunks = n.div_ceil(CHUNK);
        let mut hist: Vec<usize> = rounds
            .par_chunks(CHUNK)
            .flat_map_iter(|c| {
                let mut h = vec![0usize; num_rounds];
                for &r in c {
                    h[r as usize] += 1;
                }
                h
            })
            .collect();
        let mut starts = vec![0usize; num_rounds + 1];
        let mut acc = 0;
        for r in 0..num_rounds {
            starts[r] = acc;
            for c in 0..chunks {
                let cnt = hist[c * num_rounds + r];
                hist[c * num_rounds + r] = acc;
                acc += cnt;
            }
        }
        starts[num_rounds] = acc;
        let mut order = vec![0 as Vertex; n];
        {
            let out = par::atomic_u32(&mut order);
            rounds
                .par_chunks(CHUNK)
                .zip(hist.par_chunks_mut(num_rounds))
                .enumerate()
                .for_each(|(c, (rs, cursor))| {
                    for (i, &r) in rs.iter().enumerate() {
                        let slot = &mut cursor[r as usize];
                        out[*slot].store((c * CHUNK + i) as Vertex, Relaxed);
                        *slot += 1;
                    }
                });
        }
        Self { order, starts }
    }

    pub(crate) fn n(&self) -> usize {
        self.order.len()
    }
}

/// Set on claims made during the current round; cleared when they settle.
const TENTATIVE: u64 = 1 << 63;
const PREFETCH_DISTANCE: usize = 8;

#[inline]
fn pack(cluster: Vertex, parent: Vertex) -> u64 {
    ((cluster as u64) << 32) | parent as u64
}

#[inline]
pub(crate) fn cluster_of(state: u64) -> Vertex {
    (state >> 32) as Vertex
}

#[inline]
pub(crate) fn parent_of(state: u64) -> Vertex {
    state as Vertex
}

/// Decomposition over the edges accepted by `keep`. Returns the settled
/// `(cluster << 32) | bfs_parent` word of every vertex.
///
/// One word per vertex holds everything: `u64::MAX` while unreached, a
/// tentative claim (top bit set) during the round that reaches it, and the
/// settled value afterwards. Settled words are below every tentative one, so
/// a single `fetch_min` both resolves same-round ties towards the smallest
/// `(cluster, parent)` and leaves settled vertices alone.
pub(crate) fn ldd_filtered<F>(g: &Graph, act: &Activation, keep: F) -> Vec<u64>
where
    F: Fn(Vertex, Vertex) -> bool + Sync,
{
    let n = g.n();
    assert!(n < 1 << 31, "decomposition supports fewer than 2^31 vertices");
    assert_eq!(act.n(), n, "activation order built for another vertex count");
    let (order, starts) = (&act.order, &act.starts);
    // Vertices without kept edges would only ever form singleton clusters;
    // settling them here, in vertex order, spares the rounds from touching
    // them at random.
    let state: Vec<AtomicU64> = (0..n as Vertex)
        .into_par_iter()
        .with_min_len(GRAIN)
        .map(|v| {
            let isolated = !g.neighbors(v).iter().any(|&w| keep(v, w));
            AtomicU64::new(if isolated { pack(v, v) } else { u64::MAX })
        })
        .collect();

    let mut unsettled = state
        .par_iter()
        .with_min_len(GRAIN)
        .filter(|s| s.load(Relaxed) == u64::MAX)
        .count();

    let solo = par::current_num_threads() == 1;
    let num_rounds = starts.len() - 1;
    let mut frontier: Vec<Vertex> = Vec::new();
    let mut next: Vec<Vertex> = Vec::new();
    let mut round = 0;
    // Once everything has settled, the remaining activations are no-ops.
    while (round < num_rounds && unsettled > 0) || !frontier.is_empty() {
        if round < num_rounds {
            let before = frontier.len();
            let batch = &order[starts[round]..starts[round + 1]];
            frontier.par_extend(
                batch
                    .par_iter()
                    .with_min_len(GRAIN)
                    .copied()
                    .filter(|&v| {
                        let slot = &state[v as usize];
                        let fresh = slot.load(Relaxed) == u64::MAX;
                        if fresh {
                            slot.store(pack(v, v), Relaxed);
                        }
                        fresh
                    }),
            );
            unsettled -= frontier.len() - before;
        }
        next.clear();
        let expand = |u: Vertex, out: &mut Vec<Vertex>| {
            let offer = TENTATIVE | (state[u as usize].load(Relaxed) & !(u32::MAX as u64)) | u as u64;
            for &w in g.neighbors(u) {
                let slot = &state[w as usize];
                let seen = slot.load(Relaxed);
                if seen > offer && keep(u, w) {
                    // A lone worker cannot race itself; skip the locked op.
                    let prev = if solo {
                        slot.store(offer, Relaxed);
                        seen
                    } else {
                        slot.fetch_min(offer, Relaxed)
                    };
                    if prev == u64::MAX {
                        out.push(w);
                    }
                }
            }
        };
        // Frontier vertices are scattered, so fetch ahead what the next few
        // expansions will touch.
        let expand_all = |us: &[Vertex], out: &mut Vec<Vertex>| {
            for (i, &u) in us.iter().enumerate() {
                if let Some(&ahead) = us.get(i + PREFETCH_DISTANCE) {
                    par::prefetch(&state[ahead as usize]);
                    par::prefetch(&g.offsets()[ahead as usize]);
                }
                expand(u, out);
            }
        };
        if frontier.len() <= GRAIN {
            expand_all(&frontier, &mut next);
        } else {
            next.par_extend(frontier.par_chunks(GRAIN).flat_map_iter(|chunk| {
                let mut out = Vec::with_capacity(chunk.len());
                expand_all(chunk, &mut out);
                out
            }));
        }
        next.par_iter().with_min_len(GRAIN).for_each(|&w| {
            let slot = &state[w as usize];
            slot.store(slot.load(Relaxed) & !TENTATIVE, Relaxed);
        });
        unsettled -= next.len();
        std::mem::swap(&mut frontier, &mut next);
        round += 1;
    }
    state.into_iter().map(AtomicU64::into_inner).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    /// Whether every cluster induces a connected subgraph,
    /// checked by BFS restricted to cluster members.
    fn clusters_connected(g: &Graph, cluster: &[Vertex]) -> bool {
        let n = g.n();
        let mut seen = vec![false; n];
        let mut roots_seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let c = cluster[s];
            if roots_seen[c as usize] {
                return false;
            }
            roots_seen[c as usize] = true;
            let mut stack = vec![s as Vertex];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if !seen[w as usize] && cluster[w as usize] == c {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        true
    }

    #[test]
    fn beta_one_is_still_valid() {
        let g = gen::gen_random(300, 0.02, 4);
        let p = ldd(&g, 1.0, 7);
        assert!(clusters_connected(&g, &p.cluster));
        for v in 0..g.n() {
            let par = p.parent[v];
            if par as usize != v {
                assert!(g.has_edge(par, v as Vertex));
                assert_eq!(p.cluster[par as usize], p.cluster[v]);
            } else {
                assert_eq!(p.cluster[v], v as Vertex);
            }
        }
    }

    #[test]
    fn log_draw_matches_libm() {
        let table = log2_table();
        for v in 0..100_000 {
            let y = (splitmix64(17u64.wrapping_add(v as u64)) >> 11) + 1;
            let exact = (y as f64 / (1u64 << 53) as f64).ln();
            let approx = log_uniform(17, v, table) as f64;
            assert!((exact - approx).abs() <= 1e-5 * exact.abs().max(1.0), "{exact} vs {approx}");
        }
    }

    #[test]
    fn single_vertex() {
        let p = ldd(&Graph::empty(1), 0.5, 1);
        assert_eq!(p.cluster, vec![0]);
    }

    #[test]
    fn chain_cut_fraction_is_bounded() {
        let g = gen::gen_chain(1024);
        let beta = default_beta(g.n());
        let mut total = 0.0;
        for seed in 0..100 {
            let p = ldd(&g, beta, seed);
            assert!(clusters_connected(&g, &p.cluster));
            let cut = g
                .undirected_edges()
                .filter(|&(u, v)| p.cluster[u as usize] != p.cluster[v as usize])
                .count();
            total += cut as f64 / (g.m() / 2) as f64;
        }
        let mean = total / 100.0;
        assert!(mean <= 2.0 * beta, "mean cut fraction {mean} vs beta {beta}");
    }

    #[test]
    fn deterministic_per_seed() {
        let g = gen::gen_grid(30, 30, true, 0.7, 2);
        let a = ldd(&g, 0.2, 5);
        let b = crate::par::install(2, || ldd(&g, 0.2, 5));
        assert_eq!(a.cluster, b.cluster);
        assert_eq!(a.parent, b.parent);
    }
}
