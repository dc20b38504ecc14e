//! Corpus and independent oracles shared by the integration tests.
#![allow(dead_code)]

use fastbcc::connectivity::UnionFind;
use fastbcc::graph::symmetrize;
use fastbcc::{gen, Graph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` seeded G(n, p) graphs with `n` in `4..=64` and `p` in
/// `[0.02, 0.5]`.
pub fn random_corpus(count: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=64);
            // Log-uniform p so sparse, tree-like graphs are well represented.
            let p = (0.02f64.ln() + rng.gen::<f64>() * (0.5f64.ln() - 0.02f64.ln())).exp();
            let s = rng.gen();
            (format!("gnp#{i}(n={n},p={p:.3},seed={s})"), gen::gen_random(n, p, s))
        })
        .collect()
}

pub fn bowtie() -> Graph {
    symmetrize(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], 5).unwrap()
}

/// Two triangles hanging off both ends of a path, plus an isolated vertex.
pub fn barbell() -> Graph {
    symmetrize(
        &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)],
        9,
    )
    .unwrap()
}

/// Disjoint union of several shapes in one vertex set.
pub fn union(parts: &[Graph]) -> Graph {
    let mut pairs = Vec::new();
    let mut base = 0;
    for g in parts {
        pairs.extend(g.undirected_edges().map(|(u, v)| (u + base, v + base)));
        base += g.n() as Vertex;
    }
    symmetrize(&pairs, base as usize).unwrap()
}

pub fn structured_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("empty".into(), Graph::empty(0)),
        ("isolated".into(), Graph::empty(5)),
        ("k2".into(), gen::gen_chain(2)),
        ("bowtie".into(), bowtie()),
        ("barbell".into(), barbell()),
        ("k12".into(), gen::gen_random(12, 1.0, 0)),
        (
            "mixed".into(),
            union(&[gen::gen_cycle(5), gen::gen_chain(4), bowtie(), Graph::empty(2), gen::gen_star(6)]),
        ),
    ];
    for n in [3, 4, 5, 8, 12, 17, 64, 300] {
        out.push((format!("chain{n}"), gen::gen_chain(n)));
        out.push((format!("cycle{n}"), gen::gen_cycle(n)));
        out.push((format!("star{n}"), gen::gen_star(n)));
    }
    for (r, c) in [(2, 2), (3, 4), (5, 5), (8, 13)] {
        for circular in [false, true] {
            for (keep, seed) in [(1.0, 0), (0.7, 1), (0.55, 2)] {
                out.push((
                    format!("grid{r}x{c}{}keep{keep}", if circular { "c" } else { "" }),
                    gen::gen_grid(r, c, circular, keep, seed),
                ));
            }
        }
    }
    out
}

/// Structured shapes plus `random` seeded G(n, p) graphs.
pub fn corpus(random: usize) -> Vec<(String, Graph)> {
    let mut c = structured_corpus();
    c.extend(random_corpus(random, 0xb1c0));
    c
}

/// Component id per vertex of `g` with `removed` deleted (`u32::MAX` for the
/// removed vertex).
pub fn components_without(g: &Graph, removed: Option<Vertex>) -> (Vec<u32>, usize) {
    let n = g.n();
    let mut comp = vec![u32::MAX; n];
    let mut count = 0;
    for s in 0..n as Vertex {
        if comp[s as usize] != u32::MAX || Some(s) == removed {
            continue;
        }
        comp[s as usize] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if comp[w as usize] == u32::MAX && Some(w) != removed {
                    comp[w as usize] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (comp, count as usize)
}

/// Articulation points by deletion: vertices whose removal increases the
/// number of components.
pub fn articulation_oracle(g: &Graph) -> Vec<Vertex> {
    let (_, base) = components_without(g, None);
    (0..g.n() as Vertex)
        .filter(|&v| components_without(g, Some(v)).1 > base)
        .collect()
}

/// `pair[u][v]`: whether distinct `u` and `v` lie in a common block. By
/// Menger, that holds iff they are adjacent, or connected with no single
/// other vertex separating them.
pub fn biconnected_pairs(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let (comp, _) = components_without(g, None);
    let without: Vec<Vec<u32>> = (0..n as Vertex).map(|w| components_without(g, Some(w)).0).collect();
    let mut pair = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let together = g.has_edge(u as Vertex, v as Vertex)
                || (comp[u] == comp[v]
                    && (0..n)
                        .filter(|&w| w != u && w != v)
                        .all(|w| without[w][u] == without[w][v]));
            pair[u][v] = together;
            pair[v][u] = together;
        }
    }
    pair
}

/// Whether `a` is an ancestor of (or equal to) `d`, by walking parents.
pub fn is_ancestor_by_walk(parent: &[Vertex], a: Vertex, mut d: Vertex) -> bool {
    loop {
        if d == a {
            return true;
        }
        let p = parent[d as usize];
        if p == d {
            return false;
        }
        d = p;
    }
}

/// Every undirected edge of `g` merged by union-find succeeds exactly when
/// the edge set is a forest; returns that verdict.
pub fn is_forest(n: usize, edges: &[(Vertex, Vertex)]) -> bool {
    let uf = UnionFind::new(n);
    edges.iter().all(|&(u, v)| uf.union(u, v))
}

/// Labels from a single-threaded BFS over the edges `keep` accepts, named
/// by the smallest vertex of each component.
pub fn bfs_labels(g: &Graph, keep: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vertex> {
    let n = g.n();
    let mut label = vec![u32::MAX; n];
    for s in 0..n as Vertex {
        if label[s as usize] != u32::MAX {
            continue;
        }
        label[s as usize] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w as usize] == u32::MAX && keep(u, w) {
                    label[w as usize] = s;
                    queue.push_back(w);
                }
            }
        }
    }
    label
}

/// Vertex sets of every subtree, by explicit child lists.
pub fn subtree_sets(parent: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = parent.len();
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if parent[v] as usize != v {
            children[parent[v] as usize].push(v as Vertex);
        }
    }
    (0..n as Vertex)
        .map(|u| {
            let mut out = vec![u];
            let mut i = 0;
            while i < out.len() {
                out.extend_from_slice(&children[out[i] as usize]);
                i += 1;
            }
            out.sort_unstable();
            out
        })
        .collect()
}
