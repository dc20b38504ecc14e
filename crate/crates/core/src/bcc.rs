//! Edge classification, the Last-CC step and the label/head output.

use std::sync::atomic::Ordering::Relaxed;
use std::time::{Duration, Instant};

use crate::connectivity::{self, Activation, CcMethod, CcOptions};
use crate::euler_tour::{self, RootedForest};
use crate::graph::{Graph, Vertex};
use crate::par;
use crate::par::prelude::*;
use crate::par::GRAIN;
use crate::tagging::{self, VertexTags};
use crate::{Error, Result, NONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// Tree edge whose child subtree reaches outside the parent's subtree.
    PlainTree,
    /// Tree edge `(p(v), v)` with no edge leaving `T_v` for outside `T_{p(v)}`.
    FenceTree,
    /// Non-tree edge between an ancestor and a descendant.
    Back,
    /// Non-tree edge between unrelated vertices.
    Cross,
}

/// Blocks in `O(n)` space: the vertices sharing a label, plus the label's
/// head if it has one, form one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BccLabeling {
    /// Skeleton component of every vertex, named by its smallest vertex.
    pub label: Vec<Vertex>,
    /// `head[l]` for label `l`, [`NONE`] if the label has no head.
    pub head: Vec<Vertex>,
    pub bcc_count: usize,
    pub is_tree_root: Vec<bool>,
}

impl BccLabeling {
    pub fn n(&self) -> usize {
        self.label.len()
    }

    /// Whether label `l` stands for a block.
    pub fn is_block(&self, l: Vertex, size: usize) -> bool {
        size >= 2 || self.head[l as usize] != NONE
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepTimings {
    pub first_cc: Duration,
    pub rooting: Duration,
    pub tagging: Duration,
    pub last_cc: Duration,
}

impl StepTimings {
    pub fn total(&self) -> Duration {
        self.first_cc + self.rooting + self.tagging + self.last_cc
    }
}

#[inline]
fn is_fence(rf: &RootedForest, tags: &VertexTags, p: Vertex, v: Vertex) -> bool {
    let (p, v) = (p as usize, v as usize);
    tags.low[v] >= rf.first[p] && tags.high[v] <= rf.last[p]
}

/// Classification used inside the pipeline; the caller guarantees a simple
/// graph, so an edge is a tree edge iff one endpoint is the other's parent.
#[inline]
fn classify_unchecked(rf: &RootedForest, tags: &VertexTags, u: Vertex, v: Vertex) -> EdgeClass {
    let parent = &rf.parent;
    let tree_child = if parent[v as usize] == u && u != v {
        Some((u, v))
    } else if parent[u as usize] == v && u != v {
        Some((v, u))
    } else {
        None
    };
    match tree_child {
        Some((p, c)) if is_fence(rf, tags, p, c) => EdgeClass::FenceTree,
        Some(_) => EdgeClass::PlainTree,
        None if rf.is_ancestor(u, v) || rf.is_ancestor(v, u) => EdgeClass::Back,
        None => EdgeClass::Cross,
    }
}

/// Class of the edge `(u, v)`. Tree edges may be given in either
/// orientation.
pub fn classify_edge(
    rf: &RootedForest,
    tags: &VertexTags,
    u: Vertex,
    v: Vertex,
    is_tree: bool,
) -> Result<EdgeClass> {
    let n = rf.n();
    for x in [u, v] {
        if x as usize >= n {
            return Err(Error::VertexOutOfRange {
                id: x as u64,
                n: n as u64,
            });
        }
    }
    if u == v {
        return Err(Error::NotAnEdge { u, v });
    }
    if rf.tree_of(u) != rf.tree_of(v) {
        return Err(Error::InvalidForest(format!(
            "({u}, {v}) joins two different trees"
        )));
    }
    let (pu, pv) = (rf.parent[u as usize], rf.parent[v as usize]);
    if is_tree {
        let (p, c) = match (pu == v, pv == u) {
            (_, true) => (u, v),
            (true, _) => (v, u),
            _ => return Err(Error::NotAnEdge { u, v }),
        };
        Ok(if is_fence(rf, tags, p, c) {
            EdgeClass::FenceTree
        } else {
            EdgeClass::PlainTree
        })
    } else if rf.is_ancestor(u, v) || rf.is_ancestor(v, u) {
        Ok(EdgeClass::Back)
    } else {
        Ok(EdgeClass::Cross)
    }
}

/// Whether the edge belongs to the skeleton (plain tree or cross edge).
pub fn in_skeleton(
    rf: &RootedForest,
    tags: &VertexTags,
    u: Vertex,
    v: Vertex,
    is_tree: bool,
) -> Result<bool> {
    Ok(matches!(
        classify_edge(rf, tags, u, v, is_tree)?,
        EdgeClass::PlainTree | EdgeClass::Cross
    ))
}

/// Everything [`fast_bcc`] computed, including the intermediate forest and
/// tags.
#[derive(Clone, Debug)]
pub struct FastBccRun {
    pub labeling: BccLabeling,
    pub timings: StepTimings,
    pub forest: RootedForest,
    pub tags: VertexTags,
}

/// Biconnected components of a simple graph, with per-step timings.
pub fn fast_bcc(g: &Graph) -> (BccLabeling, StepTimings) {
    fast_bcc_with(g, &CcOptions::default())
}

/// [`fast_bcc`] with explicit connectivity options for both CC steps.
pub fn fast_bcc_with(g: &Graph, opts: &CcOptions) -> (BccLabeling, StepTimings) {
    let run = fast_bcc_detailed(g, opts);
    (run.labeling, run.timings)
}

/// Steps 1-3: spanning forest, rooting and tags.
///
/// With the decomposition method, also returns the activation order so the
/// last step can reuse it.
pub(crate) fn root_and_tag(
    g: &Graph,
    opts: &CcOptions,
    t: &mut StepTimings,
) -> (RootedForest, VertexTags, Option<Activation>) {
    let n = g.n();
    let clock = Instant::now();
    let (cc, act) = match opts.method {
        CcMethod::Ldd => {
            let beta = opts.beta.unwrap_or_else(|| connectivity::default_beta(n));
            let act = Activation::new(n, beta, opts.seed);
            (connectivity::ldd_union_find(g, |_, _| true, &act, true), Some(act))
        }
        CcMethod::UnionFind => (
            connectivity::connected_components_with(
                g,
                |_, _| true,
                &CcOptions {
                    collect_forest: true,
                    ..*opts
                },
            ),
            None,
        ),
    };
    let roots: Vec<Vertex> = cc
        .labels
        .par_iter()
        .enumerate()
        .with_min_len(GRAIN)
        .filter(|&(v, &l)| v as Vertex == l)
        .map(|(v, _)| v as Vertex)
        .collect();
    let forest_edges = cc.forest_edges;
    drop(cc.labels);
    t.first_cc = clock.elapsed();

    let clock = Instant::now();
    let rf = euler_tour::euler_tour_unchecked(n, &forest_edges, &roots);
    drop(forest_edges);
    drop(roots);
    t.rooting = clock.elapsed();

    let clock = Instant::now();
    let parent = &rf.parent;
    let tags = tagging::compute_tags(g, &rf, |u, v| {
        parent[u as usize] == v || parent[v as usize] == u
    });
    t.tagging = clock.elapsed();
    (rf, tags, act)
}

pub fn fast_bcc_detailed(g: &Graph, opts: &CcOptions) -> FastBccRun {
    debug_assert!(g.is_simple(), "fast_bcc expects a simple graph");
    let n = g.n();
    let mut timings = StepTimings::default();
    let (rf, tags, act) = root_and_tag(g, opts, &mut timings);

    let clock = Instant::now();
    let keep = |u, v| {
        matches!(
            classify_unchecked(&rf, &tags, u, v),
            EdgeClass::PlainTree | EdgeClass::Cross
        )
    };
    let skeleton = match act {
        Some(act) => connectivity::ldd_union_find(g, keep, &act, false),
        None => connectivity::connected_components_with(
            g,
            keep,
            &CcOptions {
                collect_forest: false,
                ..*opts
            },
        ),
    };
    let label = skeleton.labels;

    let head = par::atomic_vec_u32(n, NONE);
    (0..n as Vertex)
        .into_par_iter()
        .with_min_len(GRAIN)
        .for_each(|v| {
            let p = rf.parent[v as usize];
            if p == v || label[v as usize] == label[p as usize] || !is_fence(&rf, &tags, p, v) {
                return;
            }
            let slot = &head[label[v as usize] as usize];
            if let Err(prev) = slot.compare_exchange(NONE, p, Relaxed, Relaxed) {
                assert_eq!(prev, p, "label {} has two heads", label[v as usize]);
            }
        });
    let head = par::into_plain_u32(head);

    // Labels of size >= 2: some vertex other than the representative has it.
    let mut shared = vec![0u32; n];
    {
        let shared = par::atomic_u32(&mut shared);
        label
            .par_iter()
            .enumerate()
            .with_min_len(GRAIN)
            .for_each(|(v, &l)| {
                if l as usize != v {
                    shared[l as usize].store(1, Relaxed);
                }
            });
    }
    let bcc_count = (0..n)
        .into_par_iter()
        .with_min_len(GRAIN)
        .filter(|&v| label[v] as usize == v && (shared[v] == 1 || head[v] != NONE))
        .count();
    drop(shared);
    let is_tree_root = rf
        .parent
        .par_iter()
        .enumerate()
        .map(|(v, &p)| p as usize == v)
        .collect();
    timings.last_cc = clock.elapsed();

    FastBccRun {
        labeling: BccLabeling {
            label,
            head,
            bcc_count,
            is_tree_root,
        },
        timings,
        forest: rf,
        tags,
    }
}

fn check_labeling(g: &Graph, lab: &BccLabeling) -> Result<()> {
    let n = g.n();
    if lab.label.len() != n || lab.head.len() != n || lab.is_tree_root.len() != n {
        return Err(Error::InconsistentLabeling(format!(
            "arrays sized for {} vertices, graph has {n}",
            lab.label.len()
        )));
    }
    if let Some(v) = (0..n).find(|&v| lab.label[v] as usize >= n) {
        return Err(Error::InconsistentLabeling(format!(
            "vertex {v} has out-of-range label {}",
            lab.label[v]
        )));
    }
    for (l, &h) in lab.head.iter().enumerate() {
        if h == NONE {
            continue;
        }
        if h as usize >= n {
            return Err(Error::InconsistentLabeling(format!(
                "label {l} has out-of-range head {h}"
            )));
        }
        if lab.label[h as usize] as usize == l {
            return Err(Error::InconsistentLabeling(format!(
                "head {h} carries the label {l} it heads"
            )));
        }
    }
    Ok(())
}

/// The blocks as sorted vertex lists, in lexicographic order.
pub fn extract_bccs(g: &Graph, lab: &BccLabeling) -> Result<Vec<Vec<Vertex>>> {
    check_labeling(g, lab)?;
    let n = g.n();
    let mut offsets = vec![0usize; n + 1];
    for &l in &lab.label {
        offsets[l as usize] += 1;
    }
    for (o, &h) in offsets.iter_mut().zip(&lab.head) {
        if h != NONE {
            *o += 1;
        }
    }
    let sizes: Vec<usize> = offsets[..n].to_vec();
    par::exclusive_scan(&mut offsets);
    let mut members = vec![0 as Vertex; offsets[n]];
    let mut cursor = offsets.clone();
    for (v, &l) in lab.label.iter().enumerate() {
        members[cursor[l as usize]] = v as Vertex;
        cursor[l as usize] += 1;
    }
    for l in 0..n {
        if lab.head[l] != NONE {
            members[cursor[l]] = lab.head[l];
        }
    }
    let mut blocks: Vec<Vec<Vertex>> = (0..n)
        .filter(|&l| sizes[l] >= 2)
        .map(|l| {
            let mut b = members[offsets[l]..offsets[l + 1]].to_vec();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.par_sort_unstable();
    Ok(blocks)
}

/// Articulation points, ascending: every head that is not a tree root, and
/// every root heading at least two labels.
pub fn articulation_points(g: &Graph, lab: &BccLabeling) -> Result<Vec<Vertex>> {
    check_labeling(g, lab)?;
    let mut headed = vec![0u32; g.n()];
    for &h in lab.head.iter().filter(|&&h| h != NONE) {
        headed[h as usize] += 1;
    }
    Ok((0..g.n())
        .filter(|&v| {
            let k = headed[v];
            if lab.is_tree_root[v] {
                k >= 2
            } else {
                k >= 1
            }
        })
        .map(|v| v as Vertex)
        .collect())
}
