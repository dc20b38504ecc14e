//! Parallel biconnected components.
//!
//! The main entry point is [`fast_bcc`], which computes the blocks of an
//! undirected graph in four bulk-parallel steps:
//!
//! 1. **First-CC**: connected components with a spanning forest as a
//!    by-product ([`connectivity`]).
//! 2. **Rooting**: the Euler tour technique roots every spanning tree and
//!    assigns `first`/`last` tour positions ([`euler_tour`]).
//! 3. **Tagging**: `w1`/`w2` per vertex and `low`/`high` per subtree through
//!    range-minimum queries ([`tagging`]).
//! 4. **Last-CC**: connectivity on the implicit skeleton of plain tree edges
//!    and cross edges, then one component head per label ([`bcc`]).
//!
//! The output is a [`BccLabeling`], an `O(n)` representation in which all
//! vertices sharing a label, plus the label's head, form one block.
//!
//! Sequential baselines (Hopcroft-Tarjan, a brute-force cycle oracle and an
//! explicit-skeleton Tarjan-Vishkin) live in [`baselines`].
//!
//! ```
//! use fastbcc::{extract_bccs, fast_bcc, gen};
//!
//! let g = gen::gen_chain(4);
//! let (labeling, _timings) = fast_bcc(&g);
//! assert_eq!(labeling.bcc_count, 3);
//! let blocks = extract_bccs(&g, &labeling).unwrap();
//! assert_eq!(blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
//! ```
//!
//! Every bulk phase runs on rayon when the default `parallel` feature is
//! enabled and falls back to plain iterators otherwise.

pub mod alloc;
pub mod baselines;
pub mod bcc;
pub mod connectivity;
mod error;
pub mod euler_tour;
pub mod gen;
pub mod graph;
pub mod io;
pub mod par;
pub mod tagging;

pub use bcc::{
    articulation_points, classify_edge, extract_bccs, fast_bcc, in_skeleton, BccLabeling,
    EdgeClass, StepTimings,
};
pub use error::{Error, Result};
pub use graph::{EdgeList, Graph, Vertex};

/// Sentinel for "no vertex" / "no position" in `u32` arrays.
pub const NONE: u32 = u32::MAX;
