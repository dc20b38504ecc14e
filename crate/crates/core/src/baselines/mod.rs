//! Reference algorithms: sequential Hopcroft-Tarjan, an exhaustive cycle
//! oracle for tiny graphs and Tarjan-Vishkin with an explicit skeleton.

mod brute_force;
mod hopcroft_tarjan;
mod tarjan_vishkin;

pub use brute_force::{brute_force_bcc, BRUTE_FORCE_MAX_N};
pub use hopcroft_tarjan::hopcroft_tarjan;
pub use tarjan_vishkin::{tarjan_vishkin, TvResult};

use crate::graph::Vertex;

/// Blocks stored back to back, plus the articulation points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BccSets {
    /// Block `i` is `block_vertices[block_offsets[i]..block_offsets[i + 1]]`.
    pub block_offsets: Vec<usize>,
    pub block_vertices: Vec<Vertex>,
    /// Ascending.
    pub articulation: Vec<Vertex>,
}

impl BccSets {
    pub(crate) fn new() -> Self {
        Self {
            block_offsets: vec![0],
            ..Self::default()
        }
    }

    pub(crate) fn push_block(&mut self, vertices: impl IntoIterator<Item = Vertex>) {
        self.block_vertices.extend(vertices);
        self.block_offsets.push(self.block_vertices.len());
    }

    pub fn num_blocks(&self) -> usize {
        self.block_offsets.len().saturating_sub(1)
    }

    pub fn block(&self, i: usize) -> &[Vertex] {
        &self.block_vertices[self.block_offsets[i]..self.block_offsets[i + 1]]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[Vertex]> + '_ {
        (0..self.num_blocks()).map(|i| self.block(i))
    }

    /// Sorted blocks of sorted vertices, comparable with
    /// [`extract_bccs`](crate::extract_bccs).
    pub fn partition(&self) -> Vec<Vec<Vertex>> {
        canonical_partition(self.blocks().map(<[Vertex]>::to_vec))
    }
}

/// Sorts each block and then the list of blocks.
pub fn canonical_partition(blocks: impl IntoIterator<Item = Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let mut out: Vec<Vec<Vertex>> = blocks
        .into_iter()
        .map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect();
    out.sort_unstable();
    out
}
