use super::BccSets;
use crate::graph::{Graph, Vertex};
use crate::NONE;

/// Sequential Hopcroft-Tarjan with an explicit edge stack.
///
/// Every tree or back edge is pushed when first traversed. When the DFS
/// returns from `u` to its parent `p` with `low[u] >= first[p]`, the edges
/// above `(p, u)` on the stack, inclusive, form one block. Neighbors are
/// visited in list order and each component restarts from its smallest
/// unvisited vertex.
pub fn hopcroft_tarjan(g: &Graph) -> BccSets {
    let n = g.n();
    let mut first = vec![NONE; n];
    let mut low = vec![0u32; n];
    let mut parent = vec![NONE; n];
    // Next neighbor index to scan per vertex on the DFS path.
    let mut cursor = vec![0usize; n];
    let mut is_art = vec![false; n];
    let mut stamp = vec![NONE; n];
    let mut frames: Vec<Vertex> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut out = BccSets::new();
    let mut clock = 0u32;

    for s in 0..n as Vertex {
        if first[s as usize] != NONE || g.degree(s) == 0 {
            continue;
        }
        first[s as usize] = clock;
        low[s as usize] = clock;
        clock += 1;
        let mut root_children = 0;
        frames.push(s);
        while let Some(&u) = frames.last() {
            let ui = u as usize;
            let nb = g.neighbors(u);
            if cursor[ui] < nb.len() {
                let w = nb[cursor[ui]];
                cursor[ui] += 1;
                let wi = w as usize;
                if first[wi] == NONE {
                    parent[wi] = u;
                    first[wi] = clock;
                    low[wi] = clock;
                    clock += 1;
                    edges.push((u, w));
                    frames.push(w);
                } else if w != parent[ui] && first[wi] < first[ui] {
                    edges.push((u, w));
                    low[ui] = low[ui].min(first[wi]);
                }
                continue;
            }
            frames.pop();
            let p = parent[ui];
            if p == NONE {
                continue;
            }
            let pi = p as usize;
            low[pi] = low[pi].min(low[ui]);
            if low[ui] >= first[pi] {
                if p == s {
                    root_children += 1;
                } else {
                    is_art[pi] = true;
                }
                let id = out.num_blocks() as u32;
                let start = out.block_vertices.len();
                loop {
                    let (a, b) = edges.pop().expect("block edge on stack");
                    for x in [a, b] {
                        if stamp[x as usize] != id {
                            stamp[x as usize] = id;
                            out.block_vertices.push(x);
                        }
                    }
                    if (a, b) == (p, u) {
                        break;
                    }
                }
                debug_assert!(out.block_vertices.len() - start >= 2);
                out.block_offsets.push(out.block_vertices.len());
            }
        }
        if root_children >= 2 {
            is_art[s as usize] = true;
        }
    }
    out.articulation = (0..n as Vertex).filter(|&v| is_art[v as usize]).collect();
    out
}
