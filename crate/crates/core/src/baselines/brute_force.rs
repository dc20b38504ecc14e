use super::{canonical_partition, BccSets};
use crate::connectivity::UnionFind;
use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Blocks from the cycle relation: two edges share a block iff they lie on a
/// common simple cycle. Every simple cycle is enumerated once, starting at
/// its smallest vertex with the smaller of its two neighbors second, and
/// unions its edges. Articulation points are the vertices whose removal
/// increases the number of components.
pub fn brute_force_bcc(g: &Graph) -> Result<BccSets> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let edges: Vec<(Vertex, Vertex)> = g.undirected_edges().collect();
    let edge_id = |u: Vertex, v: Vertex| {
        let k = (u.min(v), u.max(v));
        edges.binary_search(&k).expect("edge exists")
    };
    let uf = UnionFind::new(edges.len());
    // Classes can never drop below the number of non-trivial components, so
    // enumeration stops once that floor is reached.
    let floor = components_without(g, None) - (0..n as Vertex).filter(|&v| g.degree(v) == 0).count();
    let mut classes_left = edges.len();

    let mut path: Vec<Vertex> = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    for s in 0..n as Vertex {
        if classes_left <= floor {
            break;
        }
        path.clear();
        path.push(s);
        on_path[s as usize] = true;
        extend_cycles(g, s, &mut path, &mut on_path, &mut |cycle| {
            let k = cycle.len();
            let e0 = edge_id(cycle[0], cycle[1]) as u32;
            for i in 1..k {
                let e = edge_id(cycle[i], cycle[(i + 1) % k]) as u32;
                if uf.union(e0, e) {
                    classes_left -= 1;
                }
            }
            classes_left > floor
        });
        on_path[s as usize] = false;
    }

    let mut classes: Vec<Vec<Vertex>> = vec![Vec::new(); edges.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let c = &mut classes[uf.find(i as u32) as usize];
        c.extend([u, v]);
    }
    let blocks = canonical_partition(classes.into_iter().filter(|c| !c.is_empty()).map(|mut c| {
        c.sort_unstable();
        c.dedup();
        c
    }));

    let base = components_without(g, None);
    let articulation = (0..n as Vertex)
        .filter(|&v| components_without(g, Some(v)) > base)
        .collect();

    let mut out = BccSets::new();
    for b in blocks {
        out.push_block(b);
    }
    out.articulation = articulation;
    Ok(out)
}

fn extend_cycles(
    g: &Graph,
    s: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    found: &mut impl FnMut(&[Vertex]) -> bool,
) -> bool {
    let u = *path.last().unwrap();
    for &w in g.neighbors(u) {
        let go_on = if w == s && path.len() >= 3 && path[1] < u {
            found(path)
        } else if w > s && !on_path[w as usize] {
            path.push(w);
            on_path[w as usize] = true;
            let r = extend_cycles(g, s, path, on_path, found);
            on_path[w as usize] = false;
            path.pop();
            r
        } else {
            true
        };
        if !go_on {
            return false;
        }
    }
    true
}

/// Number of components after deleting `removed` (if any).
fn components_without(g: &Graph, removed: Option<Vertex>) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n as Vertex {
        if seen[s as usize] || Some(s) == removed {
            continue;
        }
        count += 1;
        seen[s as usize] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w as usize] && Some(w) != removed {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}
