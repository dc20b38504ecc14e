//! Synthetic graph generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with the caller's
//! 64-bit seed; each grid row or random-graph row draws from its own stream
//! (`set_stream(row)`), so outputs do not depend on the worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{symmetrize, EdgeList, Graph, Vertex};
use crate::par::prelude::*;

fn row_rng(seed: u64, row: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(row);
    rng
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn gen_chain(n: usize) -> Graph {
    assert!(n >= 1, "chain needs at least one vertex");
    let pairs: EdgeList = (0..n as Vertex - 1)
        .into_par_iter()
        .map(|i| (i, i + 1))
        .collect();
    symmetrize(&pairs, n).expect("ids in range")
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn gen_cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least three vertices");
    let pairs: EdgeList = (0..n as Vertex)
        .map(|i| (i, (i + 1) % n as Vertex))
        .collect();
    symmetrize(&pairs, n).expect("ids in range")
}

/// Star with center 0 and leaves `1..n`.
pub fn gen_star(n: usize) -> Graph {
    assert!(n >= 1);
    let pairs: EdgeList = (1..n as Vertex).map(|i| (0, i)).collect();
    symmetrize(&pairs, n).expect("ids in range")
}

/// Four-neighbor `rows × cols` grid. With `circular`, rows and columns wrap
/// around (only when that dimension exceeds 2, so no duplicate edges arise).
/// Each candidate edge is kept independently with probability `keep_prob`.
pub fn gen_grid(rows: usize, cols: usize, circular: bool, keep_prob: f64, seed: u64) -> Graph {
    assert!(rows >= 1 && cols >= 1, "grid dimensions must be positive");
    assert!((0.0..=1.0).contains(&keep_prob), "keep_prob must be in [0, 1]");
    let n = rows * cols;
    let id = |r: usize, c: usize| (r * cols + c) as Vertex;
    let pairs: EdgeList = (0..rows)
        .into_par_iter()
        .flat_map_iter(|r| {
            let mut rng = row_rng(seed, r as u64);
            let mut out = Vec::with_capacity(2 * cols);
            for c in 0..cols {
                let right = if c + 1 < cols {
                    Some(id(r, c + 1))
                } else if circular && cols > 2 {
                    Some(id(r, 0))
                } else {
                    None
                };
                let down = if r + 1 < rows {
                    Some(id(r + 1, c))
                } else if circular && rows > 2 {
                    Some(id(0, c))
                } else {
                    None
                };
                // Two draws per cell regardless of topology keep streams aligned.
                let keep_right = rng.gen::<f64>() < keep_prob;
                let keep_down = rng.gen::<f64>() < keep_prob;
                if let (Some(v), true) = (right, keep_right) {
                    out.push((id(r, c), v));
                }
                if let (Some(v), true) = (down, keep_down) {
                    out.push((id(r, c), v));
                }
            }
            out
        })
        .collect();
    symmetrize(&pairs, n).expect("ids in range")
}

/// Erdős–Rényi `G(n, p)`, sampled row by row with geometric skips.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p must be in [0, 1]");
    if n < 2 || p == 0.0 {
        return Graph::empty(n);
    }
    let log_q = (1.0 - p).ln();
    let pairs: EdgeList = (0..n as Vertex)
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut rng = row_rng(seed, u as u64);
            let mut out = Vec::new();
            let mut v = u as u64;
            let n = n as u64;
            loop {
                let skip = if p >= 1.0 {
                    0
                } else {
                    let r: f64 = 1.0 - rng.gen::<f64>();
                    (r.ln() / log_q).floor() as u64
                };
                v = v.saturating_add(1).saturating_add(skip);
                if v >= n {
                    break;
                }
                out.push((u, v as Vertex));
            }
            out
        })
        .collect();
    symmetrize(&pairs, n).expect("ids in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let g = gen_grid(2, 2, false, 1.0, 1);
        assert_eq!((g.n(), g.m()), (4, 8));
        assert_eq!(gen_grid(5, 7, true, 0.0, 3).m(), 0);
        assert_eq!(gen_grid(1, 1, true, 1.0, 3).m(), 0);
    }

    #[test]
    fn circular_grid_is_four_regular() {
        let g = gen_grid(100, 100, true, 1.0, 9);
        assert!((0..g.n() as Vertex).all(|v| g.degree(v) == 4));
        g.validate().unwrap();
    }

    #[test]
    fn sampled_grid_keeps_about_the_right_fraction() {
        let g = gen_grid(100, 100, true, 0.6, 5);
        let frac = g.m() as f64 / (4.0 * 10_000.0);
        assert!((frac - 0.6).abs() < 0.03, "{frac}");
        assert_eq!(g, gen_grid(100, 100, true, 0.6, 5));
    }

    #[test]
    fn chains() {
        assert_eq!(gen_chain(1).m(), 0);
        let g = gen_chain(3);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.m(), 4);
    }

    #[test]
    fn random_extremes_and_determinism() {
        assert_eq!(gen_random(50, 0.0, 1).m(), 0);
        assert_eq!(gen_random(30, 1.0, 1).m(), 30 * 29);
        let a = gen_random(200, 0.05, 11);
        assert_eq!(a, gen_random(200, 0.05, 11));
        assert_ne!(a, gen_random(200, 0.05, 12));
        a.validate().unwrap();
    }
}
