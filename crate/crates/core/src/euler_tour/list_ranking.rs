use std::sync::atomic::Ordering::Relaxed;

use crate::par;
use crate::par::prelude::*;
use crate::{Error, Result, NONE};

#[inline]
fn mix(i: u32) -> u64 {
    let mut x = (i as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Distance of every node from `head` along `next` links.
///
/// `next[i]` is the successor of node `i`, or [`NONE`] at the tail. A list
/// that closes back onto `head` is treated as a cycle cut just before
/// `head`. All `next.len()` nodes must lie on the list.
///
/// A lone worker simply chases the list. Otherwise about `sqrt(L)` nodes
/// (always including `head`) are sampled by hashing. Each sample walks
/// sequentially to the next sample in parallel, a prefix sum over the sample
/// chain gives each segment its offset, and a second parallel walk scatters
/// the ranks.
pub fn list_ranking(next: &[u32], head: u32) -> Result<Vec<u32>> {
    let len = next.len();
    if len == 0 {
        return Ok(Vec::new());
    }
    if len >= NONE as usize {
        return Err(Error::MalformedList("list too long for 32-bit ranks".into()));
    }
    if head as usize >= len {
        return Err(Error::MalformedList(format!("head {head} out of range")));
    }
    if par::current_num_threads() == 1 {
        chase(next, head)
    } else {
        sampled(next, head)
    }
}

fn chase(next: &[u32], head: u32) -> Result<Vec<u32>> {
    let len = next.len();
    let mut ranks = vec![NONE; len];
    let mut cur = head;
    let mut r = 0u32;
    loop {
        ranks[cur as usize] = r;
        r += 1;
        cur = next[cur as usize];
        if cur == NONE || cur == head {
            break;
        }
        if cur as usize >= len {
            return Err(Error::MalformedList(
                "walk exceeded list length or left the node range".into(),
            ));
        }
        if ranks[cur as usize] != NONE {
            return Err(Error::MalformedList("cycle does not pass through head".into()));
        }
    }
    if r as usize != len {
        return Err(Error::MalformedList(format!(
            "list from head covers {r} of {len} nodes"
        )));
    }
    Ok(ranks)
}

fn sampled(next: &[u32], head: u32) -> Result<Vec<u32>> {
    let len = next.len();
    let stride = ((len as f64).sqrt().ceil() as u64).max(1);
    let is_sample = |i: u32| i == head || mix(i).is_multiple_of(stride);
    let samples: Vec<u32> = (0..len as u32)
        .into_par_iter()
        .with_min_len(par::GRAIN)
        .filter(|&i| is_sample(i))
        .collect();
    let sample_index = |node: u32| samples.binary_search(&node).ok();

    // Segment length and the sample that follows each segment.
    let segments: Vec<(u32, u32)> = samples
        .par_iter()
        .map(|&s| {
            let mut count = 1u32;
            let mut cur = next[s as usize];
            while cur != NONE && !is_sample(cur) {
                if cur as usize >= len || count as usize > len {
                    return (u32::MAX, NONE);
                }
                count += 1;
                cur = next[cur as usize];
            }
            if cur != NONE && cur as usize >= len {
                return (u32::MAX, NONE);
            }
            (count, cur)
        })
        .collect();

    let mut offset = vec![NONE; samples.len()];
    let mut at = sample_index(head).expect("head is always sampled");
    let mut total = 0usize;
    loop {
        if offset[at] != NONE {
            return Err(Error::MalformedList("cycle does not pass through head".into()));
        }
        let (count, succ) = segments[at];
        if count == u32::MAX {
            return Err(Error::MalformedList(
                "walk exceeded list length or left the node range".into(),
            ));
        }
        offset[at] = total as u32;
        total += count as usize;
        if succ == NONE || succ == head {
            break;
        }
        at = sample_index(succ).expect("segment ends at a sample");
    }
    if total != len {
        return Err(Error::MalformedList(format!(
            "list from head covers {total} of {len} nodes"
        )));
    }

    let mut ranks = vec![0u32; len];
    {
        let out = par::atomic_u32(&mut ranks);
        samples
            .par_iter()
            .zip(offset.par_iter())
            .filter(|(_, &o)| o != NONE)
            .for_each(|(&s, &o)| {
                let mut r = o;
                let mut cur = s;
                loop {
                    out[cur as usize].store(r, Relaxed);
                    r += 1;
                    cur = next[cur as usize];
                    if cur == NONE || is_sample(cur) {
                        break;
                    }
                }
            });
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Both strategies, whatever the ambient pool size.
    fn both(next: &[u32], head: u32) -> Result<Vec<u32>> {
        let one = par::install(1, || list_ranking(next, head));
        let many = par::install(3, || list_ranking(next, head));
        assert_eq!(one.is_ok(), many.is_ok());
        if let (Ok(a), Ok(b)) = (&one, &many) {
            assert_eq!(a, b);
        }
        one
    }

    fn reference(next: &[u32], head: u32) -> Vec<u32> {
        let mut ranks = vec![NONE; next.len()];
        let mut cur = head;
        let mut r = 0;
        while cur != NONE && ranks[cur as usize] == NONE {
            ranks[cur as usize] = r;
            r += 1;
            cur = next[cur as usize];
        }
        ranks
    }

    #[test]
    fn identity_chain() {
        assert_eq!(both(&[1, 2, NONE], 0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn single_node() {
        assert_eq!(both(&[NONE], 0).unwrap(), vec![0]);
        assert_eq!(both(&[0], 0).unwrap(), vec![0]);
    }

    #[test]
    fn cycle_is_cut_before_head() {
        // 2 -> 0 -> 1 -> 2
        assert_eq!(both(&[1, 2, 0], 2).unwrap(), vec![1, 2, 0]);
    }

    #[test]
    fn random_permutation_list() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for len in [2usize, 10, 1000, 10_000] {
            let mut perm: Vec<u32> = (0..len as u32).collect();
            perm.shuffle(&mut rng);
            let mut next = vec![NONE; len];
            for w in perm.windows(2) {
                next[w[0] as usize] = w[1];
            }
            let got = both(&next, perm[0]).unwrap();
            assert_eq!(got, reference(&next, perm[0]));
        }
    }

    #[test]
    fn malformed_lists() {
        // node 2 unreachable
        assert!(both(&[1, NONE, NONE], 0).is_err());
        // cycle not through head: 0 -> 1 -> 2 -> 1
        assert!(both(&[1, 2, 1], 0).is_err());
        assert!(both(&[NONE], 3).is_err());
        assert!(both(&[7, NONE], 0).is_err());
    }
}
