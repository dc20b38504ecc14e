//! Acceptance criteria, one PASS/FAIL/SKIP line each. Runs as a plain
//! binary (no libtest harness) so timing checks never share the machine
//! with other tests from this target, and exits non-zero on any FAIL.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fastbcc::alloc::{self, CountingAlloc};
use fastbcc::baselines::{brute_force_bcc, hopcroft_tarjan, tarjan_vishkin, BRUTE_FORCE_MAX_N};
use fastbcc::bcc::fast_bcc_detailed;
use fastbcc::connectivity::{CcOptions, UnionFind};
use fastbcc::{
    articulation_points, classify_edge, extract_bccs, fast_bcc, gen, par, EdgeClass, Graph, Vertex, NONE,
};

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::{Fail, Pass, Skip};

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn max_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn oracle_equivalence() -> Outcome {
    let corpus = common::corpus(1000);
    let mut brute = 0;
    for (name, g) in &corpus {
        let ours = extract_bccs(g, &fast_bcc(g).0).unwrap();
        let ht = hopcroft_tarjan(g).partition();
        if ours != ht {
            return Fail(format!("{name}: fast_bcc {ours:?} vs hopcroft_tarjan {ht:?}"));
        }
        if g.n() <= BRUTE_FORCE_MAX_N {
            brute += 1;
            let bf = brute_force_bcc(g).unwrap().partition();
            if bf != ht {
                return Fail(format!("{name}: brute force {bf:?} vs {ht:?}"));
            }
        }
    }
    Pass(format!(
        "{} graphs agree with hopcroft_tarjan, {brute} of them also with brute force",
        corpus.len()
    ))
}

/// Checks every lemma-level property on one graph; `Err` names the first
/// violation.
fn lemmas_on(g: &Graph) -> Result<(), String> {
    let run = fast_bcc_detailed(g, &CcOptions::default());
    let (lab, rf, tags) = (&run.labeling, &run.forest, &run.tags);
    let blocks = extract_bccs(g, lab).map_err(|e| e.to_string())?;
    let n = g.n();

    // Blocks pairwise share at most one vertex.
    let mut shared = std::collections::HashMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for (x, &u) in b.iter().enumerate() {
            for &v in &b[x + 1..] {
                if let Some(j) = shared.insert((u, v), i) {
                    return Err(format!("blocks {j} and {i} share {u} and {v}"));
                }
            }
        }
    }

    // Every block is connected within the spanning forest.
    let mut member = vec![usize::MAX; n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            member[v as usize] = i;
        }
        let uf = UnionFind::new(n);
        let mut joined = 0;
        for &v in b {
            let p = rf.parent[v as usize];
            if p != v && member[p as usize] == i && uf.union(v, p) {
                joined += 1;
            }
        }
        if joined + 1 != b.len() {
            return Err(format!("block {b:?} is not connected in the spanning forest"));
        }
    }

    // Articulation points by deletion.
    let oracle = common::articulation_oracle(g);
    let ours = articulation_points(g, lab).map_err(|e| e.to_string())?;
    if ours != oracle {
        return Err(format!("articulation points {ours:?} vs deletion oracle {oracle:?}"));
    }

    // Head-label separation.
    for (l, &h) in lab.head.iter().enumerate() {
        if h != NONE && lab.label[h as usize] as usize == l {
            return Err(format!("head {h} carries its own label {l}"));
        }
    }

    // Edge classes against definitions over explicit subtrees.
    let anc = |a: Vertex, d: Vertex| common::is_ancestor_by_walk(&rf.parent, a, d);
    for (u, v) in g.undirected_edges() {
        let tree = rf.parent[u as usize] == v || rf.parent[v as usize] == u;
        let expected = if tree {
            let (p, c) = if rf.parent[v as usize] == u { (u, v) } else { (v, u) };
            // Fence iff no edge leaves T_c for outside T_p.
            let escapes = g
                .undirected_edges()
                .flat_map(|(x, y)| [(x, y), (y, x)])
                .any(|(x, y)| anc(c, x) && !anc(p, y));
            if escapes {
                EdgeClass::PlainTree
            } else {
                EdgeClass::FenceTree
            }
        } else if anc(u, v) || anc(v, u) {
            EdgeClass::Back
        } else {
            EdgeClass::Cross
        };
        let got = classify_edge(rf, tags, u, v, tree).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("edge ({u}, {v}) classified {got:?}, definition says {expected:?}"));
        }
    }

    // Both directions of the block/biconnectivity correspondence.
    let pairs = common::biconnected_pairs(g);
    let mut together = vec![vec![false; n]; n];
    for b in &blocks {
        for &u in b {
            for &v in b {
                together[u as usize][v as usize] = true;
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if pairs[u][v] != together[u][v] {
                return Err(format!(
                    "pair ({u}, {v}): oracle says biconnected={}, blocks say {}",
                    pairs[u][v], together[u][v]
                ));
            }
        }
    }
    Ok(())
}

fn lemma_suite() -> Outcome {
    for k in 3..=200 {
        let blocks = extract_bccs(&gen::gen_cycle(k), &fast_bcc(&gen::gen_cycle(k)).0).unwrap();
        if blocks != vec![(0..k as Vertex).collect::<Vec<_>>()] {
            return Fail(format!("cycle of {k} vertices is not one block"));
        }
    }
    // The edge-class check is quadratic in m, so the random part is smaller
    // than the equivalence corpus.
    let corpus = common::corpus(300);
    for (name, g) in &corpus {
        if let Err(e) = lemmas_on(g) {
            return Fail(format!("{name}: {e}"));
        }
    }
    Pass(format!("cycles 3..=200 plus {} corpus graphs", corpus.len()))
}

fn determinism() -> Outcome {
    // At least four workers, so a single-core host still runs the racy paths.
    let counts = [1, 2, max_threads().max(4)];
    let corpus = common::corpus(1000);
    for (name, g) in &corpus {
        let runs: Vec<_> = counts
            .iter()
            .map(|&t| {
                par::install(t, || {
                    let lab = fast_bcc(g).0;
                    let blocks = extract_bccs(g, &lab).unwrap();
                    (lab, blocks)
                })
            })
            .collect();
        if let Some(i) = (1..runs.len()).find(|&i| runs[i] != runs[0]) {
            return Fail(format!("{name}: {} threads differ from 1", counts[i]));
        }
    }
    Pass(format!("{} graphs identical on {counts:?} threads", corpus.len()))
}

fn space_efficiency() -> Outcome {
    let n = 1usize << 16;
    let mut fast = Vec::new();
    let mut rows = Vec::new();
    let mut tv_ratio_at_32 = 0.0;
    for degree in [2usize, 8, 32, 64] {
        let g = gen::gen_random(n, degree as f64 / (n - 1) as f64, degree as u64);
        let (_, bytes) = alloc::measure(|| fast_bcc(&g));
        let fast_words = alloc::words(bytes.expect("counting allocator installed"));
        let tv_words = tarjan_vishkin(&g).unwrap().memory_words;
        let ratio = tv_words as f64 / fast_words as f64;
        if degree == 32 {
            tv_ratio_at_32 = ratio;
        }
        rows.push(format!(
            "m/n={:.1}: fast {fast_words} words ({:.2}n), tv {tv_words} ({ratio:.1}x)",
            g.m() as f64 / n as f64,
            fast_words as f64 / n as f64
        ));
        fast.push(fast_words as f64);
    }
    let (lo, hi) = fast.iter().fold((f64::MAX, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    let spread = (hi - lo) / lo;
    verdict(
        spread < 0.25 && tv_ratio_at_32 >= 2.0,
        format!(
            "aux spread {:.1}% (< 25%), tv/fast at m/n=32 {tv_ratio_at_32:.1}x (>= 2x); {}",
            spread * 100.0,
            rows.join("; ")
        ),
    )
}

/// Median single-threaded times of fast_bcc and hopcroft_tarjan, run
/// alternately after one warm-up each.
fn single_thread_ratio(g: &Graph, rounds: usize) -> (Duration, Duration) {
    par::install(1, || {
        let expect = hopcroft_tarjan(g).num_blocks();
        assert_eq!(fast_bcc(g).0.bcc_count, expect);
        let (mut fast, mut ht) = (Vec::new(), Vec::new());
        for _ in 0..rounds {
            let t = Instant::now();
            std::hint::black_box(fast_bcc(g));
            fast.push(t.elapsed());
            let t = Instant::now();
            std::hint::black_box(hopcroft_tarjan(g));
            ht.push(t.elapsed());
        }
        (median(fast), median(ht))
    })
}

fn work_efficiency() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let n = 1usize << 18;
    for (name, g) in [
        ("chain(10^6)", gen::gen_chain(1_000_000)),
        ("G(2^18, 8/n)", gen::gen_random(n, 8.0 / n as f64, 1)),
    ] {
        let (fast, ht) = single_thread_ratio(&g, 9);
        let ratio = fast.as_secs_f64() / ht.as_secs_f64();
        ok &= ratio <= 8.0;
        parts.push(format!(
            "{name}: {:.1} ms vs {:.1} ms = {ratio:.2}x",
            fast.as_secs_f64() * 1e3,
            ht.as_secs_f64() * 1e3
        ));
    }
    verdict(ok, format!("{} (bound 8x)", parts.join("; ")))
}

fn diameter_insensitivity() -> Outcome {
    let threads = max_threads();
    if threads < 8 {
        return Skip(format!("needs >= 8 hardware threads, this machine has {threads}"));
    }
    let g = gen::gen_chain(10_000_000);
    let time = |t: usize| {
        par::install(t, || {
            median(
                (0..3)
                    .map(|_| {
                        let s = Instant::now();
                        std::hint::black_box(fast_bcc(&g));
                        s.elapsed()
                    })
                    .collect(),
            )
        })
    };
    let (one, all) = (time(1), time(threads));
    let speedup = one.as_secs_f64() / all.as_secs_f64();
    verdict(
        speedup >= 2.0,
        format!(
            "chain(10^7): {:.2} s on 1 thread, {:.2} s on {threads}, speedup {speedup:.2}x (>= 2x)",
            one.as_secs_f64(),
            all.as_secs_f64()
        ),
    )
}

fn cost_contract() -> Outcome {
    let mut per_unit = Vec::new();
    let mut parts = Vec::new();
    for (log_n, rounds) in [(16u32, 7usize), (18, 5), (20, 3)] {
        let n = 1usize << log_n;
        let g = gen::gen_random(n, 8.0 / n as f64, log_n as u64);
        std::hint::black_box(fast_bcc(&g));
        let t = median(
            (0..rounds)
                .map(|_| {
                    let s = Instant::now();
                    std::hint::black_box(fast_bcc(&g));
                    s.elapsed()
                })
                .collect(),
        );
        let ns = t.as_secs_f64() * 1e9 / (g.n() + g.m()) as f64;
        per_unit.push(ns);
        parts.push(format!("2^{log_n}: {:.1} ms, {ns:.1} ns per n+m", t.as_secs_f64() * 1e3));
    }
    let (lo, hi) = per_unit.iter().fold((f64::MAX, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    verdict(
        hi / lo <= 4.0,
        format!("{}; max/min {:.2} (<= 4)", parts.join("; "), hi / lo),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", oracle_equivalence),
        ("lemma suite", lemma_suite),
        ("determinism", determinism),
        ("space efficiency", space_efficiency),
        ("work efficiency", work_efficiency),
        ("diameter insensitivity", diameter_insensitivity),
        ("cost contract", cost_contract),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Fail(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failures += 1;
                ("FAIL", d)
            }
            Skip(d) => ("SKIP", d),
        };
        println!("{tag} {name}: {detail} [{secs:.1} s]");
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
