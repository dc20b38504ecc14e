//! `fastbcc`: run, generate, verify and benchmark biconnected components.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 for usage,
//! I/O and algorithm errors.

mod bench;
mod report;
mod runner;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use fastbcc::baselines::hopcroft_tarjan;
use fastbcc::{extract_bccs, fast_bcc, gen, io, Graph, NONE};

use report::{append_rows, Row};
use runner::{Algo, Threads};

#[global_allocator]
static ALLOC: fastbcc::alloc::CountingAlloc = fastbcc::alloc::CountingAlloc;

#[derive(Parser)]
#[command(name = "fastbcc", version, about = "Biconnected components of large undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm several times and report median timings.
    Run {
        /// Graph file (.bin or .adj).
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Fastbcc)]
        algo: Algo,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        rounds: u32,
        /// Worker count, or `auto` for all hardware threads.
        #[arg(long, env = "FASTBCC_THREADS", default_value = "auto")]
        threads: Threads,
        /// Append a CSV row to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file; the extension picks the format.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true, default_value_t = 1)]
        seed: u64,
    },
    /// Compare fastbcc's blocks with Hopcroft-Tarjan's.
    Verify {
        graph: PathBuf,
        #[arg(long, env = "FASTBCC_THREADS", default_value = "auto")]
        threads: Threads,
        /// Test hook: damage the labeling before comparing.
        #[arg(long, hide = true)]
        corrupt_labeling: bool,
    },
    /// Run every (graph, algorithm) pair of a TOML manifest into a CSV file.
    Bench {
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the manifest's round count.
        #[arg(long)]
        rounds: Option<u32>,
        /// Overrides the manifest's thread setting.
        #[arg(long, env = "FASTBCC_THREADS")]
        threads: Option<Threads>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Path on `n` vertices.
    Chain { n: usize },
    /// `rows x cols` grid; each edge kept with probability `--keep`.
    Grid {
        rows: usize,
        cols: usize,
        /// Wrap around in both dimensions.
        #[arg(long)]
        circular: bool,
        #[arg(long, default_value_t = 1.0)]
        keep: f64,
    },
    /// Erdős-Rényi G(n, p).
    Random { n: usize, p: f64 },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Run {
            graph,
            algo,
            rounds,
            threads,
            out,
        } => {
            let g = load_graph(&graph)?;
            let report = runner::run(&g, algo, rounds, threads)?;
            report.print(&graph.display().to_string(), &g);
            if let Some(out) = out {
                append_rows(&out, &[Row::from_report(&graph_name(&graph), &g, &report)])?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { kind, out, seed } => {
            let Some(out) = out else {
                bail!("--out is required");
            };
            let g = generate(&kind, seed)?;
            io::save(&g, &out).with_context(|| format!("writing {}", out.display()))?;
            println!("n={} m={}", g.n(), g.m());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            threads,
            corrupt_labeling,
        } => {
            let g = load_graph(&graph)?;
            verify(&g, threads, corrupt_labeling)
        }
        Command::Bench {
            manifest,
            out,
            rounds,
            threads,
        } => {
            bench::run_manifest(&manifest, &out, rounds, threads)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn generate(kind: &GenKind, seed: u64) -> Result<Graph> {
    let probability = |name: &str, p: f64| {
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(anyhow::anyhow!("{name} must be in [0, 1], got {p}"))
        }
    };
    let too_big = |n: usize| n >= NONE as usize;
    Ok(match *kind {
        GenKind::Chain { n } => {
            if too_big(n) {
                bail!("chain length {n} exceeds 32-bit vertex ids");
            }
            gen::gen_chain(n)
        }
        GenKind::Grid {
            rows,
            cols,
            circular,
            keep,
        } => {
            let keep = probability("--keep", keep)?;
            match rows.checked_mul(cols) {
                Some(n) if !too_big(n) => gen::gen_grid(rows, cols, circular, keep, seed),
                _ => bail!("grid {rows}x{cols} exceeds 32-bit vertex ids"),
            }
        }
        GenKind::Random { n, p } => {
            let p = probability("p", p)?;
            if too_big(n) {
                bail!("{n} vertices exceed 32-bit vertex ids");
            }
            gen::gen_random(n, p, seed)
        }
    })
}

/// Loads a graph and repairs anything the algorithms cannot take as is.
pub(crate) fn load_graph(path: &Path) -> Result<Graph> {
    let g = io::load(path).with_context(|| format!("loading {}", path.display()))?;
    if g.is_simple() {
        Ok(g)
    } else {
        log::warn!(
            "{}: removing self-loops, duplicate edges and asymmetric entries",
            path.display()
        );
        Ok(g.simplified())
    }
}

pub(crate) fn graph_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn verify(g: &Graph, threads: Threads, corrupt: bool) -> Result<ExitCode> {
    let mut labeling = fastbcc::par::install(threads.count(), || fast_bcc(g).0);
    if corrupt {
        match labeling.head.iter().position(|&h| h != NONE) {
            Some(l) => labeling.head[l] = NONE,
            None => log::warn!("no component head to corrupt"),
        }
    }
    let ours = extract_bccs(g, &labeling)?;
    let theirs = hopcroft_tarjan(g).partition();
    if ours == theirs {
        println!("ok: {} blocks agree", ours.len());
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "mismatch: fastbcc has {} blocks, hopcroft-tarjan has {}",
        ours.len(),
        theirs.len()
    );
    let i = ours
        .iter()
        .zip(&theirs)
        .position(|(a, b)| a != b)
        .unwrap_or(ours.len().min(theirs.len()));
    let show = |b: Option<&Vec<u32>>| b.map_or_else(|| "none".to_string(), |b| format!("{b:?}"));
    println!("first difference at block {i}:");
    println!("  fastbcc:         {}", show(ours.get(i)));
    println!("  hopcroft-tarjan: {}", show(theirs.get(i)));
    Ok(ExitCode::from(1))
}
