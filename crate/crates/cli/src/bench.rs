//! Benchmark manifests.
//!
//! ```toml
//! rounds = 10                          # optional, default 10
//! threads = "auto"                     # optional, or a positive integer
//! algos = ["fastbcc", "hopcroft-tarjan"]
//!
//! [[graph]]
//! path = "chain.bin"                   # relative to the manifest
//! name = "chain"                       # optional, defaults to the file stem
//! algos = ["fastbcc"]                  # optional, overrides the top level
//! ```

use std::path::Path;

use anyhow::{ensure, Context, Result};
use serde::Deserialize;

use crate::report::{append_rows, Row};
use crate::runner::{self, Algo, Threads};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    #[serde(default = "default_rounds")]
    rounds: u32,
    #[serde(default = "default_threads")]
    threads: Threads,
    #[serde(default = "default_algos")]
    algos: Vec<Algo>,
    #[serde(default)]
    graph: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    path: String,
    name: Option<String>,
    algos: Option<Vec<Algo>>,
}

fn default_rounds() -> u32 {
    10
}

fn default_threads() -> Threads {
    Threads::Auto
}

fn default_algos() -> Vec<Algo> {
    vec![Algo::Fastbcc, Algo::HopcroftTarjan]
}

/// Measures every pair and writes the rows to `out`, replacing it. A graph
/// that fails to load or an algorithm that fails yields an error row; the
/// remaining pairs still run.
pub fn run_manifest(manifest: &Path, out: &Path, rounds: Option<u32>, threads: Option<Threads>) -> Result<()> {
    let text = std::fs::read_to_string(manifest)
        .with_context(|| format!("reading manifest {}", manifest.display()))?;
    let m: Manifest =
        toml::from_str(&text).with_context(|| format!("parsing manifest {}", manifest.display()))?;
    let rounds = rounds.unwrap_or(m.rounds);
    let threads = threads.unwrap_or(m.threads);
    ensure!(rounds >= 1, "rounds must be at least 1");
    let dir = manifest.parent().unwrap_or(Path::new("."));

    if out.exists() {
        std::fs::remove_file(out).with_context(|| format!("replacing {}", out.display()))?;
    }
    // Header first, so an empty manifest still yields a valid CSV.
    append_rows(out, &[])?;
    for entry in &m.graph {
        let path = dir.join(&entry.path);
        let name = entry.name.clone().unwrap_or_else(|| crate::graph_name(&path));
        let algos = entry.algos.as_deref().unwrap_or(&m.algos);
        let g = crate::load_graph(&path);
        let mut rows = Vec::with_capacity(algos.len());
        for &algo in algos {
            let row = match &g {
                Err(e) => Row::error(&name, algo, None, rounds, threads, e),
                Ok(g) => match runner::run(g, algo, rounds, threads) {
                    Ok(r) => {
                        log::info!("{name} {}: {:.6} s", algo.name(), r.total.as_secs_f64());
                        Row::from_report(&name, g, &r)
                    }
                    Err(e) => Row::error(&name, algo, Some(g), rounds, threads, &e),
                },
            };
            rows.push(row);
        }
        if let Err(e) = &g {
            log::warn!("{name}: {e:#}");
        }
        append_rows(out, &rows)?;
    }
    Ok(())
}
