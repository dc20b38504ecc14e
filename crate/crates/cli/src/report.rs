//! CSV rows, one per (graph, algorithm). Durations are seconds with six
//! decimals; columns that do not apply stay empty.

use std::fs::OpenOptions;
use std::path::Path;
use std::time::Duration;

use anyhow::{Context, Result};
use fastbcc::Graph;
use serde::Serialize;

use crate::runner::{Algo, RunReport, Threads};

pub const COLUMNS: [&str; 14] = [
    "graph",
    "algo",
    "n",
    "m",
    "bcc_count",
    "total_seconds",
    "first_cc",
    "rooting",
    "tagging",
    "last_cc",
    "threads",
    "rounds",
    "peak_aux_words",
    "status",
];

#[derive(Debug, Serialize)]
pub struct Row {
    graph: String,
    algo: &'static str,
    n: Option<usize>,
    m: Option<usize>,
    bcc_count: Option<usize>,
    total_seconds: Option<String>,
    first_cc: Option<String>,
    rooting: Option<String>,
    tagging: Option<String>,
    last_cc: Option<String>,
    threads: Option<usize>,
    rounds: u32,
    peak_aux_words: Option<usize>,
    status: String,
}

fn secs(d: Duration) -> String {
    format!("{:.6}", d.as_secs_f64())
}

impl Row {
    pub fn from_report(graph: &str, g: &Graph, r: &RunReport) -> Self {
        let step = |f: fn(&fastbcc::StepTimings) -> Duration| r.steps.as_ref().map(|s| secs(f(s)));
        Row {
            graph: graph.to_string(),
            algo: r.algo.name(),
            n: Some(g.n()),
            m: Some(g.m()),
            bcc_count: Some(r.bcc_count),
            total_seconds: Some(secs(r.total)),
            first_cc: step(|s| s.first_cc),
            rooting: step(|s| s.rooting),
            tagging: step(|s| s.tagging),
            last_cc: step(|s| s.last_cc),
            threads: Some(r.threads),
            rounds: r.rounds,
            peak_aux_words: Some(r.peak_aux_words),
            status: "ok".to_string(),
        }
    }

    /// A row for a pair that could not be measured. `g` is known when only
    /// the algorithm failed.
    pub fn error(graph: &str, algo: Algo, g: Option<&Graph>, rounds: u32, threads: Threads, err: &anyhow::Error) -> Self {
        let message = format!("{err:#}").replace(['\n', '\r'], " ");
        Row {
            graph: graph.to_string(),
            algo: algo.name(),
            n: g.map(Graph::n),
            m: g.map(Graph::m),
            bcc_count: None,
            total_seconds: None,
            first_cc: None,
            rooting: None,
            tagging: None,
            last_cc: None,
            threads: match threads {
                Threads::Fixed(t) => Some(t),
                Threads::Auto => None,
            },
            rounds,
            peak_aux_words: None,
            status: format!("error: {message}"),
        }
    }
}

/// Appends rows, writing the header first if the file is new or empty.
pub fn append_rows(path: &Path, rows: &[Row]) -> Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let fresh = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        w.write_record(COLUMNS)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
