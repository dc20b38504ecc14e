use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::ValueEnum;
use fastbcc::baselines::{hopcroft_tarjan, tarjan_vishkin};
use fastbcc::{alloc, fast_bcc, par, Graph, StepTimings};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Fastbcc,
    HopcroftTarjan,
    TarjanVishkin,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Fastbcc => "fastbcc",
            Algo::HopcroftTarjan => "hopcroft-tarjan",
            Algo::TarjanVishkin => "tarjan-vishkin",
        }
    }
}

/// Requested worker count; `Auto` means all hardware threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

impl Threads {
    /// Pool size in the `par::install` convention, where 0 means all.
    pub fn count(self) -> usize {
        match self {
            Threads::Auto => 0,
            Threads::Fixed(t) => t,
        }
    }
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(t) if t > 0 => Ok(Threads::Fixed(t)),
            _ => Err(format!("expected `auto` or a positive integer, got `{s}`")),
        }
    }
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(t) => Threads::from_str(&t.to_string()),
            Raw::Text(s) => Threads::from_str(&s),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Median measurements over several rounds of one algorithm.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub algo: Algo,
    pub bcc_count: usize,
    pub total: Duration,
    /// Four-step breakdown; fastbcc only.
    pub steps: Option<StepTimings>,
    pub rounds: u32,
    pub threads: usize,
    /// Largest peak of bytes held on top of the loaded graph, in words.
    pub peak_aux_words: usize,
}

struct Sample {
    bcc_count: usize,
    total: Duration,
    steps: Option<StepTimings>,
    aux_bytes: usize,
}

fn run_once(g: &Graph, algo: Algo) -> Result<Sample> {
    let start = Instant::now();
    let (outcome, aux) = alloc::measure(|| -> Result<_> {
        Ok(match algo {
            Algo::Fastbcc => {
                let (lab, steps) = fast_bcc(g);
                (lab.bcc_count, Some(steps))
            }
            Algo::HopcroftTarjan => (hopcroft_tarjan(g).num_blocks(), None),
            Algo::TarjanVishkin => (tarjan_vishkin(g)?.block_count, None),
        })
    });
    let total = start.elapsed();
    let (bcc_count, steps) = outcome?;
    Ok(Sample {
        bcc_count,
        total,
        steps,
        aux_bytes: aux.unwrap_or(0),
    })
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2
    }
}

pub fn run(g: &Graph, algo: Algo, rounds: u32, threads: Threads) -> Result<RunReport> {
    assert!(rounds >= 1, "at least one round");
    par::install(threads.count(), || {
        let samples = (0..rounds)
            .map(|_| run_once(g, algo))
            .collect::<Result<Vec<_>>>()?;
        let counts_agree = samples.windows(2).all(|w| w[0].bcc_count == w[1].bcc_count);
        anyhow::ensure!(counts_agree, "block count changed between rounds");
        let steps = samples[0].steps.map(|_| {
            let col = |f: fn(&StepTimings) -> Duration| {
                median(samples.iter().map(|s| f(s.steps.as_ref().unwrap())).collect())
            };
            StepTimings {
                first_cc: col(|t| t.first_cc),
                rooting: col(|t| t.rooting),
                tagging: col(|t| t.tagging),
                last_cc: col(|t| t.last_cc),
            }
        });
        Ok(RunReport {
            algo,
            bcc_count: samples[0].bcc_count,
            total: median(samples.iter().map(|s| s.total).collect()),
            steps,
            rounds,
            threads: par::current_num_threads(),
            peak_aux_words: alloc::words(samples.iter().map(|s| s.aux_bytes).max().unwrap_or(0)),
        })
    })
}

impl RunReport {
    pub fn print(&self, graph: &str, g: &Graph) {
        println!("graph      {graph} (n={}, m={})", g.n(), g.m());
        println!(
            "algorithm  {} on {} thread(s), median of {} round(s)",
            self.algo.name(),
            self.threads,
            self.rounds
        );
        println!("bcc_count  {}", self.bcc_count);
        println!("total      {:.6} s", self.total.as_secs_f64());
        if let Some(s) = &self.steps {
            for (name, d) in [
                ("first_cc", s.first_cc),
                ("rooting", s.rooting),
                ("tagging", s.tagging),
                ("last_cc", s.last_cc),
            ] {
                println!("  {name:<9}{:.6} s", d.as_secs_f64());
            }
        }
        println!("peak_aux   {} words", self.peak_aux_words);
    }
}
