//! Average-case cost estimation: Monte Carlo and exhaustive averages of a
//! task's step count over words of one length, broken down by the stage that
//! decided each input, plus CSV/JSON emission of the results.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::stats::{nearest_rank, sample_std};
use crate::whitehead::{
    fast_check, primitivity_composite, primitivity_whitehead, FastCheckOutcome, MAX_WHITEHEAD_RANK,
};
use crate::wordproblem::{wp_composite, Group};
use crate::words::{enumerate_words, sample_word};
use crate::{Error, Result, SamplingModel, Seed, Word};

/// Default cap on the number of words visited by [`exhaustive_average`].
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 1 << 21;

pub const CSV_HEADER: [&str; 13] = [
    "task",
    "model",
    "n",
    "trials",
    "seed",
    "mean_cost",
    "std_cost",
    "p50",
    "p95",
    "max_cost",
    "stratum",
    "stratum_freq",
    "stratum_mean",
];

/// Cost of one run and the label of the stage that produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub cost: u64,
    pub stratum: &'static str,
}

/// Anything that can be measured by the harness.
pub trait CostTask: Sync {
    fn name(&self) -> String;

    /// Rejects `(rank, n, model)` combinations the task cannot run on.
    fn validate(&self, rank: u32, n: usize, model: SamplingModel) -> Result<()>;

    fn run(&self, w: &Word) -> Result<Outcome>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    PrimitivityComposite,
    PrimitivityWhiteheadOnly,
    FastCheckOnly,
    WpFree,
    WpAbelian,
    WpHeisenberg,
}

impl Task {
    pub const ALL: [Task; 6] = [
        Task::PrimitivityComposite,
        Task::PrimitivityWhiteheadOnly,
        Task::FastCheckOnly,
        Task::WpFree,
        Task::WpAbelian,
        Task::WpHeisenberg,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Task::PrimitivityComposite => "primitivity_composite",
            Task::PrimitivityWhiteheadOnly => "primitivity_whitehead_only",
            Task::FastCheckOnly => "fast_check_only",
            Task::WpFree => "wp_free",
            Task::WpAbelian => "wp_abelian",
            Task::WpHeisenberg => "wp_heisenberg",
        }
    }

    pub fn for_group(group: Group) -> Task {
        match group {
            Group::Free => Task::WpFree,
            Group::FreeAbelian(_) => Task::WpAbelian,
            Group::Heisenberg => Task::WpHeisenberg,
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Task> {
        Task::ALL.into_iter().find(|t| t.id() == s).ok_or_else(|| {
            let known: Vec<&str> = Task::ALL.iter().map(|t| t.id()).collect();
            Error::invalid(format!(
                "unknown task {s:?} (expected one of {})",
                known.join(", ")
            ))
        })
    }
}

impl CostTask for Task {
    fn name(&self) -> String {
        self.id().to_string()
    }

    fn validate(&self, rank: u32, n: usize, model: SamplingModel) -> Result<()> {
        if rank == 0 {
            return Err(Error::invalid("rank must be at least 1"));
        }
        match self {
            Task::PrimitivityComposite | Task::PrimitivityWhiteheadOnly
                if rank > MAX_WHITEHEAD_RANK =>
            {
                Err(Error::budget(
                    "Whitehead automorphism enumeration (rank)",
                    rank,
                    MAX_WHITEHEAD_RANK,
                ))
            }
            Task::FastCheckOnly if model != SamplingModel::CyclicallyReduced || n < 3 => {
                Err(Error::invalid(
                    "fast_check_only needs cyclically reduced words of length at least 3",
                ))
            }
            Task::WpHeisenberg if rank != 2 => Err(Error::invalid("wp_heisenberg needs rank 2")),
            _ => Ok(()),
        }
    }

    fn run(&self, w: &Word) -> Result<Outcome> {
        match self {
            Task::PrimitivityComposite => {
                let v = primitivity_composite(w)?;
                Ok(Outcome {
                    cost: v.cost.total(),
                    stratum: v.decided_by.label(),
                })
            }
            Task::PrimitivityWhiteheadOnly => {
                let v = primitivity_whitehead(w)?;
                Ok(Outcome {
                    cost: v.cost.total(),
                    stratum: v.decided_by.label(),
                })
            }
            Task::FastCheckOnly => {
                let t = fast_check(w)?;
                Ok(Outcome {
                    cost: t.cost.total(),
                    stratum: match t.outcome {
                        FastCheckOutcome::NotPrimitive { .. } => "FastCheckT",
                        FastCheckOutcome::Inconclusive => "Inconclusive",
                    },
                })
            }
            Task::WpFree | Task::WpAbelian | Task::WpHeisenberg => {
                let group = match self {
                    Task::WpFree => Group::Free,
                    Task::WpAbelian => Group::FreeAbelian(w.rank()),
                    _ => Group::Heisenberg,
                };
                let v = wp_composite(group, w)?;
                Ok(Outcome {
                    cost: v.cost.total(),
                    stratum: v.decided_by.label(),
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumRow {
    pub label: String,
    pub count: u64,
    /// Fraction of trials decided by this stratum.
    pub freq: f64,
    pub mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub task: String,
    pub model: SamplingModel,
    pub rank: u32,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean_cost: f64,
    pub std_cost: f64,
    pub p50: u64,
    pub p95: u64,
    pub max_cost: u64,
    /// Sorted by label.
    pub strata: Vec<StratumRow>,
}

impl BenchRecord {
    /// `sum_j freq_j * mean_j`, which reproduces `mean_cost` up to rounding.
    pub fn stratified_mean(&self) -> f64 {
        self.strata.iter().map(|s| s.freq * s.mean).sum()
    }

    /// Standard error of `mean_cost`.
    pub fn std_error(&self) -> f64 {
        self.std_cost / (self.trials as f64).sqrt()
    }

    pub fn stratum(&self, label: &str) -> Option<&StratumRow> {
        self.strata.iter().find(|s| s.label == label)
    }
}

/// Monte Carlo estimate of the mean cost of `task` over words of length `n`
/// drawn from `model`. Trial `i` samples from substream `i` of `seed`;
/// aggregation runs on the per-trial results in trial order, so the record
/// does not depend on thread scheduling.
pub fn avgcase_with<T: CostTask + ?Sized>(
    task: &T,
    rank: u32,
    n: usize,
    model: SamplingModel,
    trials: u64,
    seed: Seed,
) -> Result<BenchRecord> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    task.validate(rank, n, model)?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| task.run(&sample_word(rank, n, model, &mut seed.stream(i))))
        .collect::<Result<Vec<_>>>()?;

    let costs: Vec<u64> = outcomes.iter().map(|o| o.cost).collect();
    let mut strata: BTreeMap<&str, (u64, u128)> = BTreeMap::new();
    for o in &outcomes {
        let e = strata.entry(o.stratum).or_default();
        e.0 += 1;
        e.1 += o.cost as u128;
    }
    let total: u128 = costs.iter().map(|&c| c as u128).sum();
    let as_f64: Vec<f64> = costs.iter().map(|&c| c as f64).collect();
    let mut sorted = costs.clone();
    sorted.sort_unstable();
    Ok(BenchRecord {
        task: task.name(),
        model,
        rank,
        n,
        trials,
        seed: seed.0,
        mean_cost: total as f64 / trials as f64,
        std_cost: sample_std(&as_f64),
        p50: nearest_rank(&sorted, 0.5).expect("nonempty"),
        p95: nearest_rank(&sorted, 0.95).expect("nonempty"),
        max_cost: *sorted.last().expect("nonempty"),
        strata: strata
            .into_iter()
            .map(|(label, (count, sum))| StratumRow {
                label: label.to_string(),
                count,
                freq: count as f64 / trials as f64,
                mean: sum as f64 / count as f64,
            })
            .collect(),
    })
}

pub fn avgcase_estimate(
    task: Task,
    rank: u32,
    n: usize,
    model: SamplingModel,
    trials: u64,
    seed: Seed,
) -> Result<BenchRecord> {
    avgcase_with(&task, rank, n, model, trials, seed)
}

/// Exact average over every word of the model at one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactAverage {
    pub words: u64,
    pub mean: BigRational,
    /// `(label, number of words, exact mean cost)`, sorted by label.
    pub strata: Vec<(String, u64, BigRational)>,
}

pub fn exhaustive_average_with<T: CostTask + ?Sized>(
    task: &T,
    rank: u32,
    n: usize,
    model: SamplingModel,
    budget: u64,
) -> Result<ExactAverage> {
    task.validate(rank, n, model)?;
    let mut words = 0u64;
    let mut total = BigInt::from(0);
    let mut strata: BTreeMap<&str, (u64, BigInt)> = BTreeMap::new();
    for w in enumerate_words(rank, n, model, budget)? {
        let o = task.run(&w)?;
        words += 1;
        total += o.cost;
        let e = strata
            .entry(o.stratum)
            .or_insert_with(|| (0, BigInt::from(0)));
        e.0 += 1;
        e.1 += o.cost;
    }
    if words == 0 {
        return Err(Error::invalid(format!(
            "no {model} words of length {n} over rank {rank}"
        )));
    }
    Ok(ExactAverage {
        words,
        mean: BigRational::new(total, words.into()),
        strata: strata
            .into_iter()
            .map(|(label, (count, sum))| {
                (
                    label.to_string(),
                    count,
                    BigRational::new(sum, count.into()),
                )
            })
            .collect(),
    })
}

pub fn exhaustive_average(
    task: Task,
    rank: u32,
    n: usize,
    model: SamplingModel,
) -> Result<ExactAverage> {
    exhaustive_average_with(&task, rank, n, model, DEFAULT_EXHAUSTIVE_BUDGET)
}

/// One CSV line. The JSON output is an array of these.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub task: String,
    pub model: String,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean_cost: f64,
    pub std_cost: f64,
    pub p50: u64,
    pub p95: u64,
    pub max_cost: u64,
    pub stratum: String,
    pub stratum_freq: f64,
    pub stratum_mean: f64,
}

/// An `ALL` row for each record followed by its per-stratum rows.
pub fn csv_rows(records: &[BenchRecord]) -> Vec<CsvRow> {
    let mut rows = Vec::new();
    for r in records {
        let row = |stratum: &str, freq: f64, mean: f64| CsvRow {
            task: r.task.clone(),
            model: r.model.name().to_string(),
            n: r.n,
            trials: r.trials,
            seed: r.seed,
            mean_cost: r.mean_cost,
            std_cost: r.std_cost,
            p50: r.p50,
            p95: r.p95,
            max_cost: r.max_cost,
            stratum: stratum.to_string(),
            stratum_freq: freq,
            stratum_mean: mean,
        };
        rows.push(row("ALL", 1.0, r.mean_cost));
        rows.extend(r.strata.iter().map(|s| row(&s.label, s.freq, s.mean)));
    }
    rows
}

/// Writes the CSV table to any writer.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in csv_rows(records) {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[BenchRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is UTF-8")
}

pub fn emit_csv(records: &[BenchRecord], path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(records)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// The CSV rows as a JSON array.
pub fn json_string(records: &[BenchRecord]) -> String {
    serde_json::to_string_pretty(&csv_rows(records)).expect("rows serialize")
}
