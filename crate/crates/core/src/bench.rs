//! Speedup measurement over task-count and worker-count sweeps.
//!
//! Each measured game times one `gscpm_search` from the empty board. Every
//! configuration first plays `warmup` unrecorded games on the same
//! scheduler instance, so pool start-up cost lands outside the measurement.
//! A sequential baseline (one task, inline scheduler) is always measured
//! first and its mean time is the numerator of every speedup.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::hex::HexBoard;
use crate::mcts::{SearchConfig, DEFAULT_CP};
use crate::scheduler::{default_workers, Scheduler, SchedulerKind};
use crate::search::gscpm_search;

/// Default budget per measured move.
pub const DESK_PLAYOUTS: u64 = 1 << 17;
/// Budget used for the full-size experiment.
pub const PAPER_PLAYOUTS: u64 = 1_048_576;

pub const CSV_HEADER: [&str; 8] = [
    "scheduler",
    "workers",
    "tasks",
    "playouts",
    "board",
    "game",
    "wall_time_s",
    "speedup",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameRow {
    Game(u32),
    Mean,
    StdDev,
}

impl fmt::Display for GameRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameRow::Game(i) => write!(f, "{i}"),
            GameRow::Mean => f.write_str("mean"),
            GameRow::StdDev => f.write_str("stddev"),
        }
    }
}

impl FromStr for GameRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(GameRow::Mean),
            "stddev" => Ok(GameRow::StdDev),
            _ => s
                .parse()
                .map(GameRow::Game)
                .map_err(|_| Error::Csv(format!("bad game column `{s}`"))),
        }
    }
}

/// One row of a benchmark report.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub scheduler: SchedulerKind,
    pub workers: usize,
    pub tasks: u64,
    pub playouts: u64,
    pub board: usize,
    pub game: GameRow,
    /// Seconds; the sample standard deviation on `StdDev` rows.
    pub wall_time_s: f64,
    /// Baseline mean time over this row's time. `None` without a baseline.
    pub speedup: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub schedulers: Vec<SchedulerKind>,
    pub workers: Vec<usize>,
    pub tasks: Vec<u64>,
    pub playouts: u64,
    pub board_size: usize,
    pub cp: f64,
    pub games: u32,
    pub warmup: u32,
    pub seed: u64,
    /// Fail the run if any search's root visits differ from the budget.
    pub verify: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            schedulers: vec![SchedulerKind::FifoPool],
            workers: vec![default_workers()],
            tasks: (0..=12).map(|k| 1u64 << k).collect(),
            playouts: DESK_PLAYOUTS,
            board_size: 11,
            cp: DEFAULT_CP,
            games: 10,
            warmup: 1,
            seed: 1,
            verify: false,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSweep(msg.to_string()));
        if self.playouts == 0 {
            return Err(Error::ZeroPlayouts);
        }
        if self.schedulers.is_empty() {
            return bad("no schedulers");
        }
        if self.workers.is_empty() || self.workers.contains(&0) {
            return bad("worker counts must be non-empty and at least 1");
        }
        if self.tasks.is_empty() || self.tasks.contains(&0) {
            return bad("task counts must be non-empty and at least 1");
        }
        if self.games == 0 {
            return bad("at least one measured game is required");
        }
        self.search_config(1).validate()
    }

    fn search_config(&self, tasks: u64) -> SearchConfig {
        SearchConfig {
            n_playouts: self.playouts,
            n_tasks: tasks,
            cp: self.cp,
            seed: self.seed,
            board_size: self.board_size,
        }
    }

    /// `(scheduler, workers, tasks)` triples to measure, baseline excluded.
    /// Back-ends that own no workers are measured once per task count.
    fn configurations(&self) -> Vec<(SchedulerKind, usize, u64)> {
        let mut out = Vec::new();
        for &kind in &self.schedulers {
            let workers: Vec<usize> = if kind.uses_pool() {
                self.workers.clone()
            } else {
                vec![0]
            };
            for &w in &workers {
                for &t in &self.tasks {
                    if kind == SchedulerKind::Sequential && t == 1 {
                        continue;
                    }
                    if !out.contains(&(kind, w, t)) {
                        out.push((kind, w, t));
                    }
                }
            }
        }
        out
    }
}

/// Worker count recorded for a configuration: threads that execute tasks.
fn reported_workers(kind: SchedulerKind, workers: usize, tasks: u64, playouts: u64) -> usize {
    match kind {
        SchedulerKind::Sequential => 1,
        SchedulerKind::ThreadPerTask => tasks.min(playouts) as usize,
        _ => workers,
    }
}

/// Sample mean and standard deviation (n - 1 denominator; 0 for n < 2).
pub fn mean_and_stddev(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn run_benchmark(spec: &SweepSpec) -> Result<Vec<BenchRecord>> {
    run_benchmark_with(spec, |_| {})
}

/// Like [`run_benchmark`], reporting each record as soon as it exists.
pub fn run_benchmark_with(
    spec: &SweepSpec,
    mut on_record: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>> {
    spec.validate()?;
    let mut records = Vec::new();
    let mut emit = |r: BenchRecord, records: &mut Vec<BenchRecord>| {
        on_record(&r);
        records.push(r);
    };

    let mut baseline = SchedulerKind::Sequential.build(1);
    let times = measure(spec, 1, &mut baseline)?;
    let (base_mean, _) = mean_and_stddev(&times);
    for r in rows(spec, SchedulerKind::Sequential, 1, 1, &times, base_mean) {
        emit(r, &mut records);
    }

    for (kind, workers, tasks) in spec.configurations() {
        let mut scheduler = kind.build(workers);
        let times = measure(spec, tasks, &mut scheduler)?;
        let shown = reported_workers(kind, workers, tasks, spec.playouts);
        for r in rows(spec, kind, shown, tasks, &times, base_mean) {
            emit(r, &mut records);
        }
    }
    Ok(records)
}

/// Wall times of the measured games; warm-up games are run and dropped.
fn measure(spec: &SweepSpec, tasks: u64, scheduler: &mut dyn Scheduler) -> Result<Vec<f64>> {
    let board = HexBoard::new(spec.board_size)?;
    let config = spec.search_config(tasks);
    let mut times = Vec::with_capacity(spec.games as usize);
    for game in 0..spec.warmup + spec.games {
        let start = Instant::now();
        let outcome = gscpm_search(&board, &config, scheduler)?;
        let elapsed = start.elapsed().as_secs_f64();
        if spec.verify && outcome.root_visits() != spec.playouts {
            return Err(Error::BudgetMismatch {
                expected: spec.playouts,
                actual: outcome.root_visits(),
            });
        }
        drop(outcome);
        if game >= spec.warmup {
            times.push(elapsed);
        }
    }
    Ok(times)
}

fn rows(
    spec: &SweepSpec,
    scheduler: SchedulerKind,
    workers: usize,
    tasks: u64,
    times: &[f64],
    base_mean: f64,
) -> Vec<BenchRecord> {
    let record = |game, wall_time_s, speedup| BenchRecord {
        scheduler,
        workers,
        tasks: tasks.min(spec.playouts),
        playouts: spec.playouts,
        board: spec.board_size,
        game,
        wall_time_s,
        speedup: Some(speedup),
    };
    let speedups: Vec<f64> = times.iter().map(|t| base_mean / t).collect();
    let (mean, sd) = mean_and_stddev(times);
    let (_, speedup_sd) = mean_and_stddev(&speedups);
    let mut out: Vec<_> = times
        .iter()
        .zip(&speedups)
        .enumerate()
        .map(|(i, (&t, &s))| record(GameRow::Game(i as u32), t, s))
        .collect();
    out.push(record(GameRow::Mean, mean, base_mean / mean));
    out.push(record(GameRow::StdDev, sd, speedup_sd));
    out
}

/// Header plus one line per record, in the order given.
pub fn emit_csv(records: &[BenchRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("writing to memory");
    for r in records {
        w.write_record([
            r.scheduler.to_string(),
            r.workers.to_string(),
            r.tasks.to_string(),
            r.playouts.to_string(),
            r.board.to_string(),
            r.game.to_string(),
            r.wall_time_s.to_string(),
            r.speedup.map(|s| s.to_string()).unwrap_or_default(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

/// Reads a report produced by [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Csv(format!("unexpected header {header:?}")));
    }
    fn field<T: FromStr>(row: &csv::StringRecord, i: usize) -> Result<T> {
        row[i]
            .parse()
            .map_err(|_| Error::Csv(format!("bad {} value `{}`", CSV_HEADER[i], &row[i])))
    }
    rdr.records()
        .map(|row| {
            let row = row?;
            Ok(BenchRecord {
                scheduler: field(&row, 0)?,
                workers: field(&row, 1)?,
                tasks: field(&row, 2)?,
                playouts: field(&row, 3)?,
                board: field(&row, 4)?,
                game: row[5].parse()?,
                wall_time_s: field(&row, 6)?,
                speedup: if row[7].is_empty() {
                    None
                } else {
                    Some(field(&row, 7)?)
                },
            })
        })
        .collect()
}
