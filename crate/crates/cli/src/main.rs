use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;
use gscpm::bench::{run_benchmark_with, DESK_PLAYOUTS, PAPER_PLAYOUTS};
use gscpm::scheduler::default_workers;
use gscpm::{emit_csv, GameRow, SchedulerKind, SweepSpec};

/// Measure first-move search time on an empty Hex board across schedulers,
/// worker counts and task counts, and report speedups over a sequential run.
#[derive(Parser, Debug)]
#[command(name = "gscpm-bench", version)]
struct Cli {
    /// Back-ends to measure: sequential, fifo, steal, thread-per-task.
    #[arg(long, value_delimiter = ',', default_value = "fifo")]
    scheduler: Vec<SchedulerKind>,

    /// Pool worker counts [default: hardware concurrency].
    #[arg(long, value_delimiter = ',')]
    workers: Vec<usize>,

    /// Task counts (grain sizes) to sweep.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1,2,4,8,16,32,64,128,256,512,1024,2048,4096"
    )]
    tasks: Vec<u64>,

    /// Playouts per searched move [default: 131072].
    #[arg(long, conflicts_with = "paper_scale")]
    playouts: Option<u64>,

    /// Board dimension.
    #[arg(long, default_value_t = 11)]
    board: usize,

    /// UCT exploration constant.
    #[arg(long, default_value_t = 1.0)]
    cp: f64,

    /// Measured games per configuration.
    #[arg(long, default_value_t = 10)]
    games: u32,

    /// Unrecorded warm-up games per configuration.
    #[arg(long, default_value_t = 1)]
    warmup: u32,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Write the CSV report here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,

    /// Fail if any search's root visit count differs from the budget.
    #[arg(long)]
    verify: bool,

    /// Use 1,048,576 playouts per move.
    #[arg(long)]
    paper_scale: bool,

    /// No progress lines on stderr.
    #[arg(long, short)]
    quiet: bool,
}

impl Cli {
    fn sweep(&self) -> SweepSpec {
        let playouts = match (self.paper_scale, self.playouts) {
            (true, _) => PAPER_PLAYOUTS,
            (false, Some(p)) => p,
            (false, None) => DESK_PLAYOUTS,
        };
        let workers = if self.workers.is_empty() {
            vec![default_workers()]
        } else {
            self.workers.clone()
        };
        SweepSpec {
            schedulers: self.scheduler.clone(),
            workers,
            tasks: self.tasks.clone(),
            playouts,
            board_size: self.board,
            cp: self.cp,
            games: self.games,
            warmup: self.warmup,
            seed: self.seed,
            verify: self.verify,
        }
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let spec = cli.sweep();
    let quiet = cli.quiet;

    let records = run_benchmark_with(&spec, |r| {
        if !quiet && r.game == GameRow::Mean {
            eprintln!(
                "{:>15} workers={:<4} tasks={:<5} mean={:.4}s speedup={:.2}",
                r.scheduler,
                r.workers,
                r.tasks,
                r.wall_time_s,
                r.speedup.unwrap_or(f64::NAN)
            );
        }
    })
    .context("benchmark failed")?;

    let text = emit_csv(&records);
    match &cli.csv {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing report")?,
    }
    Ok(())
}
