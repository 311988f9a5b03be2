//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! `cargo test -p gscpm --test acceptance`

mod common;

use std::cell::OnceCell;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use common::{bfs_winner, cells_of};
use gscpm::{
    gscpm_search, run_benchmark, stream_for_task, uct_score, BenchRecord, FifoPool, GameRow,
    HexBoard, Move, Scheduler, SchedulerKind, SearchConfig, SweepSpec,
};

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn cores() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn powers_of_two_to_4096() -> Vec<u64> {
    (0..=12).map(|k| 1u64 << k).collect()
}

fn row(records: &[BenchRecord], kind: SchedulerKind, tasks: u64, game: GameRow) -> &BenchRecord {
    records
        .iter()
        .find(|r| r.scheduler == kind && r.tasks == tasks && r.game == game)
        .expect("configuration missing from benchmark output")
}

fn timing_spec(kind: SchedulerKind, workers: usize, tasks: Vec<u64>, games: u32) -> SweepSpec {
    SweepSpec {
        schedulers: vec![kind],
        workers: vec![workers],
        tasks,
        playouts: 1 << 17,
        board_size: 11,
        games,
        warmup: 1,
        verify: true,
        ..Default::default()
    }
}

fn budget_accounting() -> Verdict {
    let board = HexBoard::new(7).unwrap();
    let playouts = 1u64 << 15;
    let mut checked = 0;
    for kind in SchedulerKind::ALL {
        let mut s = kind.build(cores().max(2));
        for tasks in powers_of_two_to_4096() {
            let config = SearchConfig {
                n_playouts: playouts,
                n_tasks: tasks,
                board_size: 7,
                ..Default::default()
            };
            let visits = gscpm_search(&board, &config, &mut s).unwrap().root_visits();
            if visits != playouts {
                return Verdict::Fail(format!("{kind} tasks={tasks}: root visits {visits}"));
            }
            checked += 1;
        }
    }
    Verdict::Pass(format!(
        "{checked} configurations, root visits == 32768 in each"
    ))
}

/// Shared by the speedup and grain-size criteria: FIFO with M and 64*M tasks.
fn fifo_grain_run(m: usize) -> Vec<BenchRecord> {
    let m64 = 64 * m as u64;
    run_benchmark(&timing_spec(
        SchedulerKind::FifoPool,
        m,
        vec![m as u64, m64],
        10,
    ))
    .unwrap()
}

fn scaled_speedup(m: usize, records: &[BenchRecord]) -> Verdict {
    let mean = row(
        records,
        SchedulerKind::FifoPool,
        64 * m as u64,
        GameRow::Mean,
    );
    let speedup = mean.speedup.unwrap();
    let detail = format!(
        "M={m}, tasks={}, speedup {speedup:.3}, need >= {:.1}",
        64 * m,
        0.5 * m as f64
    );
    if m < 4 {
        return Verdict::Skip(format!("needs >= 4 cores; {detail}"));
    }
    verdict(speedup >= 0.5 * m as f64, detail)
}

fn grain_ordering(m: usize, records: &[BenchRecord]) -> Verdict {
    let coarse = row(records, SchedulerKind::FifoPool, m as u64, GameRow::Mean).wall_time_s;
    let fine = row(
        records,
        SchedulerKind::FifoPool,
        64 * m as u64,
        GameRow::Mean,
    )
    .wall_time_s;
    verdict(
        fine <= coarse * 1.05,
        format!(
            "tasks={}: {fine:.4}s vs tasks={m}: {coarse:.4}s (ratio {:.4}, need <= 1.05)",
            64 * m,
            fine / coarse
        ),
    )
}

fn thread_per_task_degradation() -> Verdict {
    let spec = timing_spec(SchedulerKind::ThreadPerTask, 1, powers_of_two_to_4096(), 3);
    let records = run_benchmark(&spec).unwrap();
    let means: Vec<(u64, f64)> = powers_of_two_to_4096()
        .into_iter()
        .map(|t| {
            (
                t,
                row(&records, SchedulerKind::ThreadPerTask, t, GameRow::Mean).wall_time_s,
            )
        })
        .collect();
    let (best_tasks, best) = means
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let at_4096 = means.last().unwrap().1;
    let slowdown = at_4096 / best - 1.0;
    verdict(
        slowdown >= 0.10,
        format!(
            "tasks=4096: {at_4096:.4}s, best tasks={best_tasks}: {best:.4}s, slowdown {:.1}% (need >= 10%)",
            slowdown * 100.0
        ),
    )
}

fn hex_oracle_equivalence() -> Verdict {
    let mut positions = 0u64;
    let mut mismatches = 0u64;
    for traj in 0..10_000 {
        let mut rng = stream_for_task(2024, traj);
        let mut board = HexBoard::new(3).unwrap();
        loop {
            positions += 1;
            if board.winner() != bfs_winner(3, &cells_of(&board)) {
                mismatches += 1;
            }
            let moves = board.legal_moves();
            if moves.is_empty() {
                break;
            }
            board
                .place(moves[rng.next_below(moves.len() as u32) as usize])
                .unwrap();
        }
    }
    let mut fills = 0;
    for order in permutations(4) {
        let mut board = HexBoard::new(2).unwrap();
        for c in order {
            board.place(Move::new(c)).unwrap();
            positions += 1;
            if board.winner() != bfs_winner(2, &cells_of(&board)) {
                mismatches += 1;
            }
        }
        fills += 1;
    }
    verdict(
        mismatches == 0,
        format!("{positions} positions (10000 3x3 trajectories, {fills} 2x2 fill orders), {mismatches} mismatches"),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn no_draws() -> Verdict {
    let mut undecided = 0;
    for traj in 0..10_000 {
        let mut rng = stream_for_task(77, traj);
        let mut board = HexBoard::new(5).unwrap();
        let mut moves = board.legal_moves();
        while !moves.is_empty() {
            board
                .place(moves[rng.next_below(moves.len() as u32) as usize])
                .unwrap();
            moves = board.legal_moves();
        }
        // The oracle panics if both sides are connected.
        if bfs_winner(5, &cells_of(&board)).is_none() || board.winner().is_none() {
            undecided += 1;
        }
    }
    verdict(
        undecided == 0,
        format!("10000 full 5x5 boards, {undecided} without a winner"),
    )
}

fn uct_values() -> Verdict {
    let cases = [((10, 20, 100), 0.979849), ((5, 5, 5), 1.567260)];
    let mut ok = true;
    let mut parts = Vec::new();
    for ((w, n, p), want) in cases {
        let got = uct_score(w, n, p, 1.0);
        let err = (got - want).abs();
        ok &= err <= 1e-6;
        parts.push(format!(
            "uct({w},{n},{p},1)={got:.9} want {want} err {err:.1e}"
        ));
    }
    verdict(ok, parts.join("; "))
}

fn determinism() -> Verdict {
    let board = HexBoard::new(5).unwrap();
    let config = SearchConfig {
        n_playouts: 10_000,
        n_tasks: 1,
        board_size: 5,
        seed: 42,
        ..Default::default()
    };
    let dump = || {
        let mut s = SchedulerKind::Sequential.build(1);
        gscpm_search(&board, &config, &mut s)
            .unwrap()
            .tree
            .root()
            .dump()
    };
    let (a, b) = (dump(), dump());
    verdict(
        a == b,
        format!(
            "dumps of {} and {} bytes, identical: {}",
            a.len(),
            b.len(),
            a == b
        ),
    )
}

fn exactly_once() -> Verdict {
    let workers = cores().max(4);
    for kind in SchedulerKind::ALL {
        let mut s = kind.build(workers);
        for rep in 0..50 {
            let counts: Arc<Vec<AtomicUsize>> =
                Arc::new((0..10_000).map(|_| AtomicUsize::new(0)).collect());
            for i in 0..10_000 {
                let counts = Arc::clone(&counts);
                s.submit(Box::new(move || {
                    counts[i].fetch_add(1, Ordering::Relaxed);
                }));
            }
            s.wait();
            if let Some(i) = counts.iter().position(|c| c.load(Ordering::Relaxed) != 1) {
                return Verdict::Fail(format!(
                    "{kind} repetition {rep}: task {i} ran {} times",
                    counts[i].load(Ordering::Relaxed)
                ));
            }
        }
    }
    let mut pool = FifoPool::new(1);
    let order = Arc::new(Mutex::new(Vec::new()));
    for i in 0..10_000 {
        let order = Arc::clone(&order);
        pool.submit(Box::new(move || order.lock().unwrap().push(i)));
    }
    pool.wait();
    let in_order = order.lock().unwrap().iter().copied().eq(0..10_000);
    verdict(
        in_order,
        format!("4 back-ends x 50 x 10000 tasks once each; 1-worker FIFO in order: {in_order}"),
    )
}

fn measurement_stability() -> Verdict {
    let spec = SweepSpec::default();
    let records = run_benchmark(&spec).unwrap();
    let means = records.iter().filter(|r| r.game == GameRow::Mean);
    let mut worst = (0.0f64, String::new());
    for mean in means {
        let sd = row(&records, mean.scheduler, mean.tasks, GameRow::StdDev).wall_time_s;
        let rsd = sd / mean.wall_time_s;
        if rsd > worst.0 {
            worst = (rsd, format!("{} tasks={}", mean.scheduler, mean.tasks));
        }
    }
    verdict(
        worst.0 <= 0.05,
        format!(
            "{} games per configuration, worst RSD {:.2}% at {} (need <= 5%)",
            spec.games,
            worst.0 * 100.0,
            worst.1
        ),
    )
}

fn main() -> ExitCode {
    let m = cores();
    println!("acceptance: {m} core(s) available");
    let grain_runs = OnceCell::new();
    let grain = || grain_runs.get_or_init(|| fifo_grain_run(m)).as_slice();

    type Criterion<'a> = (&'a str, Box<dyn FnOnce() -> Verdict + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 budget accounting", Box::new(budget_accounting)),
        ("2 scaled speedup", Box::new(|| scaled_speedup(m, grain()))),
        (
            "3 grain-size ordering",
            Box::new(|| grain_ordering(m, grain())),
        ),
        (
            "4 thread-per-task degradation",
            Box::new(thread_per_task_degradation),
        ),
        ("5 hex oracle equivalence", Box::new(hex_oracle_equivalence)),
        ("6 no-draw property", Box::new(no_draws)),
        ("7 uct unit values", Box::new(uct_values)),
        ("8 determinism", Box::new(determinism)),
        ("9 scheduler exactly-once", Box::new(exactly_once)),
        ("10 measurement stability", Box::new(measurement_stability)),
    ];

    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let v = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match v {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("{tag} {name}: {detail} [{secs:.1}s]");
    }
    println!("acceptance: {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
