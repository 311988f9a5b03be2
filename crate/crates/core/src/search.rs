//! Grain-size-controlled parallel search.
//!
//! The playout budget is cut into `n_tasks` chunks; each chunk runs plain
//! UCT iterations against one shared root as a single scheduler task. The
//! task count is the grain-size knob: few tasks leave workers idle, many
//! tasks pay more submission and scheduling overhead.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hex::{HexBoard, Move};
use crate::mcts::{best_child, uct_search, SearchConfig, SearchTree};
use crate::rng::stream_for_task;
use crate::scheduler::Scheduler;

/// Iteration count for every task of a search.
///
/// Stored in closed form: the first `extra` tasks run `base + 1`
/// iterations, the rest run `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChunkPlan {
    tasks: u64,
    base: u64,
    extra: u64,
}

impl ChunkPlan {
    pub fn len(&self) -> u64 {
        self.tasks
    }

    pub fn is_empty(&self) -> bool {
        self.tasks == 0
    }

    /// Iterations for task `t`, or `None` past the last task.
    pub fn get(&self, t: u64) -> Option<u64> {
        (t < self.tasks).then(|| self.base + u64::from(t < self.extra))
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        (0..self.tasks as usize).map(move |t| self.base + u64::from((t as u64) < self.extra))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn total(&self) -> u64 {
        self.base * self.tasks + self.extra
    }
}

/// Splits `n_playouts` into `n_tasks` chunks whose sizes differ by at most
/// one; the first `n_playouts % n_tasks` chunks get the extra iteration.
/// More tasks than playouts are clamped to one playout per task.
pub fn partition_playouts(n_playouts: u64, n_tasks: u64) -> Result<ChunkPlan> {
    if n_tasks == 0 {
        return Err(Error::ZeroTasks);
    }
    if n_playouts == 0 {
        return Err(Error::ZeroPlayouts);
    }
    let tasks = n_tasks.min(n_playouts);
    Ok(ChunkPlan {
        tasks,
        base: n_playouts / tasks,
        extra: n_playouts % tasks,
    })
}

/// Result of one search: the chosen move and the tree that produced it.
#[derive(Debug)]
pub struct SearchOutcome {
    pub best_move: Move,
    pub tree: SearchTree,
}

impl SearchOutcome {
    pub fn root_visits(&self) -> u64 {
        self.tree.visits()
    }
}

/// Searches `board` with the budget and grain size in `config`, running the
/// chunks on `scheduler`, and returns the most visited root move.
///
/// Task `t` draws from `stream_for_task(config.seed, t)`. `config.board_size`
/// is not consulted; the position comes from `board`.
pub fn gscpm_search(
    board: &HexBoard,
    config: &SearchConfig,
    scheduler: &mut dyn Scheduler,
) -> Result<SearchOutcome> {
    if !(config.cp.is_finite() && config.cp >= 0.0) {
        return Err(Error::InvalidCp(config.cp));
    }
    if board.is_terminal() {
        return Err(Error::GameOver);
    }
    if board.empty_count() == 0 {
        return Err(Error::NoLegalMoves);
    }
    let plan = partition_playouts(config.n_playouts, config.n_tasks)?;

    let tree = SearchTree::new(board);
    let root_board = Arc::new(board.clone());
    for (t, iterations) in plan.iter().enumerate() {
        let tree = tree.clone();
        let root_board = Arc::clone(&root_board);
        let (cp, seed) = (config.cp, config.seed);
        scheduler.submit(Box::new(move || {
            let mut rng = stream_for_task(seed, t as u64);
            uct_search(&tree, &root_board, iterations, cp, &mut rng);
        }));
    }
    scheduler.wait();

    let best_move = best_child(&tree)?;
    Ok(SearchOutcome { best_move, tree })
}
