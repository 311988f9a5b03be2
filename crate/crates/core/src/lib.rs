//! Grain-size-controlled parallel Monte Carlo Tree Search on Hex.
//!
//! A search splits its playout budget into a chosen number of tasks, each
//! running sequential UCT iterations against one shared tree, and hands the
//! tasks to one of several schedulers:
//!
//! ```
//! use gscpm::{gscpm_search, FifoPool, HexBoard, SearchConfig};
//!
//! let board = HexBoard::new(5).unwrap();
//! let config = SearchConfig { n_playouts: 2_000, n_tasks: 32, board_size: 5, ..Default::default() };
//! let mut pool = FifoPool::new(2);
//! let outcome = gscpm_search(&board, &config, &mut pool).unwrap();
//! assert_eq!(outcome.root_visits(), 2_000);
//! ```

pub mod bench;
pub mod error;
pub mod hex;
pub mod mcts;
pub mod rng;
pub mod scheduler;
pub mod search;

pub use bench::{emit_csv, parse_csv, run_benchmark, BenchRecord, GameRow, SweepSpec};
pub use error::{Error, Result};
pub use hex::{random_playout, DisjointSet, HexBoard, Move, Player};
pub use mcts::{
    backup, best_child, expand, run_iteration, select, uct_score, uct_search, SearchConfig,
    SearchTree, TreeNode,
};
pub use rng::{stream_for_task, RngStream};
pub use scheduler::{
    FifoPool, Probed, Scheduler, SchedulerKind, Sequential, TaskProbe, ThreadPerTask,
    WorkStealingPool,
};
pub use search::{gscpm_search, partition_playouts, ChunkPlan, SearchOutcome};
