//! UCT search over a tree shared by any number of tasks.
//!
//! One iteration is select, expand, playout, backup. Selection descends
//! only through fully expanded nodes, so every child it scores has been
//! created; a child whose first backup is still in flight on another task
//! is taken before any scored sibling. A win is credited to every node on
//! the path whose `player_just_moved` is the playout winner.

mod node;

pub use node::{SearchTree, TreeNode};

use crate::error::{Error, Result};
use crate::hex::{random_playout, HexBoard, Move, Player};
use crate::rng::RngStream;

/// Exploration constant used by default.
pub const DEFAULT_CP: f64 = 1.0;

/// Search tunables.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Total number of iterations across all tasks.
    pub n_playouts: u64,
    /// Number of tasks the budget is split into.
    pub n_tasks: u64,
    pub cp: f64,
    pub seed: u64,
    pub board_size: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_playouts: 1 << 17,
            n_tasks: 1,
            cp: DEFAULT_CP,
            seed: 1,
            board_size: 11,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_playouts == 0 {
            return Err(Error::ZeroPlayouts);
        }
        if self.n_tasks == 0 {
            return Err(Error::ZeroTasks);
        }
        if !(self.cp.is_finite() && self.cp >= 0.0) {
            return Err(Error::InvalidCp(self.cp));
        }
        if self.board_size == 0 || self.board_size > crate::hex::MAX_SIZE {
            return Err(Error::BoardSize(self.board_size));
        }
        Ok(())
    }
}

/// UCT value of a child with `wins` wins over `visits` visits, under a
/// parent visited `parent_visits` times.
///
/// Panics if `visits` or `parent_visits` is zero.
#[inline]
pub fn uct_score(wins: u64, visits: u64, parent_visits: u64, cp: f64) -> f64 {
    assert!(visits >= 1, "uct_score: child has no visits");
    assert!(parent_visits >= 1, "uct_score: parent has no visits");
    let n = visits as f64;
    wins as f64 / n + cp * ((parent_visits as f64).ln() / n).sqrt()
}

/// Descends from `root` through fully expanded nodes, replaying each chosen
/// move on `board`. Stops at the first node with untried moves or no
/// children. Ties go to the lowest slot.
pub fn select<'a>(root: &'a TreeNode, board: &mut HexBoard, cp: f64) -> &'a TreeNode {
    let mut node = root;
    loop {
        if !node.is_fully_expanded() {
            return node;
        }
        // Parent visits can trail the children's while a backup is in flight.
        let parent_visits = node.visits().max(1);
        let mut best: Option<(&TreeNode, f64)> = None;
        for child in node.children() {
            let visits = child.visits();
            let score = if visits == 0 {
                f64::INFINITY
            } else {
                uct_score(child.wins().min(visits), visits, parent_visits, cp)
            };
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((child, score));
            }
        }
        let Some((child, _)) = best else {
            return node;
        };
        let mv = child.mv().expect("non-root node has a move");
        board
            .place(mv)
            .expect("tree moves replay on the root position");
        node = child;
    }
}

/// Adds one random untried child of `node` and plays its move on `board`.
/// Returns `node` itself when it is decided or has nothing left to expand.
pub fn expand<'a>(node: &'a TreeNode, board: &mut HexBoard, rng: &mut RngStream) -> &'a TreeNode {
    node.try_expand(board, |n| rng.next_below(n as u32) as usize)
        .unwrap_or(node)
}

/// Credits one playout result to `node` and all of its ancestors.
pub fn backup(node: &TreeNode, winner: Player) {
    let mut cur = Some(node);
    while let Some(n) = cur {
        n.record(winner);
        cur = n.parent();
    }
}

/// Runs one select/expand/playout/backup iteration and returns the depth of
/// the node the playout started from (root is depth 0).
pub fn run_iteration(
    root: &TreeNode,
    root_board: &HexBoard,
    cp: f64,
    rng: &mut RngStream,
) -> usize {
    let start = iterate(root, root_board, cp, rng);
    let mut depth = 0;
    let mut cur = start.parent();
    while let Some(p) = cur {
        depth += 1;
        cur = p.parent();
    }
    depth
}

/// `iterations` rounds of UCT against `root`. Safe to call concurrently on
/// the same tree.
pub fn uct_search(
    root: &TreeNode,
    root_board: &HexBoard,
    iterations: u64,
    cp: f64,
    rng: &mut RngStream,
) {
    for _ in 0..iterations {
        iterate(root, root_board, cp, rng);
    }
}

fn iterate<'a>(
    root: &'a TreeNode,
    root_board: &HexBoard,
    cp: f64,
    rng: &mut RngStream,
) -> &'a TreeNode {
    let mut board = root_board.clone();
    let leaf = select(root, &mut board, cp);
    let start = expand(leaf, &mut board, rng);
    let winner = random_playout(&mut board, rng);
    backup(start, winner);
    start
}

/// Move of the most visited child of `root`; ties go to the lowest slot.
pub fn best_child(root: &TreeNode) -> Result<Move> {
    let mut best: Option<&TreeNode> = None;
    for child in root.children() {
        if best.is_none_or(|b| child.visits() > b.visits()) {
            best = Some(child);
        }
    }
    best.and_then(TreeNode::mv).ok_or(Error::NoChildren)
}
