use std::fmt::Write as _;
use std::ptr;
use std::sync::atomic::{AtomicPtr, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::hex::{HexBoard, Move, Player};

/// A node of the shared search tree.
///
/// Win and visit counters are atomics updated without locking. The child
/// slot array is sized once, at construction, to the number of legal moves
/// in the node's position; slots are filled in order under the node's
/// expansion guard (the mutex around the untried-move list) and published
/// by bumping `child_count` with release ordering. A published slot is
/// never rewritten.
///
/// Nodes only ever live behind a [`SearchTree`] handle or inside their
/// parent's slot array, so their addresses are stable for the lifetime of
/// the tree and `parent` stays valid.
pub struct TreeNode {
    mv: Option<Move>,
    player_just_moved: Player,
    wins: AtomicU64,
    visits: AtomicU64,
    children: Box<[AtomicPtr<TreeNode>]>,
    child_count: AtomicUsize,
    untried_left: AtomicUsize,
    untried: Mutex<Vec<Move>>,
    parent: *const TreeNode,
}

// SAFETY: every field shared across threads is either atomic or behind a
// mutex. `parent` and the child pointers refer to heap nodes owned by the
// same tree, which outlives every borrow handed out from it.
unsafe impl Send for TreeNode {}
unsafe impl Sync for TreeNode {}

impl TreeNode {
    /// Node for the position `board`, reached by `mv` from `parent`.
    /// Decided positions get no slots and no untried moves.
    fn new(mv: Option<Move>, board: &HexBoard, parent: *const TreeNode) -> TreeNode {
        let untried = if board.is_terminal() {
            Vec::new()
        } else {
            board.legal_moves()
        };
        let children = (0..untried.len())
            .map(|_| AtomicPtr::new(ptr::null_mut()))
            .collect();
        TreeNode {
            mv,
            player_just_moved: board.to_move().opponent(),
            wins: AtomicU64::new(0),
            visits: AtomicU64::new(0),
            children,
            child_count: AtomicUsize::new(0),
            untried_left: AtomicUsize::new(untried.len()),
            untried: Mutex::new(untried),
            parent,
        }
    }

    /// Move that led here; `None` at the root.
    pub fn mv(&self) -> Option<Move> {
        self.mv
    }

    pub fn player_just_moved(&self) -> Player {
        self.player_just_moved
    }

    pub fn wins(&self) -> u64 {
        self.wins.load(Ordering::Relaxed)
    }

    pub fn visits(&self) -> u64 {
        self.visits.load(Ordering::Relaxed)
    }

    /// Number of pre-allocated child slots.
    pub fn capacity(&self) -> usize {
        self.children.len()
    }

    pub fn child_count(&self) -> usize {
        self.child_count.load(Ordering::Acquire)
    }

    pub fn untried_count(&self) -> usize {
        self.untried_left.load(Ordering::Acquire)
    }

    /// No untried moves remain (always true for decided positions).
    pub fn is_fully_expanded(&self) -> bool {
        self.untried_count() == 0
    }

    pub fn parent(&self) -> Option<&TreeNode> {
        // SAFETY: a parent owns its children, so it is alive while `self` is.
        unsafe { self.parent.as_ref() }
    }

    pub fn child(&self, slot: usize) -> Option<&TreeNode> {
        if slot >= self.child_count() {
            return None;
        }
        let p = self.children[slot].load(Ordering::Acquire);
        // SAFETY: slots below `child_count` were initialised before the count
        // was published and are freed only when `self` is dropped.
        unsafe { p.as_ref() }
    }

    /// Published children in slot order.
    pub fn children(&self) -> impl Iterator<Item = &TreeNode> + '_ {
        (0..self.child_count()).filter_map(move |i| self.child(i))
    }

    pub(crate) fn record(&self, winner: Player) {
        self.visits.fetch_add(1, Ordering::Relaxed);
        if winner == self.player_just_moved {
            self.wins.fetch_add(1, Ordering::Relaxed);
        }
    }

    /// Claims a random untried move under the expansion guard, plays it on
    /// `board` and publishes the new child. Returns `None` when nothing is
    /// left to expand, including when another task took the last move.
    pub(crate) fn try_expand(
        &self,
        board: &mut HexBoard,
        pick: impl FnOnce(usize) -> usize,
    ) -> Option<&TreeNode> {
        if self.untried_left.load(Ordering::Acquire) == 0 {
            return None;
        }
        let mut untried = self.untried.lock().unwrap_or_else(|e| e.into_inner());
        if untried.is_empty() {
            return None;
        }
        let i = pick(untried.len());
        let mv = untried.swap_remove(i);
        board
            .place(mv)
            .expect("untried moves are empty cells of the node's position");

        let child = Box::into_raw(Box::new(TreeNode::new(Some(mv), board, self)));
        let slot = self.child_count.load(Ordering::Relaxed);
        self.children[slot].store(child, Ordering::Release);
        self.child_count.store(slot + 1, Ordering::Release);
        self.untried_left.store(untried.len(), Ordering::Release);
        drop(untried);
        // SAFETY: just published; owned by `self`.
        Some(unsafe { &*child })
    }

    /// Number of nodes in this subtree, `self` included.
    pub fn subtree_size(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            count += 1;
            stack.extend(n.children());
        }
        count
    }

    /// Depth-first text dump: one node per line, two spaces of indentation
    /// per level, `<move> <wins>/<visits>`. The root's move prints as `root`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self, 0usize)];
        while let Some((n, depth)) = stack.pop() {
            let label = n.mv.map_or_else(|| "root".to_string(), |m| m.to_string());
            let _ = writeln!(
                out,
                "{:indent$}{} {}/{}",
                "",
                label,
                n.wins(),
                n.visits(),
                indent = depth * 2
            );
            let kids: Vec<_> = n.children().collect();
            stack.extend(kids.into_iter().rev().map(|c| (c, depth + 1)));
        }
        out
    }
}

impl Drop for TreeNode {
    fn drop(&mut self) {
        let count = *self.child_count.get_mut();
        for slot in &mut self.children[..count] {
            let p = *slot.get_mut();
            if !p.is_null() {
                // SAFETY: created by `Box::into_raw` in `try_expand`, owned here.
                drop(unsafe { Box::from_raw(p) });
            }
        }
    }
}

impl std::fmt::Debug for TreeNode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TreeNode")
            .field("mv", &self.mv)
            .field("player_just_moved", &self.player_just_moved)
            .field("wins", &self.wins())
            .field("visits", &self.visits())
            .field("children", &self.child_count())
            .field("capacity", &self.capacity())
            .finish()
    }
}

/// Owning, cheaply clonable handle to a search tree.
///
/// The root sits behind an `Arc` and is only reachable by reference, so no
/// node can be moved while children point back at it.
#[derive(Clone, Debug)]
pub struct SearchTree {
    root: Arc<TreeNode>,
}

impl SearchTree {
    pub fn new(board: &HexBoard) -> SearchTree {
        SearchTree {
            root: Arc::new(TreeNode::new(None, board, ptr::null())),
        }
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }
}

impl std::ops::Deref for SearchTree {
    type Target = TreeNode;

    fn deref(&self) -> &TreeNode {
        &self.root
    }
}
