//! Hex on a rhombus of hexagonal cells.
//!
//! Black connects the top row to the bottom row, White connects the left
//! column to the right column, and Black moves first. Cell `(r, c)` has
//! index `r * size + c` and touches `(r, c±1)`, `(r±1, c)`, `(r-1, c+1)`
//! and `(r+1, c-1)`.
//!
//! Stone chains are tracked incrementally in a [`DisjointSet`] with four
//! extra virtual nodes, one per board edge. A player has won once their two
//! edge nodes share a set.

mod disjoint_set;

pub use disjoint_set::DisjointSet;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Largest supported board dimension (cell indices fit in a `u16`).
pub const MAX_SIZE: usize = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Black,
    White,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Black => Player::White,
            Player::White => Player::Black,
        }
    }
}

/// A stone placement, identified by cell index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move(u16);

impl Move {
    pub fn new(cell: usize) -> Move {
        assert!(cell < MAX_SIZE * MAX_SIZE, "cell index {cell} out of range");
        Move(cell as u16)
    }

    pub fn cell(self) -> usize {
        usize::from(self.0)
    }
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct HexBoard {
    size: usize,
    cells: Vec<Option<Player>>,
    to_move: Player,
    dsu: DisjointSet,
    empty_count: usize,
}

impl HexBoard {
    pub fn new(size: usize) -> Result<HexBoard> {
        if size == 0 || size > MAX_SIZE {
            return Err(Error::BoardSize(size));
        }
        let n = size * size;
        Ok(HexBoard {
            size,
            cells: vec![None; n],
            to_move: Player::Black,
            dsu: DisjointSet::new(n + 4),
            empty_count: n,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn empty_count(&self) -> usize {
        self.empty_count
    }

    pub fn cell(&self, index: usize) -> Option<Player> {
        self.cells[index]
    }

    pub fn disjoint_set(&self) -> &DisjointSet {
        &self.dsu
    }

    /// Empty cells in ascending index order.
    pub fn legal_moves(&self) -> Vec<Move> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| Move(i as u16))
            .collect()
    }

    /// Virtual edge nodes `(first, second)` for `player`.
    fn edges(&self, player: Player) -> (usize, usize) {
        let n = self.cells.len();
        match player {
            Player::Black => (n, n + 1),
            Player::White => (n + 2, n + 3),
        }
    }

    /// Places a stone for the side to move and passes the turn.
    pub fn place(&mut self, m: Move) -> Result<()> {
        let cell = m.cell();
        if cell >= self.cells.len() {
            return Err(Error::CellOutOfRange {
                cell,
                cells: self.cells.len(),
            });
        }
        if self.cells[cell].is_some() {
            return Err(Error::Occupied(cell));
        }
        self.play(cell);
        Ok(())
    }

    /// `place` without the checks; `cell` must be empty and in range.
    fn play(&mut self, cell: usize) {
        let me = self.to_move;
        debug_assert!(self.cells[cell].is_none());
        self.cells[cell] = Some(me);
        self.empty_count -= 1;

        let size = self.size;
        let (r, c) = (cell / size, cell % size);
        let link = |nr: usize, nc: usize, dsu: &mut DisjointSet| {
            let idx = nr * size + nc;
            if self.cells[idx] == Some(me) {
                dsu.union(cell, idx);
            }
        };
        if c > 0 {
            link(r, c - 1, &mut self.dsu);
        }
        if c + 1 < size {
            link(r, c + 1, &mut self.dsu);
        }
        if r > 0 {
            link(r - 1, c, &mut self.dsu);
            if c + 1 < size {
                link(r - 1, c + 1, &mut self.dsu);
            }
        }
        if r + 1 < size {
            link(r + 1, c, &mut self.dsu);
            if c > 0 {
                link(r + 1, c - 1, &mut self.dsu);
            }
        }

        let (first, second) = self.edges(me);
        let (pos, last) = match me {
            Player::Black => (r, size - 1),
            Player::White => (c, size - 1),
        };
        if pos == 0 {
            self.dsu.union(cell, first);
        }
        if pos == last {
            self.dsu.union(cell, second);
        }
        self.to_move = me.opponent();
    }

    fn has_connected(&mut self, player: Player) -> bool {
        let (a, b) = self.edges(player);
        self.dsu.find(a) == self.dsu.find(b)
    }

    pub fn winner(&self) -> Option<Player> {
        [Player::Black, Player::White].into_iter().find(|&p| {
            let (a, b) = self.edges(p);
            self.dsu.same_set(a, b)
        })
    }

    pub fn is_terminal(&self) -> bool {
        self.winner().is_some()
    }
}

/// Plays uniformly random moves on `board` until someone connects, and
/// returns the winner. A position that is already decided is returned as-is.
pub fn random_playout(board: &mut HexBoard, rng: &mut RngStream) -> Player {
    if let Some(w) = board.winner() {
        return w;
    }
    let mut empties: Vec<u16> = board
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_none())
        .map(|(i, _)| i as u16)
        .collect();
    while !empties.is_empty() {
        let pick = rng.next_below(empties.len() as u32) as usize;
        let cell = usize::from(empties.swap_remove(pick));
        let mover = board.to_move;
        board.play(cell);
        if board.has_connected(mover) {
            return mover;
        }
    }
    unreachable!("a filled hex board always has a winner")
}
