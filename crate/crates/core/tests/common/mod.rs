#![allow(dead_code)]

use gscpm::{HexBoard, Player};

/// Same-colour neighbours per the rhombus embedding, computed from
/// coordinates rather than the board's internal linking.
pub fn neighbours(size: usize, cell: usize) -> Vec<usize> {
    let (r, c) = ((cell / size) as isize, (cell % size) as isize);
    let s = size as isize;
    [(0, -1), (0, 1), (-1, 0), (1, 0), (-1, 1), (1, -1)]
        .iter()
        .map(|(dr, dc)| (r + dr, c + dc))
        .filter(|&(rr, cc)| rr >= 0 && rr < s && cc >= 0 && cc < s)
        .map(|(rr, cc)| (rr * s + cc) as usize)
        .collect()
}

/// Winner by breadth-first search over stones, independent of the
/// disjoint-set bookkeeping.
pub fn bfs_winner(size: usize, cells: &[Option<Player>]) -> Option<Player> {
    let mut found = None;
    for p in [Player::Black, Player::White] {
        let on_start = |i: usize| match p {
            Player::Black => i / size == 0,
            Player::White => i.is_multiple_of(size),
        };
        let on_goal = |i: usize| match p {
            Player::Black => i / size == size - 1,
            Player::White => i % size == size - 1,
        };
        let mut seen = vec![false; cells.len()];
        let mut queue = std::collections::VecDeque::new();
        for i in 0..cells.len() {
            if cells[i] == Some(p) && on_start(i) {
                seen[i] = true;
                queue.push_back(i);
            }
        }
        while let Some(v) = queue.pop_front() {
            if on_goal(v) {
                assert!(found.is_none(), "both players connected");
                found = Some(p);
                break;
            }
            for w in neighbours(size, v) {
                if !seen[w] && cells[w] == Some(p) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    found
}

pub fn cells_of(board: &HexBoard) -> Vec<Option<Player>> {
    (0..board.num_cells()).map(|i| board.cell(i)).collect()
}
