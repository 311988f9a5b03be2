use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("board size must be between 1 and {max}, got {0}", max = crate::hex::MAX_SIZE)]
    BoardSize(usize),
    #[error("cell {cell} is outside a board of {cells} cells")]
    CellOutOfRange { cell: usize, cells: usize },
    #[error("cell {0} is already occupied")]
    Occupied(usize),
    #[error("position is already decided")]
    GameOver,
    #[error("position has no legal moves")]
    NoLegalMoves,
    #[error("root has no children")]
    NoChildren,
    #[error("task count must be at least 1")]
    ZeroTasks,
    #[error("playout budget must be at least 1")]
    ZeroPlayouts,
    #[error("exploration constant must be finite and non-negative, got {0}")]
    InvalidCp(f64),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("root visits {actual} differ from playout budget {expected}")]
    BudgetMismatch { expected: u64, actual: u64 },
    #[error("malformed csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
