//! Task execution back-ends behind a single submit/wait contract.
//!
//! * [`Sequential`] runs each task inline inside `submit`.
//! * [`FifoPool`] is a fixed pool of workers pulling from one shared FIFO
//!   queue (work sharing).
//! * [`WorkStealingPool`] gives every worker its own deque; idle workers
//!   take the oldest task from a random victim (child stealing).
//! * [`ThreadPerTask`] spawns a fresh OS thread for every task.
//!
//! `wait` blocks until every task submitted since the previous `wait` has
//! finished. If a task panicked, `wait` re-raises the first panic after the
//! rest of the batch has drained. Pools keep their workers across batches.

mod batch;
mod fifo;
mod probe;
mod sequential;
mod stealing;
mod thread_per_task;

pub use fifo::FifoPool;
pub use probe::{Probed, TaskProbe};
pub use sequential::Sequential;
pub use stealing::{TaskDeque, WorkStealingPool};
pub use thread_per_task::ThreadPerTask;

use std::fmt;
use std::str::FromStr;

pub type Task = Box<dyn FnOnce() + Send + 'static>;

pub trait Scheduler: Send {
    fn kind(&self) -> SchedulerKind;

    /// Worker threads owned by the back-end (zero when it owns none).
    fn workers(&self) -> usize;

    /// Queues `task` and returns without waiting for it, except for
    /// [`Sequential`], which runs it before returning.
    fn submit(&mut self, task: Task);

    /// Blocks until every task of the current batch has completed.
    fn wait(&mut self);
}

impl<S: Scheduler + ?Sized> Scheduler for Box<S> {
    fn kind(&self) -> SchedulerKind {
        (**self).kind()
    }

    fn workers(&self) -> usize {
        (**self).workers()
    }

    fn submit(&mut self, task: Task) {
        (**self).submit(task)
    }

    fn wait(&mut self) {
        (**self).wait()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchedulerKind {
    Sequential,
    FifoPool,
    WorkStealing,
    ThreadPerTask,
}

impl SchedulerKind {
    pub const ALL: [SchedulerKind; 4] = [
        SchedulerKind::Sequential,
        SchedulerKind::FifoPool,
        SchedulerKind::WorkStealing,
        SchedulerKind::ThreadPerTask,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchedulerKind::Sequential => "sequential",
            SchedulerKind::FifoPool => "fifo",
            SchedulerKind::WorkStealing => "steal",
            SchedulerKind::ThreadPerTask => "thread-per-task",
        }
    }

    /// Builds the back-end. `workers` is ignored by the sequential and
    /// thread-per-task back-ends.
    pub fn build(self, workers: usize) -> Box<dyn Scheduler> {
        match self {
            SchedulerKind::Sequential => Box::new(Sequential::new()),
            SchedulerKind::FifoPool => Box::new(FifoPool::new(workers)),
            SchedulerKind::WorkStealing => Box::new(WorkStealingPool::new(workers)),
            SchedulerKind::ThreadPerTask => Box::new(ThreadPerTask::new()),
        }
    }

    pub fn uses_pool(self) -> bool {
        matches!(self, SchedulerKind::FifoPool | SchedulerKind::WorkStealing)
    }
}

impl fmt::Display for SchedulerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown scheduler `{0}` (expected sequential, fifo, steal or thread-per-task)")]
pub struct UnknownScheduler(pub String);

impl FromStr for SchedulerKind {
    type Err = UnknownScheduler;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchedulerKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownScheduler(s.to_string()))
    }
}

/// Hardware concurrency, or 1 if it cannot be determined.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
