use super::{Scheduler, SchedulerKind, Task};

/// Runs every task on the caller's thread, inside `submit`.
#[derive(Debug, Default)]
pub struct Sequential;

impl Sequential {
    pub fn new() -> Self {
        Sequential
    }
}

impl Scheduler for Sequential {
    fn kind(&self) -> SchedulerKind {
        SchedulerKind::Sequential
    }

    fn workers(&self) -> usize {
        0
    }

    fn submit(&mut self, task: Task) {
        task();
    }

    fn wait(&mut self) {}
}
