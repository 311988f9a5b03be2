use std::panic;
use std::thread::JoinHandle;

use super::{Scheduler, SchedulerKind, Task};

/// Finished handles are reaped once this many are outstanding.
const REAP_THRESHOLD: usize = 1024;

/// Spawns a new OS thread per task and joins them all in `wait`.
#[derive(Default)]
pub struct ThreadPerTask {
    handles: Vec<JoinHandle<()>>,
    panicked: Option<Box<dyn std::any::Any + Send + 'static>>,
}

impl ThreadPerTask {
    pub fn new() -> Self {
        Self::default()
    }

    fn reap_finished(&mut self) {
        let mut i = 0;
        while i < self.handles.len() {
            if self.handles[i].is_finished() {
                let h = self.handles.swap_remove(i);
                if let Err(p) = h.join() {
                    self.panicked.get_or_insert(p);
                }
            } else {
                i += 1;
            }
        }
    }
}

impl Scheduler for ThreadPerTask {
    fn kind(&self) -> SchedulerKind {
        SchedulerKind::ThreadPerTask
    }

    fn workers(&self) -> usize {
        0
    }

    fn submit(&mut self, task: Task) {
        if self.handles.len() >= REAP_THRESHOLD {
            self.reap_finished();
        }
        let h = std::thread::Builder::new()
            .spawn(task)
            .expect("failed to spawn task thread");
        self.handles.push(h);
    }

    fn wait(&mut self) {
        for h in self.handles.drain(..) {
            if let Err(p) = h.join() {
                self.panicked.get_or_insert(p);
            }
        }
        if let Some(p) = self.panicked.take() {
            panic::resume_unwind(p);
        }
    }
}

impl Drop for ThreadPerTask {
    fn drop(&mut self) {
        for h in self.handles.drain(..) {
            let _ = h.join();
        }
    }
}
