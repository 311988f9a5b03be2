use std::any::Any;
use std::panic::{self, AssertUnwindSafe};
use std::sync::{Condvar, Mutex, MutexGuard};

use super::Task;

type Payload = Box<dyn Any + Send + 'static>;

/// Completion tracking for one batch of submitted tasks.
#[derive(Default)]
pub(crate) struct Batch {
    state: Mutex<BatchState>,
    done: Condvar,
}

#[derive(Default)]
struct BatchState {
    pending: usize,
    panic: Option<Payload>,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl Batch {
    pub(crate) fn add(&self) {
        lock(&self.state).pending += 1;
    }

    /// Runs `task`, catching a panic so the worker survives it.
    pub(crate) fn run(&self, task: Task) {
        let result = panic::catch_unwind(AssertUnwindSafe(task));
        let mut st = lock(&self.state);
        if let Err(payload) = result {
            st.panic.get_or_insert(payload);
        }
        st.pending -= 1;
        if st.pending == 0 {
            self.done.notify_all();
        }
    }

    pub(crate) fn wait(&self) {
        let mut st = lock(&self.state);
        while st.pending > 0 {
            st = self.done.wait(st).unwrap_or_else(|e| e.into_inner());
        }
        if let Some(payload) = st.panic.take() {
            drop(st);
            panic::resume_unwind(payload);
        }
    }
}
