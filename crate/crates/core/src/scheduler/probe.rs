use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use super::{Scheduler, SchedulerKind, Task};

/// Counters observed by tasks wrapped through [`Probed`].
#[derive(Debug, Default)]
pub struct TaskProbe {
    submitted: AtomicUsize,
    started: AtomicUsize,
    finished: AtomicUsize,
    in_flight: AtomicUsize,
    high_water: AtomicUsize,
}

impl TaskProbe {
    pub fn new() -> Arc<TaskProbe> {
        Arc::new(TaskProbe::default())
    }

    pub fn submitted(&self) -> usize {
        self.submitted.load(Ordering::SeqCst)
    }

    pub fn started(&self) -> usize {
        self.started.load(Ordering::SeqCst)
    }

    pub fn finished(&self) -> usize {
        self.finished.load(Ordering::SeqCst)
    }

    /// Largest number of tasks ever running at the same time.
    pub fn high_water(&self) -> usize {
        self.high_water.load(Ordering::SeqCst)
    }

    pub fn wrap(self: &Arc<Self>, task: Task) -> Task {
        self.submitted.fetch_add(1, Ordering::SeqCst);
        let probe = Arc::clone(self);
        Box::new(move || {
            probe.started.fetch_add(1, Ordering::SeqCst);
            let now = probe.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
            probe.high_water.fetch_max(now, Ordering::SeqCst);
            // Counted even if the task unwinds.
            let _done = Finish(&probe);
            task();
        })
    }
}

struct Finish<'a>(&'a TaskProbe);

impl Drop for Finish<'_> {
    fn drop(&mut self) {
        self.0.in_flight.fetch_sub(1, Ordering::SeqCst);
        self.0.finished.fetch_add(1, Ordering::SeqCst);
    }
}

/// Scheduler adapter that routes every task through a [`TaskProbe`].
pub struct Probed<S> {
    inner: S,
    probe: Arc<TaskProbe>,
}

impl<S: Scheduler> Probed<S> {
    pub fn new(inner: S, probe: Arc<TaskProbe>) -> Self {
        Probed { inner, probe }
    }

    pub fn probe(&self) -> &Arc<TaskProbe> {
        &self.probe
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }
}

impl<S: Scheduler> Scheduler for Probed<S> {
    fn kind(&self) -> SchedulerKind {
        self.inner.kind()
    }

    fn workers(&self) -> usize {
        self.inner.workers()
    }

    fn submit(&mut self, task: Task) {
        let task = self.probe.wrap(task);
        self.inner.submit(task);
    }

    fn wait(&mut self) {
        self.inner.wait();
    }
}
