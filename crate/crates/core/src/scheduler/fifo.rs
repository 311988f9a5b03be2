use std::collections::VecDeque;
use std::sync::{Arc, Condvar, Mutex, MutexGuard};
use std::thread::JoinHandle;

use super::batch::Batch;
use super::{Scheduler, SchedulerKind, Task};

/// Thread pool with a single shared FIFO queue.
///
/// `submit` appends to the tail and wakes one parked worker; idle workers
/// pop from the head. Tasks therefore start in submission order.
pub struct FifoPool {
    shared: Arc<Shared>,
    handles: Vec<JoinHandle<()>>,
}

struct Shared {
    state: Mutex<State>,
    work: Condvar,
    batch: Batch,
}

struct State {
    queue: VecDeque<Task>,
    parked: usize,
    shutdown: bool,
}

impl Shared {
    fn lock(&self) -> MutexGuard<'_, State> {
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }
}

impl FifoPool {
    /// Pool with `workers` threads (at least one).
    pub fn new(workers: usize) -> FifoPool {
        let workers = workers.max(1);
        let shared = Arc::new(Shared {
            state: Mutex::new(State {
                queue: VecDeque::new(),
                parked: 0,
                shutdown: false,
            }),
            work: Condvar::new(),
            batch: Batch::default(),
        });
        let handles = (0..workers)
            .map(|i| {
                let shared = Arc::clone(&shared);
                std::thread::Builder::new()
                    .name(format!("fifo-{i}"))
                    .spawn(move || worker_loop(&shared))
                    .expect("failed to spawn pool worker")
            })
            .collect();
        FifoPool { shared, handles }
    }

    /// `(parked workers, queued tasks)`, read atomically.
    pub fn snapshot(&self) -> (usize, usize) {
        let st = self.shared.lock();
        (st.parked, st.queue.len())
    }
}

fn worker_loop(shared: &Shared) {
    loop {
        let task = {
            let mut st = shared.lock();
            loop {
                if let Some(t) = st.queue.pop_front() {
                    break t;
                }
                if st.shutdown {
                    return;
                }
                st.parked += 1;
                st = shared.work.wait(st).unwrap_or_else(|e| e.into_inner());
                st.parked -= 1;
            }
        };
        shared.batch.run(task);
    }
}

impl Scheduler for FifoPool {
    fn kind(&self) -> SchedulerKind {
        SchedulerKind::FifoPool
    }

    fn workers(&self) -> usize {
        self.handles.len()
    }

    fn submit(&mut self, task: Task) {
        self.shared.batch.add();
        let wake = {
            let mut st = self.shared.lock();
            st.queue.push_back(task);
            st.parked > 0
        };
        if wake {
            self.shared.work.notify_one();
        }
    }

    fn wait(&mut self) {
        self.shared.batch.wait();
    }
}

impl Drop for FifoPool {
    fn drop(&mut self) {
        self.shared.lock().shutdown = true;
        self.shared.work.notify_all();
        for h in self.handles.drain(..) {
            let _ = h.join();
        }
    }
}
