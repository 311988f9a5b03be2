use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Condvar, Mutex, MutexGuard};
use std::thread::JoinHandle;

use super::batch::Batch;
use super::{Scheduler, SchedulerKind, Task};
use crate::rng::{stream_for_task, RngStream};

/// Random-victim steal attempts before a full sweep and parking.
const STEAL_ROUNDS: usize = 64;

/// Double-ended task queue. The owner pushes and pops at the bottom (newest
/// end); thieves take from the top (oldest end).
#[derive(Debug)]
pub struct TaskDeque<T> {
    items: Mutex<VecDeque<T>>,
}

impl<T> Default for TaskDeque<T> {
    fn default() -> Self {
        TaskDeque {
            items: Mutex::new(VecDeque::new()),
        }
    }
}

impl<T> TaskDeque<T> {
    pub fn new() -> Self {
        Self::default()
    }

    fn lock(&self) -> MutexGuard<'_, VecDeque<T>> {
        self.items.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn push(&self, item: T) {
        self.lock().push_back(item);
    }

    /// Owner side: newest item.
    pub fn pop(&self) -> Option<T> {
        self.lock().pop_back()
    }

    /// Thief side: oldest item.
    pub fn steal(&self) -> Option<T> {
        self.lock().pop_front()
    }

    pub fn len(&self) -> usize {
        self.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Work-stealing pool with one deque per worker.
///
/// Tasks submitted from outside the pool are dealt round-robin onto the
/// bottom of the workers' deques. A worker runs its own newest task first;
/// when its deque is empty it steals the oldest task of a randomly chosen
/// victim, backing off between attempts before parking.
pub struct WorkStealingPool {
    shared: Arc<Shared>,
    handles: Vec<JoinHandle<()>>,
    next: usize,
}

struct Shared {
    deques: Vec<TaskDeque<Task>>,
    /// Tasks sitting in any deque.
    queued: AtomicUsize,
    sleepers: Mutex<usize>,
    wake: Condvar,
    shutdown: AtomicBool,
    batch: Batch,
}

impl WorkStealingPool {
    /// Pool with `workers` threads (at least one).
    pub fn new(workers: usize) -> WorkStealingPool {
        let workers = workers.max(1);
        let shared = Arc::new(Shared {
            deques: (0..workers).map(|_| TaskDeque::new()).collect(),
            queued: AtomicUsize::new(0),
            sleepers: Mutex::new(0),
            wake: Condvar::new(),
            shutdown: AtomicBool::new(false),
            batch: Batch::default(),
        });
        let handles = (0..workers)
            .map(|i| {
                let shared = Arc::clone(&shared);
                std::thread::Builder::new()
                    .name(format!("steal-{i}"))
                    .spawn(move || Worker::new(i, shared).run())
                    .expect("failed to spawn pool worker")
            })
            .collect();
        WorkStealingPool {
            shared,
            handles,
            next: 0,
        }
    }

    /// Tasks currently waiting in each worker's deque.
    pub fn queue_lengths(&self) -> Vec<usize> {
        self.shared.deques.iter().map(TaskDeque::len).collect()
    }
}

impl Shared {
    fn sleepers(&self) -> MutexGuard<'_, usize> {
        self.sleepers.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn took(&self) {
        self.queued.fetch_sub(1, Ordering::SeqCst);
    }
}

struct Worker {
    index: usize,
    shared: Arc<Shared>,
    rng: RngStream,
}

impl Worker {
    fn new(index: usize, shared: Arc<Shared>) -> Self {
        Worker {
            index,
            shared,
            rng: stream_for_task(0x5eed_57ea1, index as u64),
        }
    }

    fn run(mut self) {
        loop {
            if let Some(task) = self.find_task() {
                self.shared.batch.run(task);
                continue;
            }
            let mut sleepers = self.shared.sleepers();
            if self.shared.shutdown.load(Ordering::SeqCst) {
                return;
            }
            if self.shared.queued.load(Ordering::SeqCst) > 0 {
                continue;
            }
            *sleepers += 1;
            sleepers = self
                .shared
                .wake
                .wait(sleepers)
                .unwrap_or_else(|e| e.into_inner());
            *sleepers -= 1;
        }
    }

    fn find_task(&mut self) -> Option<Task> {
        let shared = &*self.shared;
        if let Some(t) = shared.deques[self.index].pop() {
            shared.took();
            return Some(t);
        }
        let n = shared.deques.len();
        if n > 1 {
            for round in 0..STEAL_ROUNDS {
                if shared.queued.load(Ordering::SeqCst) == 0 {
                    break;
                }
                let mut victim = self.rng.next_below(n as u32 - 1) as usize;
                if victim >= self.index {
                    victim += 1;
                }
                if let Some(t) = shared.deques[victim].steal() {
                    shared.took();
                    return Some(t);
                }
                if round % 8 == 7 {
                    std::thread::yield_now();
                } else {
                    std::hint::spin_loop();
                }
            }
        }
        // Full sweep so a lone non-empty deque is never missed before parking.
        for d in &shared.deques {
            if let Some(t) = d.steal() {
                shared.took();
                return Some(t);
            }
        }
        None
    }
}

impl Scheduler for WorkStealingPool {
    fn kind(&self) -> SchedulerKind {
        SchedulerKind::WorkStealing
    }

    fn workers(&self) -> usize {
        self.handles.len()
    }

    fn submit(&mut self, task: Task) {
        self.shared.batch.add();
        let target = self.next;
        self.next = (self.next + 1) % self.shared.deques.len();
        self.shared.deques[target].push(task);
        self.shared.queued.fetch_add(1, Ordering::SeqCst);
        let sleepers = self.shared.sleepers();
        if *sleepers > 0 {
            self.shared.wake.notify_one();
        }
    }

    fn wait(&mut self) {
        self.shared.batch.wait();
    }
}

impl Drop for WorkStealingPool {
    fn drop(&mut self) {
        {
            let _guard = self.shared.sleepers();
            self.shared.shutdown.store(true, Ordering::SeqCst);
            self.shared.wake.notify_all();
        }
        for h in self.handles.drain(..) {
            let _ = h.join();
        }
    }
}
