//! Per-task random streams with batched delivery.
//!
//! Every task in a search owns one [`RngStream`], derived from the global
//! seed and the task index. Values are produced by a ChaCha8 generator
//! whose 64-bit stream selector is set to the task index, so streams for
//! different tasks never overlap. Values are pulled from the generator in
//! blocks (at most [`MAX_BLOCK`] per refill) and handed out one at a time;
//! the block size never affects the delivered sequence.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Largest number of values produced by a single refill.
pub const MAX_BLOCK: usize = 65_536;

/// First refill size. Blocks double on every refill up to the ceiling, so
/// short-lived tasks do not pay for 64K values they never read.
const INITIAL_BLOCK: usize = 1024;

#[derive(Clone)]
pub struct RngStream {
    gen: ChaCha8Rng,
    buf: Vec<u32>,
    cursor: usize,
    next_block: usize,
    max_block: usize,
}

impl std::fmt::Debug for RngStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RngStream")
            .field("stream", &self.gen.get_stream())
            .field("buffered", &(self.buf.len() - self.cursor))
            .field("max_block", &self.max_block)
            .finish()
    }
}

/// Stream for task `task_id` under the global `seed`.
pub fn stream_for_task(seed: u64, task_id: u64) -> RngStream {
    RngStream::with_block_limit(seed, task_id, MAX_BLOCK)
}

impl RngStream {
    /// Same as [`stream_for_task`] but with an explicit refill ceiling.
    ///
    /// Panics if `max_block` is zero.
    pub fn with_block_limit(seed: u64, task_id: u64, max_block: usize) -> Self {
        assert!(max_block > 0, "block limit must be positive");
        let mut gen = ChaCha8Rng::seed_from_u64(seed);
        gen.set_stream(task_id);
        RngStream {
            gen,
            buf: Vec::new(),
            cursor: 0,
            next_block: INITIAL_BLOCK.min(max_block),
            max_block,
        }
    }

    fn refill(&mut self) {
        let n = self.next_block;
        self.buf.resize(n, 0);
        for v in self.buf.iter_mut() {
            *v = self.gen.next_u32();
        }
        self.cursor = 0;
        self.next_block = (n * 2).min(self.max_block);
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        if self.cursor == self.buf.len() {
            self.refill();
        }
        let v = self.buf[self.cursor];
        self.cursor += 1;
        v
    }

    /// Uniform index in `[0, bound)`.
    ///
    /// Uses the widening-multiply method with rejection of the biased low
    /// zone, so every index is exactly equally likely.
    ///
    /// Panics if `bound` is zero.
    #[inline]
    pub fn next_below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0, "next_below: bound must be at least 1");
        let mut m = u64::from(self.next_u32()) * u64::from(bound);
        let mut low = m as u32;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                m = u64::from(self.next_u32()) * u64::from(bound);
                low = m as u32;
            }
        }
        (m >> 32) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draws(s: &mut RngStream, n: usize) -> Vec<u32> {
        (0..n).map(|_| s.next_u32()).collect()
    }

    #[test]
    fn same_seed_and_id_repeat() {
        let a = draws(&mut stream_for_task(42, 3), 1000);
        let b = draws(&mut stream_for_task(42, 3), 1000);
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_ids_differ() {
        let a = draws(&mut stream_for_task(42, 0), 1000);
        let b = draws(&mut stream_for_task(42, 1), 1000);
        assert_ne!(a, b);
        let equal = a.iter().zip(&b).filter(|(x, y)| x == y).count();
        assert!(equal < 3, "{equal} positional collisions");
    }

    #[test]
    fn block_size_is_invisible() {
        let mut small = RngStream::with_block_limit(9, 5, 7);
        let mut large = RngStream::with_block_limit(9, 5, MAX_BLOCK);
        // Long enough to cross several large refills.
        let n = 200_000;
        assert_eq!(draws(&mut small, n), draws(&mut large, n));
    }

    #[test]
    fn bound_one_is_zero() {
        let mut s = stream_for_task(1, 1);
        assert!((0..1000).all(|_| s.next_below(1) == 0));
    }

    #[test]
    #[should_panic(expected = "bound must be at least 1")]
    fn bound_zero_rejected() {
        stream_for_task(1, 1).next_below(0);
    }

    #[test]
    fn die_faces_are_uniform() {
        let mut s = stream_for_task(2024, 0);
        let mut counts = [0u32; 6];
        for _ in 0..600_000 {
            counts[s.next_below(6) as usize] += 1;
        }
        for (face, &c) in counts.iter().enumerate() {
            let dev = (f64::from(c) - 100_000.0).abs() / 100_000.0;
            assert!(dev <= 0.01, "face {face}: {c}");
        }
    }

    #[test]
    fn bounded_sequence_replays() {
        let bounds = [3u32, 121, 7, 1, 1 << 31, 99];
        let run = || {
            let mut s = stream_for_task(77, 12);
            (0..600)
                .map(|i| s.next_below(bounds[i % bounds.len()]))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn large_bound_stays_in_range() {
        let mut s = stream_for_task(5, 5);
        let bound = u32::MAX - 2;
        assert!((0..10_000).all(|_| s.next_below(bound) < bound));
    }
}
