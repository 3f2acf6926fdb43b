//! Multi-threaded scans. Each scan's mask range is cut into contiguous
//! chunks, histogrammed on scoped threads, and merged; histograms are
//! commutative monoids, so the result does not depend on the worker count.

use std::ops::Range;
use std::thread;

use dessin_core::dessin::{mask_range, subdessin_histogram_range, Dessin, SubdessinHistogram};
use dessin_core::diagram::{state_histogram_range, state_mask_range, PdCode, StateHistogram};
use dessin_core::invariants::Executor;
use dessin_core::Result;

/// Below this many masks a scan stays on the calling thread.
const MIN_CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug)]
pub struct Threaded {
    workers: usize,
}

impl Threaded {
    pub fn new(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
        }
    }

    /// One worker per available core.
    pub fn available() -> Self {
        Self::new(thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    fn chunks(&self, range: Range<u64>) -> Vec<Range<u64>> {
        let len = range.end - range.start;
        let parts = (self.workers as u64 * 4).min(len / MIN_CHUNK).max(1);
        let step = len.div_ceil(parts);
        (0..parts)
            .map(|i| {
                let lo = range.start + i * step;
                lo..(lo + step).min(range.end)
            })
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Maps `f` over the chunks of `range` with at most `workers` threads
    /// and returns the results in chunk order.
    fn map<T: Send>(&self, range: Range<u64>, f: impl Fn(Range<u64>) -> T + Sync) -> Vec<T> {
        let chunks = self.chunks(range);
        if self.workers == 1 || chunks.len() == 1 {
            return chunks.into_iter().map(&f).collect();
        }
        let per = chunks.len().div_ceil(self.workers);
        thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .chunks(per)
                .map(|group| {
                    let f = &f;
                    scope.spawn(move || group.iter().cloned().map(f).collect::<Vec<T>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("scan worker panicked"))
                .collect()
        })
    }
}

impl Executor for Threaded {
    fn subdessins(&self, d: &Dessin, cap: usize) -> Result<SubdessinHistogram> {
        let range = mask_range(d, cap)?;
        let mut out = SubdessinHistogram::empty(d);
        for part in self.map(range, |r| subdessin_histogram_range(d, r)) {
            out.merge(&part);
        }
        Ok(out)
    }

    fn states(&self, pd: &PdCode, cap: usize) -> Result<StateHistogram> {
        let range = state_mask_range(pd, cap)?;
        let mut parts = self
            .map(range, |r| state_histogram_range(pd, r))
            .into_iter();
        let mut out = parts.next().expect("a state range is never empty");
        for part in parts {
            out.merge(&part);
        }
        Ok(out)
    }
}
