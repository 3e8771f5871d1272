//! Depth-first search over restricted growth strings with forward checking.
//!
//! Cells are assigned in a fixed order. A cell may take any color already in
//! use or the next fresh one, which visits every color-permutation class once.
//! Each cell carries a bitmask of admissible colors: once two cells of a
//! solution hold distinct colors `a != b`, the third is restricted to
//! `{a, b}`. A branch dies when a mask empties or when too few unassigned
//! cells can still take a fresh color for the coloring to become exact.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use crate::space::SolutionIndex;

/// Nodes explored locally between checks of the shared budget.
const FLUSH_EVERY: u64 = 1 << 12;

pub(crate) const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Why a search stopped before finishing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Halt {
    Budget,
    Visitor,
}

pub(crate) struct Limits {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

/// State shared by all workers of one search.
pub(crate) struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    budget_hit: AtomicBool,
    limits: Limits,
    flush_every: u64,
}

impl Shared {
    pub fn new(limits: Limits) -> Self {
        let flush_every = limits.max_nodes.map_or(FLUSH_EVERY, |cap| cap.clamp(1, FLUSH_EVERY));
        Shared {
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            budget_hit: AtomicBool::new(false),
            limits,
            flush_every,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn budget_hit(&self) -> bool {
        self.budget_hit.load(Ordering::Relaxed)
    }

    fn flush(&self, local: u64) -> bool {
        let total = self.nodes.fetch_add(local, Ordering::Relaxed) + local;
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.limits.max_nodes.is_some_and(|cap| total > cap);
        let over_time = self.limits.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.budget_hit.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Immutable description of one search: which colors, which order, which
/// constraints.
pub(crate) struct Problem {
    r: usize,
    order: Vec<u32>,
    incidence: Vec<Vec<(u32, u32)>>,
}

impl Problem {
    pub fn new(index: &SolutionIndex, r: usize, order: Vec<u32>) -> Self {
        assert!((1..=MAX_COLORS).contains(&r));
        assert_eq!(order.len(), index.cell_count());
        Problem {
            r,
            order,
            incidence: index.incidence(),
        }
    }

    fn cells(&self) -> usize {
        self.order.len()
    }
}

#[inline]
fn bit(color: u8) -> u64 {
    1u64 << (color - 1)
}

/// One worker's mutable search state.
pub(crate) struct Worker<'a> {
    problem: &'a Problem,
    shared: &'a Shared,
    color: Vec<u8>,
    mask: Vec<u64>,
    trail: Vec<(u32, u64)>,
    used: usize,
    local_nodes: u64,
}

impl<'a> Worker<'a> {
    pub fn new(problem: &'a Problem, shared: &'a Shared) -> Self {
        let full = if problem.r == 64 {
            u64::MAX
        } else {
            (1u64 << problem.r) - 1
        };
        Worker {
            problem,
            shared,
            color: vec![0; problem.cells()],
            mask: vec![full; problem.cells()],
            trail: Vec::new(),
            used: 0,
            local_nodes: 0,
        }
    }

    /// Colors indexed by cell (0 = unassigned).
    pub fn colors(&self) -> &[u8] {
        &self.color
    }

    fn restrict(&mut self, cell: u32, allowed: u64) -> bool {
        let old = self.mask[cell as usize];
        let new = old & allowed;
        if new != old {
            self.trail.push((cell, old));
            self.mask[cell as usize] = new;
        }
        new != 0
    }

    /// Assigns `k` to the cell at `pos` and propagates. On failure the caller
    /// still has to undo.
    fn assign(&mut self, pos: usize, k: u8) -> bool {
        let problem = self.problem;
        let cell = problem.order[pos] as usize;
        self.color[cell] = k;
        if k as usize > self.used {
            self.used = k as usize;
        }
        for &(p, q) in &problem.incidence[cell] {
            let (cp, cq) = (self.color[p as usize], self.color[q as usize]);
            let ok = match (cp, cq) {
                (0, 0) => true,
                (cp, 0) => cp == k || self.restrict(q, bit(cp) | bit(k)),
                (0, cq) => cq == k || self.restrict(p, bit(cq) | bit(k)),
                (cp, cq) => cp == cq || cp == k || cq == k,
            };
            if !ok {
                return false;
            }
        }
        let need = problem.r - self.used;
        if need > 0 {
            let fresh = !((1u64 << self.used) - 1);
            let capable = problem.order[pos + 1..]
                .iter()
                .filter(|&&c| self.mask[c as usize] & fresh != 0)
                .take(need)
                .count();
            if capable < need {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, pos: usize, trail_mark: usize, used: usize) {
        while self.trail.len() > trail_mark {
            let (cell, old) = self.trail.pop().expect("non-empty trail");
            self.mask[cell as usize] = old;
        }
        self.color[self.problem.order[pos] as usize] = 0;
        self.used = used;
    }

    /// Re-applies an assignment prefix (colors by position). Returns false if
    /// the prefix is inconsistent.
    pub fn replay(&mut self, prefix: &[u8]) -> bool {
        prefix.iter().enumerate().all(|(pos, &k)| self.assign(pos, k))
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes >= self.shared.flush_every {
            let n = std::mem::take(&mut self.local_nodes);
            return self.shared.flush(n);
        }
        true
    }

    pub fn finish(&mut self) {
        let n = std::mem::take(&mut self.local_nodes);
        self.shared.nodes.fetch_add(n, Ordering::Relaxed);
    }

    /// Explores every completion of positions `pos..stop_depth`, calling
    /// `leaf` with the colors (by cell) whenever `stop_depth` is reached.
    pub fn dfs<F>(&mut self, pos: usize, stop_depth: usize, leaf: &mut F) -> Result<(), Halt>
    where
        F: FnMut(&Worker<'_>, usize) -> Flow,
    {
        if pos == stop_depth {
            return match leaf(self, pos) {
                Flow::Continue => Ok(()),
                Flow::Stop => Err(Halt::Visitor),
            };
        }
        let cell = self.problem.order[pos] as usize;
        let limit = (self.used + 1).min(self.problem.r) as u8;
        for k in 1..=limit {
            if self.mask[cell] & bit(k) == 0 {
                continue;
            }
            if !self.tick() {
                return Err(if self.shared.budget_hit() {
                    Halt::Budget
                } else {
                    Halt::Visitor
                });
            }
            let (mark, used) = (self.trail.len(), self.used);
            let result = if self.assign(pos, k) {
                self.dfs(pos + 1, stop_depth, leaf)
            } else {
                Ok(())
            };
            self.undo(pos, mark, used);
            result?;
        }
        Ok(())
    }
}

/// Outcome of a search for one rainbow-free exact coloring.
pub(crate) enum Found {
    Witness(Vec<u8>),
    Exhausted,
    Budget,
}

/// Depth at which the tree is cut into independent tasks.
fn split_depth(cells: usize, threads: usize) -> usize {
    if threads <= 1 {
        0
    } else {
        cells.min(6 + threads.next_power_of_two().trailing_zeros() as usize)
    }
}

pub(crate) fn find_one(problem: &Problem, shared: &Shared, threads: usize) -> Found {
    let cells = problem.cells();
    let depth = split_depth(cells, threads);
    let witness: Mutex<Option<Vec<u8>>> = Mutex::new(None);
    let record = |w: &Worker<'_>| {
        let mut slot = witness.lock().expect("witness lock");
        if slot.is_none() {
            *slot = Some(w.colors().to_vec());
        }
        shared.stop.store(true, Ordering::Relaxed);
        Flow::Stop
    };

    let mut budget = false;
    if depth == 0 {
        let mut worker = Worker::new(problem, shared);
        let result = worker.dfs(0, cells, &mut |w, _| record(w));
        worker.finish();
        budget = result == Err(Halt::Budget);
    } else {
        // collect prefixes (colors by position) down to the split depth
        let mut prefixes: Vec<Vec<u8>> = Vec::new();
        let mut root = Worker::new(problem, shared);
        let order = &problem.order;
        let result = root.dfs(0, depth, &mut |w, d| {
            if d == cells {
                return record(w);
            }
            prefixes.push(order[..d].iter().map(|&c| w.colors()[c as usize]).collect());
            Flow::Continue
        });
        root.finish();
        budget |= result == Err(Halt::Budget);
        if result.is_ok() {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            let hit = pool.install(|| {
                prefixes
                    .par_iter()
                    .map(|prefix| {
                        if shared.stop.load(Ordering::Relaxed) {
                            return shared.budget_hit();
                        }
                        let mut worker = Worker::new(problem, shared);
                        let consistent = worker.replay(prefix);
                        debug_assert!(consistent);
                        let r = worker.dfs(prefix.len(), cells, &mut |w, _| record(w));
                        worker.finish();
                        r == Err(Halt::Budget)
                    })
                    .reduce(|| false, |a, b| a || b)
            });
            budget |= hit;
        }
    }
    match witness.into_inner().expect("witness lock") {
        Some(colors) => Found::Witness(colors),
        None if budget || shared.budget_hit() => Found::Budget,
        None => Found::Exhausted,
    }
}

/// Calls `visit` on every leaf in order; returns whether the walk finished.
pub(crate) fn for_each<F>(problem: &Problem, shared: &Shared, mut visit: F) -> Result<(), Halt>
where
    F: FnMut(&[u8]) -> Flow,
{
    let mut worker = Worker::new(problem, shared);
    let cells = problem.cells();
    let result = worker.dfs(0, cells, &mut |w, _| visit(w.colors()));
    worker.finish();
    result
}
