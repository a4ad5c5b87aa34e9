//! Multi-threaded distance search with node and wall-clock caps.
//!
//! Each deepening level splits into independent tasks, handed out in index
//! order to a fixed pool. The reported witness is always the one from the
//! lowest-indexed successful task, so the answer does not depend on the
//! thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use fermicode_core::distance::{DistanceResult, DistanceSearch, Memo, SearchControl, SearchStats, TaskOutcome};
use fermicode_core::{CodeFamily, PauliVec};

#[derive(Clone, Copy, Debug)]
pub struct ParallelLimits {
    pub threads: usize,
    pub max_nodes: Option<u64>,
    pub wall_clock: Option<Duration>,
    pub memo_cap: usize,
}

impl Default for ParallelLimits {
    fn default() -> Self {
        ParallelLimits {
            threads: thread::available_parallelism().map_or(1, |n| n.get()),
            max_nodes: None,
            wall_clock: None,
            memo_cap: fermicode_core::SearchLimits::default().memo_cap,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trip {
    NodeCap,
    WallClock,
}

impl Trip {
    pub fn name(self) -> &'static str {
        match self {
            Trip::NodeCap => "node_cap",
            Trip::WallClock => "wall_clock",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParallelOutcome {
    pub result: DistanceResult,
    pub stats: SearchStats,
    pub tripped: Option<Trip>,
    pub elapsed: Duration,
}

pub fn parallel_distance(code: &CodeFamily, max_weight: usize, limits: ParallelLimits) -> ParallelOutcome {
    let start = Instant::now();
    let deadline = limits.wall_clock.map(|d| start + d);
    let search = DistanceSearch::new(code);
    let control = SearchControl::new(limits.max_nodes);
    let threads = limits.threads.max(1);
    let mut stats = SearchStats::default();
    let finish = |result, stats: SearchStats, tripped| ParallelOutcome { result, stats, tripped, elapsed: start.elapsed() };

    for budget in 1..=max_weight {
        control.reset_level();
        let tasks = search.tasks(budget);
        let next = AtomicUsize::new(0);
        let active = AtomicUsize::new(threads);
        let found: Mutex<Option<(usize, PauliVec)>> = Mutex::new(None);
        let first_aborted = AtomicUsize::new(usize::MAX);
        thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(|| {
                    let mut memo = Memo::new(limits.memo_cap / threads);
                    loop {
                        let k = next.fetch_add(1, Ordering::SeqCst);
                        if k >= tasks.len() || control.best_task.load(Ordering::SeqCst) < k {
                            break;
                        }
                        match search.run_task(&tasks[k], budget, &control, &mut memo) {
                            TaskOutcome::Found(w) => {
                                let mut slot = found.lock().unwrap();
                                if slot.as_ref().is_none_or(|(j, _)| k < *j) {
                                    *slot = Some((k, w));
                                }
                            }
                            TaskOutcome::Aborted => {
                                first_aborted.fetch_min(k, Ordering::SeqCst);
                                break;
                            }
                            TaskOutcome::Exhausted | TaskOutcome::Superseded => {}
                        }
                    }
                    active.fetch_sub(1, Ordering::SeqCst);
                });
            }
            if let Some(deadline) = deadline {
                let (active, control) = (&active, &control);
                s.spawn(move || {
                    while active.load(Ordering::SeqCst) > 0 {
                        if Instant::now() >= deadline {
                            control.cancel();
                            break;
                        }
                        thread::sleep(Duration::from_millis(5));
                    }
                });
            }
        });
        stats.nodes = control.nodes.load(Ordering::SeqCst);
        let first_aborted = first_aborted.into_inner();
        // tasks start in index order, so a witness stands if nothing below it was cut short
        if let Some((k, w)) = found.into_inner().unwrap() {
            if k < first_aborted {
                return finish(DistanceResult::Exact { d: w.weight(), witness: w }, stats, None);
            }
        }
        if first_aborted != usize::MAX {
            let trip = if control.is_cancelled() { Trip::WallClock } else { Trip::NodeCap };
            let result = DistanceResult::LowerBound { greater_than: budget - 1, budget_exhausted: true };
            return finish(result, stats, Some(trip));
        }
        stats.levels_completed = budget;
    }
    let result = DistanceResult::LowerBound { greater_than: max_weight, budget_exhausted: false };
    finish(result, stats, None)
}
