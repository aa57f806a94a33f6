//! Budgeted, optionally parallel evaluation of `φ(n, k, w)`.
//!
//! With several workers each target splits into subtrees fixed by a prefix
//! of edge weights. The answer is the first feasible subtree in prefix
//! order, which is also what a single worker finds, so the witness does not
//! depend on the worker count.

use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use linkhom_core::extremal::{
    phi_table_with, NodeCounter, Outcome, PhiSearch, SearchControl, SearchOptions, SearchResult,
};

/// A limit on search effort: `30s`, `2.5s`, `100000` or `100000n`, or
/// `none`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("none") {
            return Ok(Budget::default());
        }
        if let Some(secs) = s.strip_suffix('s') {
            let t: f64 = secs
                .trim()
                .parse()
                .map_err(|_| format!("bad duration '{}'", s))?;
            if !t.is_finite() || t < 0.0 {
                return Err(format!("bad duration '{}'", s));
            }
            return Ok(Budget {
                nodes: None,
                time: Some(Duration::from_secs_f64(t)),
            });
        }
        let digits = s.strip_suffix('n').unwrap_or(s).trim();
        let nodes = digits
            .parse::<u64>()
            .map_err(|_| format!("budget '{}' is neither seconds (30s) nor a node count", s))?;
        Ok(Budget {
            nodes: Some(nodes),
            time: None,
        })
    }
}

struct Shared {
    used: AtomicU64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    stopped: AtomicBool,
}

const FLUSH: u64 = 1024;

/// Node allowance for a single target.
struct RunCap {
    used: AtomicU64,
    limit: Option<u64>,
    hit: AtomicBool,
}

impl RunCap {
    fn new(limit: Option<u64>) -> Self {
        RunCap {
            used: AtomicU64::new(0),
            limit,
            hit: AtomicBool::new(false),
        }
    }
}

struct Worker<'a> {
    shared: &'a Shared,
    run: &'a RunCap,
    local: u64,
    /// Lowest prefix index known to succeed, and this worker's index.
    cancel: Option<(&'a AtomicUsize, usize)>,
}

impl Worker<'_> {
    fn flush(&mut self) {
        let total = self.shared.used.fetch_add(self.local, Ordering::Relaxed) + self.local;
        let in_run = self.run.used.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if self.run.limit.is_some_and(|l| in_run > l) {
            self.run.hit.store(true, Ordering::Relaxed);
        }
        let over_nodes = self.shared.limit.is_some_and(|l| total > l);
        let over_time = self.shared.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.shared.stopped.store(true, Ordering::Relaxed);
        }
    }
}

impl Drop for Worker<'_> {
    fn drop(&mut self) {
        self.shared.used.fetch_add(self.local, Ordering::Relaxed);
    }
}

impl SearchControl for Worker<'_> {
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local >= FLUSH {
            self.flush();
        }
        if self.shared.stopped.load(Ordering::Relaxed) || self.run.hit.load(Ordering::Relaxed) {
            return false;
        }
        match self.cancel {
            Some((best, me)) => best.load(Ordering::Relaxed) >= me,
            None => true,
        }
    }
}

/// Result of [`solve`] plus the number of nodes visited.
pub struct Solved {
    pub result: SearchResult,
    pub nodes: u64,
}

fn parallel_target(
    search: &PhiSearch,
    target: u64,
    shared: &Shared,
    run: &RunCap,
    threads: usize,
) -> Outcome {
    let edges = search.n() * (search.n() - 1) / 2;
    let mut depth = 1;
    let mut frontier = search.frontier(target, depth);
    while frontier.len() < 8 * threads && depth < edges.min(2 * search.n()) {
        depth += 1;
        frontier = search.frontier(target, depth);
    }
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<Mutex<Option<Outcome>>> = frontier.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= frontier.len()
                    || shared.stopped.load(Ordering::Relaxed)
                    || run.hit.load(Ordering::Relaxed)
                {
                    break;
                }
                if best.load(Ordering::Relaxed) < i {
                    continue;
                }
                let mut worker = Worker {
                    shared,
                    run,
                    local: 0,
                    cancel: Some((&best, i)),
                };
                let out = search.search(target, &frontier[i], &mut worker);
                if matches!(out, Outcome::Found(_)) {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                *outcomes[i].lock().expect("worker panicked") = Some(out);
            });
        }
    });
    for slot in outcomes {
        match slot.into_inner().expect("worker panicked") {
            Some(Outcome::Infeasible) => continue,
            Some(Outcome::Found(g)) => return Outcome::Found(g),
            Some(Outcome::Stopped) | None => return Outcome::Stopped,
        }
    }
    Outcome::Infeasible
}

/// Computes `φ(n, k, w)` within `budget` using `threads` workers.
pub fn solve(
    n: usize,
    k: usize,
    w: u64,
    budget: Budget,
    threads: usize,
) -> linkhom_core::Result<Solved> {
    let shared = Shared {
        used: AtomicU64::new(0),
        limit: budget.nodes,
        deadline: budget.time.map(|t| Instant::now() + t),
        stopped: AtomicBool::new(false),
    };
    let threads = threads.max(1);
    let mut run = |search: &PhiSearch, target: u64, cap: Option<u64>, _: &mut dyn SearchControl| {
        if shared.stopped.load(Ordering::Relaxed) {
            return Outcome::Stopped;
        }
        let run = RunCap::new(cap);
        if threads == 1 {
            let mut worker = Worker {
                shared: &shared,
                run: &run,
                local: 0,
                cancel: None,
            };
            search.search(target, &[], &mut worker)
        } else {
            parallel_target(search, target, &shared, &run, threads)
        }
    };
    let mut unused = NodeCounter::new(Default::default());
    let mut table = phi_table_with(n, k, w, SearchOptions::default(), &mut unused, &mut run)?;
    Ok(Solved {
        result: table.pop().expect("nonempty table"),
        nodes: shared.used.load(Ordering::Relaxed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use linkhom_core::extremal::SearchStatus;

    #[test]
    fn budgets_parse() {
        assert_eq!(
            "30s".parse::<Budget>().unwrap().time,
            Some(Duration::from_secs(30))
        );
        assert_eq!("1000".parse::<Budget>().unwrap().nodes, Some(1000));
        assert_eq!("1000n".parse::<Budget>().unwrap().nodes, Some(1000));
        assert_eq!("none".parse::<Budget>().unwrap(), Budget::default());
        assert!("fast".parse::<Budget>().is_err());
        assert!("-1s".parse::<Budget>().is_err());
    }

    #[test]
    fn worker_count_does_not_change_the_witness() {
        let one = solve(7, 4, 3, Budget::default(), 1).unwrap().result;
        let four = solve(7, 4, 3, Budget::default(), 4).unwrap().result;
        assert_eq!(one.value, 12);
        assert_eq!(one, four);
        let m1 = solve(7, 3, 1, Budget::default(), 1).unwrap().result;
        let m3 = solve(7, 3, 1, Budget::default(), 3).unwrap().result;
        assert_eq!(m1, m3);
    }

    #[test]
    fn zero_budget_stops() {
        let r = solve(
            8,
            4,
            3,
            Budget {
                nodes: Some(0),
                time: None,
            },
            2,
        )
        .unwrap()
        .result;
        assert!(r.value >= 16);
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let b = Budget {
            nodes: None,
            time: Some(Duration::ZERO),
        };
        let r = solve(6, 3, 2, b, 1).unwrap().result;
        assert!(r.status == SearchStatus::BudgetExhausted || r.lower_bound == r.value);
    }
}
