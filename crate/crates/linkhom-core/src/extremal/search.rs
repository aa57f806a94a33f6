//! Exact minimization over `Φ(n, k, w)`.
//!
//! Weights are capped at `w` and assigned edge by edge in row order, so
//! every `k`-subset is checked at the edge joining its two largest
//! vertices, which forces a minimum on that edge. Vertices are assumed
//! sorted by non-increasing degree. For a target `T` the tree either
//! yields a member of weight at most `T` or proves there is none, so the
//! optimum lies between the largest refuted target and the best member.

use alloc::vec::Vec;

use super::graph::{
    binomial, edge_index, for_each_subset, partition_graph, phi4_witness, total_weight,
    WeightedGraph,
};
use crate::{Error, Result};

/// Stops a search when [`SearchControl::tick`] returns false.
pub trait SearchControl {
    /// Called once per node.
    fn tick(&mut self) -> bool;
}

/// A node budget; `None` runs to completion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub nodes: Option<u64>,
}

/// Counts nodes against a [`Budget`].
#[derive(Clone, Debug)]
pub struct NodeCounter {
    pub used: u64,
    pub limit: Option<u64>,
}

impl NodeCounter {
    pub fn new(budget: Budget) -> Self {
        NodeCounter {
            used: 0,
            limit: budget.nodes,
        }
    }
}

impl SearchControl for NodeCounter {
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.limit.is_none_or(|l| self.used <= l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    ProvenOptimal,
    /// `value` is the best weight found; `lower_bound` is proven.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub value: u64,
    pub witness: WeightedGraph,
    pub status: SearchStatus,
    pub lower_bound: u64,
}

/// Outcome of one bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(WeightedGraph),
    Infeasible,
    Stopped,
}

/// Which lower bounds the tree may use beyond the forced edge minima.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Each edge lies in `n − 2` vertex-deleted subgraphs, each in
    /// `Φ(n−1, k, w)`: the total is at least `⌈n·φ(n−1)/(n−2)⌉`.
    pub deletion_bound: bool,
    /// For `(k, w) = (4, 3)` and `n ≥ 5` the largest degree is at least
    /// `⌈(2n−4)/3⌉`.
    pub degree_bound: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            deletion_bound: true,
            degree_bound: true,
        }
    }
}

/// Precomputed search tree for one `(n, k, w)`.
#[derive(Clone, Debug)]
pub struct PhiSearch {
    n: usize,
    k: usize,
    w: u32,
    edges: Vec<(usize, usize)>,
    /// For each edge, the other edges of every `k`-subset it completes.
    closing: Vec<Vec<Vec<usize>>>,
    /// Lower bounds for `φ(m, k, w)`, `m < n`.
    smaller: Vec<u64>,
    degree_floor: u64,
    root_bound: u64,
}

fn check(n: usize, k: usize, w: u64) -> Result<u32> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(alloc::format!(
            "need 1 <= k <= n, got k = {} and n = {}",
            k,
            n
        )));
    }
    if k == 1 && w > 0 {
        return Err(Error::InvalidParameter(
            "single vertices span no edges, so no graph qualifies".into(),
        ));
    }
    u32::try_from(w).map_err(|_| Error::InvalidParameter(alloc::format!("weight {} too large", w)))
}

impl PhiSearch {
    /// `smaller[m]` must be a lower bound for `φ(m, k, w)` for every `m < n`.
    pub fn new(
        n: usize,
        k: usize,
        w: u64,
        smaller: Vec<u64>,
        options: SearchOptions,
    ) -> Result<Self> {
        let w = check(n, k, w)?;
        if smaller.len() < n {
            return Err(Error::InvalidParameter(
                "missing bounds for smaller graphs".into(),
            ));
        }
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let mut closing = alloc::vec![Vec::new(); edges.len()];
        if k >= 2 {
            for_each_subset(n, k, |s| {
                let (a, b) = (s[k - 2], s[k - 1]);
                let mut others = Vec::new();
                for (t, &u) in s.iter().enumerate() {
                    for &v in &s[t + 1..] {
                        if (u, v) != (a, b) {
                            others.push(edge_index(n, u, v));
                        }
                    }
                }
                closing[edge_index(n, a, b)].push(others);
            });
        }
        let degree_floor = if options.degree_bound && k == 4 && w == 3 && n >= 5 {
            (2 * n as u64 - 4).div_ceil(3)
        } else {
            0
        };
        let mut root_bound = smaller[n - 1];
        if k >= 2 {
            let subsets = binomial(n as u64, k as u64) * w as u64;
            root_bound = root_bound.max(subsets.div_ceil(binomial(n as u64 - 2, k as u64 - 2)));
        }
        if options.deletion_bound && n >= 3 && n > k {
            root_bound = root_bound.max((n as u64 * smaller[n - 1]).div_ceil(n as u64 - 2));
        }
        if degree_floor > 0 {
            root_bound = root_bound.max(degree_floor);
        }
        Ok(PhiSearch {
            n,
            k,
            w,
            edges,
            closing,
            smaller,
            degree_floor,
            root_bound,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lower bound proven before any branching.
    pub fn root_bound(&self) -> u64 {
        self.root_bound
    }

    /// `φ` lower bound for the graph induced on the last `m` vertices.
    fn sub_bound(&self, m: usize) -> u64 {
        if m >= self.n {
            0
        } else {
            self.smaller[m]
        }
    }

    /// A known member, used as the incumbent when a search is cut short.
    pub fn heuristic(&self) -> WeightedGraph {
        let mut best = partition_graph(self.n, self.k.saturating_sub(1), self.w);
        if self.k == 4 && self.w == 3 && self.n >= 4 {
            let g = phi4_witness(self.n).expect("n >= 4");
            if total_weight(&g) < total_weight(&best) {
                best = g;
            }
        }
        best
    }

    /// Searches for a member of weight at most `target` whose first edges
    /// carry `prefix`.
    pub fn search(&self, target: u64, prefix: &[u32], ctl: &mut dyn SearchControl) -> Outcome {
        let mut st = State::new(self);
        for &x in prefix {
            let e = st.next;
            if !self.admissible(&st, e, x, target) {
                return Outcome::Infeasible;
            }
            st.assign(self, e, x);
            if !self.row_closed_ok(&st, e) {
                return Outcome::Infeasible;
            }
        }
        match self.dfs(&mut st, target, ctl) {
            Some(true) => Outcome::Found(
                WeightedGraph::from_weights(self.n, st.weights.clone())
                    .expect("complete assignment"),
            ),
            Some(false) => Outcome::Infeasible,
            None => Outcome::Stopped,
        }
    }

    /// All admissible assignments of the first `depth` edges.
    pub fn frontier(&self, target: u64, depth: usize) -> Vec<Vec<u32>> {
        let depth = depth.min(self.edges.len());
        let mut out = Vec::new();
        let mut st = State::new(self);
        self.expand(&mut st, target, depth, &mut out);
        out
    }

    fn expand(&self, st: &mut State, target: u64, depth: usize, out: &mut Vec<Vec<u32>>) {
        if st.next == depth {
            out.push(st.weights[..depth].to_vec());
            return;
        }
        let e = st.next;
        if !self.node_ok(st, e, target) {
            return;
        }
        let lo = self.forced(st, e);
        for x in lo..=self.w {
            if !self.admissible(st, e, x, target) {
                break;
            }
            st.assign(self, e, x);
            if self.row_closed_ok(st, e) {
                self.expand(st, target, depth, out);
            }
            st.unassign(self, e, x);
        }
    }

    /// Minimum weight on edge `e` forced by the subsets it completes.
    fn forced(&self, st: &State, e: usize) -> u32 {
        let mut lo = 0u32;
        for others in &self.closing[e] {
            let s: u32 = others.iter().map(|&f| st.weights[f]).sum();
            lo = lo.max(self.w.saturating_sub(s));
        }
        lo
    }

    /// Checks that hold for every value at edge `e`: the fixed rows plus
    /// the bound for the graph induced on the remaining vertices.
    fn node_ok(&self, st: &State, e: usize, target: u64) -> bool {
        let (a, _) = self.edges[e];
        let mut below = 0u64;
        for c in 0..=a {
            if below + self.sub_bound(self.n - c) > target {
                return false;
            }
            below += st.row_sum[c];
        }
        true
    }

    fn admissible(&self, st: &State, e: usize, x: u32, target: u64) -> bool {
        let (a, b) = self.edges[e];
        if x < self.forced(st, e) || x > self.w {
            return false;
        }
        if st.total + x as u64 + self.sub_bound(self.n - a - 1) > target {
            return false;
        }
        if a >= 1 {
            let cap = st.deg[a - 1];
            if st.deg[a] + x as u64 > cap || st.deg[b] + x as u64 > cap {
                return false;
            }
        }
        true
    }

    /// Checks made when edge `e` finishes its row.
    fn row_closed_ok(&self, st: &State, e: usize) -> bool {
        let (a, b) = self.edges[e];
        if b + 1 != self.n {
            return true;
        }
        if a == 0 && st.deg[0] < self.degree_floor {
            return false;
        }
        (a + 1..self.n).all(|y| st.deg[y] <= st.deg[a])
    }

    fn dfs(&self, st: &mut State, target: u64, ctl: &mut dyn SearchControl) -> Option<bool> {
        if !ctl.tick() {
            return None;
        }
        let e = st.next;
        if e == self.edges.len() {
            return Some(true);
        }
        if !self.node_ok(st, e, target) {
            return Some(false);
        }
        let lo = self.forced(st, e);
        for x in lo..=self.w {
            if !self.admissible(st, e, x, target) {
                if st.total + x as u64 > target {
                    break;
                }
                continue;
            }
            st.assign(self, e, x);
            if self.row_closed_ok(st, e) {
                match self.dfs(st, target, ctl) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            st.unassign(self, e, x);
        }
        Some(false)
    }
}

struct State {
    weights: Vec<u32>,
    deg: Vec<u64>,
    row_sum: Vec<u64>,
    total: u64,
    next: usize,
}

impl State {
    fn new(s: &PhiSearch) -> Self {
        State {
            weights: alloc::vec![0; s.edges.len()],
            deg: alloc::vec![0; s.n],
            row_sum: alloc::vec![0; s.n],
            total: 0,
            next: 0,
        }
    }

    fn assign(&mut self, s: &PhiSearch, e: usize, x: u32) {
        let (a, b) = s.edges[e];
        self.weights[e] = x;
        self.deg[a] += x as u64;
        self.deg[b] += x as u64;
        self.row_sum[a] += x as u64;
        self.total += x as u64;
        self.next = e + 1;
    }

    fn unassign(&mut self, s: &PhiSearch, e: usize, x: u32) {
        let (a, b) = s.edges[e];
        self.weights[e] = 0;
        self.deg[a] -= x as u64;
        self.deg[b] -= x as u64;
        self.row_sum[a] -= x as u64;
        self.total -= x as u64;
        self.next = e;
    }
}

/// Evaluates one target: `(search, target, node cap, control)`.
///
/// A run cut short by the cap or by the control returns
/// [`Outcome::Stopped`]; once the control has stopped, every later run must
/// stop too.
pub type Runner<'a> =
    dyn FnMut(&PhiSearch, u64, Option<u64>, &mut dyn SearchControl) -> Outcome + 'a;

/// Nodes allowed for each attempt to improve the incumbent.
pub const DIVE_CAP: u64 = 200_000;

/// Forwards to `inner` until `left` nodes are used.
struct Capped<'a> {
    inner: &'a mut dyn SearchControl,
    left: u64,
}

impl SearchControl for Capped<'_> {
    fn tick(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        self.inner.tick()
    }
}

/// First tightens the incumbent with capped searches just below it, then
/// raises the lower bound one target at a time.
///
/// A proven optimum is reported with the witness of the search at exactly
/// that target, so the result does not depend on how it was reached.
pub fn solve_with(
    search: &PhiSearch,
    ctl: &mut dyn SearchControl,
    run: &mut Runner<'_>,
) -> SearchResult {
    let mut incumbent = search.heuristic();
    let mut best = total_weight(&incumbent);
    let mut lower = search.root_bound().min(best);
    let mut found_at = None;
    while lower < best {
        match run(search, best - 1, Some(DIVE_CAP), ctl) {
            Outcome::Found(g) => {
                found_at = Some(best - 1);
                best = total_weight(&g);
                incumbent = g;
            }
            Outcome::Infeasible => lower = best,
            Outcome::Stopped => break,
        }
    }
    while lower < best {
        match run(search, lower, None, ctl) {
            Outcome::Found(g) => {
                found_at = Some(lower);
                best = total_weight(&g);
                incumbent = g;
            }
            Outcome::Infeasible => lower += 1,
            Outcome::Stopped => {
                return SearchResult {
                    value: best,
                    witness: incumbent,
                    status: SearchStatus::BudgetExhausted,
                    lower_bound: lower,
                }
            }
        }
    }
    if found_at.is_some_and(|t| t != best) {
        if let Outcome::Found(g) = run(search, best, None, ctl) {
            incumbent = g;
        }
    }
    SearchResult {
        value: best,
        witness: incumbent,
        status: SearchStatus::ProvenOptimal,
        lower_bound: best,
    }
}

/// Exact values `φ(m, k, w)` for `m = 0..=n`, each used to bound the next.
pub fn phi_table_with(
    n: usize,
    k: usize,
    w: u64,
    options: SearchOptions,
    ctl: &mut dyn SearchControl,
    run: &mut Runner<'_>,
) -> Result<Vec<SearchResult>> {
    check(n, k, w)?;
    let mut smaller: Vec<u64> = Vec::new();
    let mut out = Vec::new();
    for m in 0..=n {
        let result = if m < k {
            SearchResult {
                value: 0,
                witness: WeightedGraph::new(m),
                status: SearchStatus::ProvenOptimal,
                lower_bound: 0,
            }
        } else {
            let search = PhiSearch::new(m, k, w, smaller.clone(), options)?;
            solve_with(&search, ctl, run)
        };
        smaller.push(result.lower_bound);
        out.push(result);
    }
    Ok(out)
}

fn sequential(
    search: &PhiSearch,
    target: u64,
    cap: Option<u64>,
    ctl: &mut dyn SearchControl,
) -> Outcome {
    match cap {
        Some(left) => search.search(target, &[], &mut Capped { inner: ctl, left }),
        None => search.search(target, &[], ctl),
    }
}

/// `φ(n, k, w)` with a witness, or the best bounds found within `budget`.
pub fn phi_exact(n: usize, k: usize, w: u64, budget: Budget) -> Result<SearchResult> {
    phi_exact_with(
        n,
        k,
        w,
        SearchOptions::default(),
        &mut NodeCounter::new(budget),
    )
}

/// [`phi_exact`] with explicit bounds and stopping rule.
pub fn phi_exact_with(
    n: usize,
    k: usize,
    w: u64,
    options: SearchOptions,
    ctl: &mut dyn SearchControl,
) -> Result<SearchResult> {
    let mut table = phi_table_with(n, k, w, options, ctl, &mut sequential)?;
    Ok(table.pop().expect("nonempty table"))
}

/// Checks `φ(n, 3, 1) = C(n, 2) − ⌊n²/4⌋`.
pub fn mantel_relation(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidParameter(alloc::format!(
            "need n >= 3, got {}",
            n
        )));
    }
    let r = phi_exact(n, 3, 1, Budget::default())?;
    let nn = n as u64;
    Ok(r.status == SearchStatus::ProvenOptimal && r.value == binomial(nn, 2) - nn * nn / 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::is_member;

    fn exact(n: usize, k: usize, w: u64) -> u64 {
        let r = phi_exact(n, k, w, Budget::default()).unwrap();
        assert_eq!(r.status, SearchStatus::ProvenOptimal);
        assert!(is_member(&r.witness, k, w).unwrap());
        assert_eq!(total_weight(&r.witness), r.value);
        r.value
    }

    #[test]
    fn small_anchors() {
        assert_eq!(exact(4, 4, 3), 3);
        assert_eq!(exact(5, 4, 3), 5);
        assert_eq!(exact(5, 3, 1), 4);
    }

    #[test]
    fn mantel_small() {
        for n in 3..=6 {
            assert!(mantel_relation(n).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(phi_exact(3, 4, 3, Budget::default()).is_err());
        assert!(phi_exact(3, 0, 3, Budget::default()).is_err());
        assert!(phi_exact(3, 1, 1, Budget::default()).is_err());
        assert_eq!(exact(3, 1, 0), 0);
        assert_eq!(exact(4, 2, 2), 12);
    }

    #[test]
    fn tiny_budget_reports_bounds() {
        let opts = SearchOptions {
            deletion_bound: false,
            degree_bound: false,
        };
        let mut ctl = NodeCounter::new(Budget { nodes: Some(10) });
        let r = phi_exact_with(7, 4, 3, opts, &mut ctl).unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExhausted);
        assert!(r.lower_bound <= 12 && r.value >= 12);
        assert!(is_member(&r.witness, 4, 3).unwrap());
    }

    #[test]
    fn plain_tree_agrees_with_strengthened_bounds() {
        let plain = SearchOptions {
            deletion_bound: false,
            degree_bound: false,
        };
        for (n, k, w) in [(5, 4, 3), (6, 4, 3), (6, 3, 1), (5, 3, 2), (6, 4, 2)] {
            let a =
                phi_exact_with(n, k, w, plain, &mut NodeCounter::new(Budget::default())).unwrap();
            let b = exact(n, k, w);
            assert_eq!(a.status, SearchStatus::ProvenOptimal);
            assert_eq!(a.value, b, "({}, {}, {})", n, k, w);
        }
    }

    #[test]
    fn frontier_covers_the_search() {
        let table = phi_table_with(
            6,
            4,
            3,
            SearchOptions::default(),
            &mut NodeCounter::new(Budget::default()),
            &mut sequential,
        )
        .unwrap();
        let smaller: Vec<u64> = table[..6].iter().map(|r| r.value).collect();
        let s = PhiSearch::new(6, 4, 3, smaller, SearchOptions::default()).unwrap();
        let mut ctl = NodeCounter::new(Budget::default());
        let prefixes = s.frontier(8, 4);
        assert!(!prefixes.is_empty());
        assert!(prefixes
            .iter()
            .any(|p| matches!(s.search(8, p, &mut ctl), Outcome::Found(_))));
        assert!(s
            .frontier(7, 4)
            .iter()
            .all(|p| s.search(7, p, &mut ctl) == Outcome::Infeasible));
    }
}
