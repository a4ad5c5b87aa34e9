//! Code distance by syndrome matching.
//!
//! A search starts from one of the six single-Pauli errors on the two edges
//! leaving the origin. At every step the first violated vertex (in `(x, y)`
//! order) is selected and the search branches over every single Pauli, on
//! an edge not yet used by the operator, that flips that vertex. When the
//! syndrome empties the operator is logical; it is reported unless it lies
//! in the stabilizer group. Budgets are raised one weight at a time, so the
//! first operator reported has minimum weight.
//!
//! Every minimum-weight nontrivial logical `O` is reached: translate it so
//! one of its factors sits at the origin, and at each step some factor of
//! `O` not yet placed must flip the selected vertex. A proper subset of `O`
//! never has an empty syndrome, since either it or its complement would be
//! a lighter nontrivial logical.
//!
//! The work at each budget is split into tasks, one per first-level branch,
//! that can run independently; [`DistanceSearch::run_task`] is the unit a
//! parallel driver hands to its workers.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use crate::codes::CodeFamily;
use crate::laurent::Monomial;
use crate::pauli::{EdgeKind, Pauli, PauliVec, Site};
use crate::symplectic::SymplecticMap;
use crate::syndrome::commutes_with_all_logicals;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum DistanceResult {
    /// Minimum weight of a logical outside the stabilizer group, with one.
    Exact { d: usize, witness: PauliVec },
    /// Every weight up to and including `greater_than` was searched without
    /// finding a nontrivial logical. `budget_exhausted` marks a search cut
    /// short by a node or time cap before reaching the requested weight.
    LowerBound { greater_than: usize, budget_exhausted: bool },
}

impl DistanceResult {
    pub fn exact(&self) -> Option<usize> {
        match self {
            DistanceResult::Exact { d, .. } => Some(*d),
            DistanceResult::LowerBound { .. } => None,
        }
    }

    /// Largest `n` with `d > n` established.
    pub fn proven_greater_than(&self) -> usize {
        match self {
            DistanceResult::Exact { d, .. } => d - 1,
            DistanceResult::LowerBound { greater_than, .. } => *greater_than,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Abort once this many nodes were expanded in total.
    pub max_nodes: Option<u64>,
    /// Stop inserting into the per-level visited set beyond this size.
    pub memo_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: None, memo_cap: 1 << 22 }
    }
}

/// Shared, thread-safe bookkeeping for one search level.
#[derive(Debug)]
pub struct SearchControl {
    /// Index of the lowest task that found a witness so far; tasks with a
    /// higher index may stop.
    pub best_task: AtomicUsize,
    pub nodes: AtomicU64,
    pub max_nodes: Option<u64>,
    /// Set from outside (e.g. a wall-clock watchdog) to abort every task.
    pub cancelled: core::sync::atomic::AtomicBool,
}

impl SearchControl {
    pub fn new(max_nodes: Option<u64>) -> Self {
        SearchControl {
            best_task: AtomicUsize::new(usize::MAX),
            nodes: AtomicU64::new(0),
            max_nodes,
            cancelled: core::sync::atomic::AtomicBool::new(false),
        }
    }

    pub fn reset_level(&self) {
        self.best_task.store(usize::MAX, Ordering::SeqCst);
    }

    pub fn cancel(&self) {
        self.cancelled.store(true, Ordering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.cancelled.load(Ordering::Relaxed)
    }

    fn over_budget(&self) -> bool {
        self.is_cancelled()
            || self.max_nodes.is_some_and(|cap| self.nodes.load(Ordering::Relaxed) >= cap)
    }

    /// Records a witness in `task`; keeps the lowest index.
    pub fn offer(&self, task: usize) {
        self.best_task.fetch_min(task, Ordering::SeqCst);
    }
}

/// Result of one task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskOutcome {
    Found(PauliVec),
    Exhausted,
    /// A lower-indexed task already found a witness.
    Superseded,
    /// Node cap or cancellation.
    Aborted,
}

/// A partial operator and its syndrome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    sites: Vec<Site>,
    syndrome: Vec<Monomial>,
}

impl Node {
    pub fn weight(&self) -> usize {
        self.sites.len()
    }

    pub fn operator(&self) -> PauliVec {
        PauliVec::from_sites(self.sites.iter().copied())
    }

    pub fn syndrome(&self) -> &[Monomial] {
        &self.syndrome
    }
}

/// One first-level branch at a given budget.
#[derive(Clone, Debug)]
pub struct Task {
    pub index: usize,
    pub root: Node,
}

#[derive(Clone, Debug)]
pub struct DistanceSearch {
    code: CodeFamily,
    // syndrome offsets of a single Pauli at the origin, per edge kind and Pauli
    offsets: [[Vec<Monomial>; 3]; 2],
    max_flip: usize,
}

/// Running totals reported by a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub levels_completed: usize,
}

impl DistanceSearch {
    pub fn new(code: &CodeFamily) -> Self {
        let mut offsets: [[Vec<Monomial>; 3]; 2] = Default::default();
        let mut max_flip = 0;
        for e in EdgeKind::ALL {
            for (k, p) in Pauli::ALL.into_iter().enumerate() {
                let s = code.stabilizer.dot(&PauliVec::single(e, p, 0, 0));
                max_flip = max_flip.max(s.len());
                offsets[e.index()][k] = s.terms().to_vec();
            }
        }
        DistanceSearch { code: code.clone(), offsets, max_flip }
    }

    pub fn code(&self) -> &CodeFamily {
        &self.code
    }

    fn offsets(&self, edge: EdgeKind, pauli: Pauli) -> &[Monomial] {
        &self.offsets[edge.index()][pauli as usize]
    }

    fn push(&self, node: &Node, site: Site) -> Node {
        let mut sites = node.sites.clone();
        sites.push(site);
        let shifted = self.offsets(site.edge, site.pauli).iter().map(|o| o.times(site.at));
        Node { sites, syndrome: xor_sorted(&node.syndrome, shifted) }
    }

    /// The six single-Pauli errors on the edges leaving the origin.
    pub fn seeds(&self) -> Vec<Node> {
        let empty = Node { sites: Vec::new(), syndrome: Vec::new() };
        let mut out = Vec::with_capacity(6);
        for edge in EdgeKind::ALL {
            for pauli in Pauli::ALL {
                out.push(self.push(&empty, Site { at: Monomial::ONE, edge, pauli }));
            }
        }
        out
    }

    /// Children of `node`: single Paulis on unused edges that flip the first
    /// syndrome vertex.
    pub fn children(&self, node: &Node) -> Vec<Node> {
        let Some(&v) = node.syndrome.first() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for edge in EdgeKind::ALL {
            for pauli in Pauli::ALL {
                for o in self.offsets(edge, pauli) {
                    let at = v.times(o.inverse());
                    if node.sites.iter().any(|s| s.at == at && s.edge == edge) {
                        continue;
                    }
                    out.push(self.push(node, Site { at, edge, pauli }));
                }
            }
        }
        out
    }

    /// Tasks for a search with the given weight budget, in canonical order.
    pub fn tasks(&self, budget: usize) -> Vec<Task> {
        let mut roots = Vec::new();
        for seed in self.seeds() {
            if budget <= 1 || seed.syndrome.is_empty() {
                roots.push(seed);
            } else {
                roots.extend(self.children(&seed));
            }
        }
        roots.into_iter().enumerate().map(|(index, root)| Task { index, root }).collect()
    }

    fn is_witness(&self, node: &Node) -> bool {
        node.syndrome.is_empty() && !commutes_with_all_logicals(&node.operator(), &self.code)
    }

    /// Depth-first search below `task.root` for a nontrivial logical of
    /// weight at most `budget`.
    pub fn run_task(&self, task: &Task, budget: usize, control: &SearchControl, memo: &mut Memo) -> TaskOutcome {
        if control.over_budget() {
            return TaskOutcome::Aborted;
        }
        let mut local_nodes = 0u64;
        let outcome = self.dfs(&task.root, task.index, budget, control, memo, &mut local_nodes);
        control.nodes.fetch_add(local_nodes, Ordering::Relaxed);
        if let TaskOutcome::Found(_) = outcome {
            control.offer(task.index);
        }
        outcome
    }

    fn dfs(
        &self,
        node: &Node,
        task: usize,
        budget: usize,
        control: &SearchControl,
        memo: &mut Memo,
        local_nodes: &mut u64,
    ) -> TaskOutcome {
        *local_nodes += 1;
        if *local_nodes & 0x3ff == 0 {
            control.nodes.fetch_add(*local_nodes, Ordering::Relaxed);
            *local_nodes = 0;
            if control.over_budget() {
                return TaskOutcome::Aborted;
            }
            if control.best_task.load(Ordering::Relaxed) < task {
                return TaskOutcome::Superseded;
            }
        }
        if node.syndrome.is_empty() {
            return if self.is_witness(node) { TaskOutcome::Found(node.operator()) } else { TaskOutcome::Exhausted };
        }
        let remaining = budget - node.weight();
        // each added Pauli clears at most max_flip vertices
        if remaining == 0 || node.syndrome.len() > remaining * self.max_flip {
            return TaskOutcome::Exhausted;
        }
        if !memo.insert(&node.sites) {
            return TaskOutcome::Exhausted;
        }
        for child in self.children(node) {
            if remaining == 1 && !child.syndrome.is_empty() {
                continue;
            }
            match self.dfs(&child, task, budget, control, memo, local_nodes) {
                TaskOutcome::Exhausted => {}
                other => return other,
            }
        }
        TaskOutcome::Exhausted
    }

    /// Sequential search for weights `1..=max_weight`.
    pub fn code_distance(&self, max_weight: usize, limits: SearchLimits) -> (DistanceResult, SearchStats) {
        let control = SearchControl::new(limits.max_nodes);
        let mut stats = SearchStats::default();
        for budget in 1..=max_weight {
            control.reset_level();
            let mut memo = Memo::new(limits.memo_cap);
            for task in self.tasks(budget) {
                match self.run_task(&task, budget, &control, &mut memo) {
                    TaskOutcome::Found(witness) => {
                        stats.nodes = control.nodes.load(Ordering::Relaxed);
                        return (DistanceResult::Exact { d: witness.weight(), witness }, stats);
                    }
                    TaskOutcome::Aborted => {
                        stats.nodes = control.nodes.load(Ordering::Relaxed);
                        let result = DistanceResult::LowerBound {
                            greater_than: budget - 1,
                            budget_exhausted: true,
                        };
                        return (result, stats);
                    }
                    TaskOutcome::Exhausted | TaskOutcome::Superseded => {}
                }
            }
            stats.levels_completed = budget;
        }
        stats.nodes = control.nodes.load(Ordering::Relaxed);
        (DistanceResult::LowerBound { greater_than: max_weight, budget_exhausted: false }, stats)
    }
}

/// Sequential distance computation with default limits.
pub fn code_distance(code: &CodeFamily, max_weight: usize) -> DistanceResult {
    DistanceSearch::new(code).code_distance(max_weight, SearchLimits::default()).0
}

/// Outcome of checking a claimed distance.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClaimCheck {
    pub factors: Vec<u8>,
    pub claimed: usize,
    pub result: DistanceResult,
    pub matches: bool,
}

/// Runs the search with budget `claimed + 1` for each `(factors, claimed)`.
pub fn verify_distance_claims(table: &[(Vec<u8>, usize)], limits: SearchLimits) -> Vec<ClaimCheck> {
    table
        .iter()
        .map(|(factors, claimed)| {
            let map = SymplecticMap::product_of(factors).expect("factor indices in 1..=16");
            let code = CodeFamily::build(&map).expect("products of elementaries are automorphisms");
            let (result, _) = DistanceSearch::new(&code).code_distance(claimed + 1, limits);
            let matches = result.exact() == Some(*claimed);
            ClaimCheck { factors: factors.clone(), claimed: *claimed, result, matches }
        })
        .collect()
}

/// Visited set keyed by operators up to translation.
#[derive(Debug, Default)]
pub struct Memo {
    seen: BTreeSet<Vec<u64>>,
    cap: usize,
}

impl Memo {
    pub fn new(cap: usize) -> Self {
        Memo { seen: BTreeSet::new(), cap }
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }

    /// False if an equivalent operator was already recorded.
    fn insert(&mut self, sites: &[Site]) -> bool {
        if self.cap == 0 {
            return true;
        }
        let key = canonical_key(sites);
        if self.seen.contains(&key) {
            return false;
        }
        if self.seen.len() < self.cap {
            self.seen.insert(key);
        }
        true
    }
}

/// Sorted packed sites after moving the smallest one to the origin.
fn canonical_key(sites: &[Site]) -> Vec<u64> {
    let anchor = sites.iter().map(|s| s.at).min().unwrap_or(Monomial::ONE);
    let mut key: Vec<u64> = sites
        .iter()
        .map(|s| {
            let i = (s.at.i - anchor.i) as i64 + (1 << 20);
            let j = (s.at.j - anchor.j) as i64 + (1 << 20);
            ((i as u64) << 24) | ((j as u64) << 3) | ((s.edge.index() as u64) << 2) | s.pauli as u64
        })
        .collect();
    key.sort_unstable();
    key
}

fn xor_sorted(base: &[Monomial], flips: impl Iterator<Item = Monomial>) -> Vec<Monomial> {
    let mut flips: Vec<Monomial> = flips.collect();
    flips.sort_unstable();
    let mut out = Vec::with_capacity(base.len() + flips.len());
    let (mut i, mut j) = (0, 0);
    while i < base.len() && j < flips.len() {
        match base[i].cmp(&flips[j]) {
            core::cmp::Ordering::Less => {
                out.push(base[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(flips[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&base[i..]);
    out.extend_from_slice(&flips[j..]);
    out
}
