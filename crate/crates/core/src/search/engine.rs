//! Depth-first search over coefficient vectors of a cycle basis.
//!
//! Every flow of the host is `base + sum_j c_j * row_j` with `c_j` in Z2×Z2.
//! The rows are brought into reduced echelon form with respect to an edge
//! order, so that:
//!
//! * row `j` is the only row containing its pivot `p_j`, hence choosing `c_j`
//!   is the same as choosing the final value on `p_j`;
//! * an edge is settled once the last row containing it has been decided,
//!   which is where constraint checks and objective terms are applied;
//! * with the identity order, two distinct flows first differ on a pivot, so
//!   trying pivot values in ascending order visits leaves lexicographically.
//!
//! Subtrees are keyed by the values still open on the frontier (edges touched
//! by undecided rows); a key whose subtree failed under remaining budget `r`
//! prunes every later visit with remaining budget at most `r`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bits::EdgeSet;
use crate::flow::{Z2Z2Flow, Z2Z2};

const MEMO_CAP: usize = 1 << 21;

/// Constraints and objective over the edges of one host graph.
#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub base: Z2Z2Flow,
    pub rows: Vec<EdgeSet>,
    /// Bit `code` set iff that value is allowed on the edge.
    pub allowed: Vec<u8>,
    pub target: Z2Z2,
    /// Objective contribution of each edge when it ends up equal to `target`.
    pub cost: Vec<u64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Plan {
    rows: Vec<EdgeSet>,
    pivots: Vec<usize>,
    /// `settled[0]`: edges in no row; `settled[j + 1]`: edges whose last row is `j`.
    settled: Vec<Vec<usize>>,
    /// `frontier[j]`: union of rows `j..`.
    frontier: Vec<EdgeSet>,
}

impl Plan {
    pub fn new(rows: &[EdgeSet], order: &[usize], edge_count: usize) -> Plan {
        let mut rows: Vec<EdgeSet> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for &col in order {
            if rank == rows.len() {
                break;
            }
            let Some(r) = (rank..rows.len()).find(|&r| rows[r].contains(col)) else {
                continue;
            };
            rows.swap(rank, r);
            let pivot_row = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row.contains(col) {
                    row.xor_with(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);

        let mut last: Vec<Option<usize>> = vec![None; edge_count];
        for (j, row) in rows.iter().enumerate() {
            for e in row.iter() {
                last[e] = Some(j);
            }
        }
        let mut settled = vec![Vec::new(); rows.len() + 1];
        for e in 0..edge_count {
            settled[last[e].map_or(0, |j| j + 1)].push(e);
        }
        let mut frontier = vec![EdgeSet::new(edge_count); rows.len() + 1];
        for j in (0..rows.len()).rev() {
            frontier[j] = frontier[j + 1].or(&rows[j]);
        }
        Plan {
            rows,
            pivots,
            settled,
            frontier,
        }
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Goal {
    /// Keep lowering the limit after each leaf; report the best value.
    Minimize,
    /// Stop at the first leaf in DFS order with cost within the limit.
    FirstLeaf,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub best: Option<(u64, Z2Z2Flow)>,
    pub nodes: u64,
}

struct Worker<'a> {
    problem: &'a Problem,
    plan: &'a Plan,
    goal: Goal,
    /// Largest admissible cost; `u64::MAX` in the shared cell means "stop".
    limit: &'a AtomicU64,
    g: Z2Z2Flow,
    memo: HashMap<(usize, Vec<u64>), u64>,
    nodes: u64,
    best: Option<(u64, Z2Z2Flow)>,
}

const STOP: u64 = u64::MAX;

impl<'a> Worker<'a> {
    fn new(problem: &'a Problem, plan: &'a Plan, goal: Goal, limit: &'a AtomicU64) -> Self {
        Worker {
            problem,
            plan,
            goal,
            limit,
            g: problem.base.clone(),
            memo: HashMap::new(),
            nodes: 0,
            best: None,
        }
    }

    fn current_limit(&self) -> Option<u64> {
        match self.limit.load(Ordering::Relaxed) {
            STOP => None,
            l => Some(l),
        }
    }

    fn apply(&mut self, j: usize, c: Z2Z2) {
        if !c.is_zero() {
            let row = &self.plan.rows[j];
            self.g.add_on(row, c);
        }
    }

    /// Objective added by the edges settled at `stage`, or `None` if one is disallowed.
    fn settle(&self, stage: usize) -> Option<u64> {
        let mut add = 0;
        for &e in &self.plan.settled[stage] {
            let v = self.g.get(e);
            if self.problem.allowed[e] >> v.code() & 1 == 0 {
                return None;
            }
            if v == self.problem.target {
                add += self.problem.cost[e];
            }
        }
        Some(add)
    }

    fn key(&self, j: usize) -> (usize, Vec<u64>) {
        let f = &self.plan.frontier[j];
        let mut words = Vec::with_capacity(2 * f.words().len());
        for (a, m) in self.g.coordinate1().words().iter().zip(f.words()) {
            words.push(a & m);
        }
        for (a, m) in self.g.coordinate2().words().iter().zip(f.words()) {
            words.push(a & m);
        }
        (j, words)
    }

    fn leaf(&mut self, cost: u64) {
        match self.goal {
            Goal::FirstLeaf => {
                self.best = Some((cost, self.g.clone()));
            }
            Goal::Minimize => {
                if self.best.as_ref().map_or(true, |(b, _)| cost < *b) {
                    self.best = Some((cost, self.g.clone()));
                }
                // only strictly better leaves are of interest from here on
                let next = if cost == 0 { STOP } else { cost - 1 };
                self.limit.fetch_min(next, Ordering::Relaxed);
            }
        }
    }

    /// Explores rows `j..`; returns true if a leaf was recorded in this subtree.
    fn dfs(&mut self, j: usize, lb: u64) -> bool {
        self.nodes += 1;
        let Some(limit) = self.current_limit() else {
            return false;
        };
        if lb > limit {
            return false;
        }
        if j == self.plan.depth() {
            self.leaf(lb);
            return true;
        }
        let memo_key = (j > 0).then(|| self.key(j));
        if let Some(key) = &memo_key {
            if let Some(&failed) = self.memo.get(key) {
                if limit - lb <= failed {
                    return false;
                }
            }
        }

        let pivot = self.plan.pivots[j];
        let current = self.g.get(pivot);
        let mut found = false;
        for v in Z2Z2::ALL {
            if self.problem.allowed[pivot] >> v.code() & 1 == 0 {
                continue;
            }
            let c = v + current;
            self.apply(j, c);
            if let Some(add) = self.settle(j + 1) {
                found |= self.dfs(j + 1, lb + add);
            }
            self.apply(j, c);
            if found && self.goal == Goal::FirstLeaf {
                return true;
            }
        }

        if !found {
            if let (Some(key), Some(limit)) = (memo_key, self.current_limit()) {
                if limit >= lb && self.memo.len() < MEMO_CAP {
                    let r = limit - lb;
                    let slot = self.memo.entry(key).or_insert(r);
                    *slot = (*slot).max(r);
                }
            }
        }
        found
    }
}

/// Prefixes of the first `k` rows that survive the settle checks, in DFS order.
fn prefixes(problem: &Problem, plan: &Plan, k: usize, lb0: u64) -> Vec<(Vec<Z2Z2>, u64)> {
    let dummy = AtomicU64::new(0);
    let mut w = Worker::new(problem, plan, Goal::FirstLeaf, &dummy);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(
        w: &mut Worker<'_>,
        j: usize,
        k: usize,
        lb: u64,
        stack: &mut Vec<Z2Z2>,
        out: &mut Vec<(Vec<Z2Z2>, u64)>,
    ) {
        if j == k {
            out.push((stack.clone(), lb));
            return;
        }
        let pivot = w.plan.pivots[j];
        let current = w.g.get(pivot);
        for v in Z2Z2::ALL {
            if w.problem.allowed[pivot] >> v.code() & 1 == 0 {
                continue;
            }
            let c = v + current;
            w.apply(j, c);
            if let Some(add) = w.settle(j + 1) {
                stack.push(c);
                rec(w, j + 1, k, lb + add, stack, out);
                stack.pop();
            }
            w.apply(j, c);
        }
    }
    rec(&mut w, 0, k, lb0, &mut stack, &mut out);
    out
}

/// Runs the search with at most `limit` as admissible cost.
///
/// `jobs <= 1` runs on the calling thread; otherwise the first few rows are
/// split into prefixes processed on the current rayon pool. Results do not
/// depend on scheduling: minimization shares only the limit, and first-leaf
/// mode keeps the earliest prefix that succeeds.
pub(crate) fn run(problem: &Problem, plan: &Plan, goal: Goal, limit: u64, jobs: usize) -> Outcome {
    let cell = AtomicU64::new(limit);
    let mut root = Worker::new(problem, plan, goal, &cell);
    root.nodes = 1;
    let Some(lb0) = root.settle(0) else {
        return Outcome { best: None, nodes: 1 };
    };

    let split = if jobs <= 1 { 0 } else { split_depth(plan.depth(), jobs) };
    if split == 0 {
        root.nodes = 0;
        root.dfs(0, lb0);
        return Outcome {
            best: root.best,
            nodes: root.nodes,
        };
    }

    let tasks = prefixes(problem, plan, split, lb0);
    let earliest = AtomicUsize::new(usize::MAX);
    let results: Vec<(Option<(u64, Z2Z2Flow)>, u64)> = tasks
        .par_iter()
        .enumerate()
        .map(|(i, (prefix, lb))| {
            if goal == Goal::FirstLeaf && earliest.load(Ordering::Relaxed) < i {
                return (None, 0);
            }
            let mut w = Worker::new(problem, plan, goal, &cell);
            for (j, &c) in prefix.iter().enumerate() {
                w.apply(j, c);
            }
            let found = w.dfs(split, *lb);
            if found && goal == Goal::FirstLeaf {
                earliest.fetch_min(i, Ordering::Relaxed);
            }
            (w.best, w.nodes)
        })
        .collect();

    let nodes = 1 + results.iter().map(|(_, n)| n).sum::<u64>();
    let best = match goal {
        Goal::FirstLeaf => results.into_iter().find_map(|(b, _)| b),
        Goal::Minimize => results
            .into_iter()
            .filter_map(|(b, _)| b)
            .min_by(|(a, fa), (b, fb)| a.cmp(b).then_with(|| fa.lex_cmp(fb))),
    };
    Outcome { best, nodes }
}

fn split_depth(depth: usize, jobs: usize) -> usize {
    let mut k = 0;
    while k < depth && 4usize.pow(k as u32) < 8 * jobs {
        k += 1;
    }
    k
}
