//! Branch-and-bound over the orderly generation tree.
//!
//! Nodes are canonical `r`-graphs with the property; a node's candidate
//! list holds the later colex positions that may still be added. Because
//! the property is monotone, a candidate rejected at a node stays rejected
//! in its whole subtree, so lists are inherited and only filtered.
//!
//! The tree is cut at a fixed depth into tasks. Each task starts from the
//! same deterministic lower bound and never sees other tasks' progress, so
//! values, witnesses and node counts do not depend on the worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use super::orderly::{Bits, Layout};
use super::SearchBudget;
use crate::hypercore::{count_cliques_with, EdgeLookup, Hypergraph, VertexSet};
use crate::par;

/// A property of `r`-graphs closed under deleting edges.
pub trait MonotoneProperty: Sync {
    /// Given that `current` has the property, whether `current + added`
    /// still has it.
    fn admits(&self, current: &EdgeView<'_>, added: VertexSet) -> bool;
}

impl<F: Fn(&EdgeView<'_>, VertexSet) -> bool + Sync> MonotoneProperty for F {
    fn admits(&self, current: &EdgeView<'_>, added: VertexSet) -> bool {
        self(current, added)
    }
}

/// Read-only view of a graph under construction.
#[derive(Clone, Copy)]
pub struct EdgeView<'a> {
    layout: &'a Layout,
    bits: Bits,
}

impl<'a> EdgeView<'a> {
    pub(crate) fn new(layout: &'a Layout, bits: Bits) -> Self {
        EdgeView { layout, bits }
    }

    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn r(&self) -> usize {
        self.layout.r
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The same graph with `e` added.
    pub fn with(&self, e: VertexSet) -> EdgeView<'a> {
        EdgeView { layout: self.layout, bits: self.bits | 1 << self.layout.rank(e) }
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        self.layout.to_hypergraph(self.bits)
    }
}

impl EdgeLookup for EdgeView<'_> {
    fn contains(&self, e: VertexSet) -> bool {
        e.len() == self.layout.r && e.max().is_some_and(|m| m < self.layout.n) && self.layout.contains(self.bits, e)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Objective {
    /// Edge count; `deletion` is the exact value on `n - 1` vertices, which
    /// enables the vertex-deletion bound.
    Edges { deletion: Option<u64> },
    /// Number of `K_s^(r)`.
    Cliques { s: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// One witness; prune subtrees that cannot beat the incumbent.
    Single,
    /// Every optimal class; prune subtrees that cannot reach it.
    All,
    /// Every class with the property, no pruning.
    Every,
}

pub(crate) struct Outcome {
    pub value: u64,
    pub witnesses: Vec<Bits>,
    pub nodes: u64,
    pub exhausted: bool,
}

struct Shared {
    nodes: AtomicU64,
    abort: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Shared {
    /// Counts one node; returns `false` once the budget is gone.
    fn tick(&self) -> bool {
        if self.abort.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_time = n.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d);
        if n > self.max_nodes || over_time {
            self.abort.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

pub(crate) struct Engine<'a> {
    pub layout: &'a Layout,
    pub property: &'a dyn MonotoneProperty,
    pub objective: Objective,
    pub mode: Mode,
}

struct Local {
    best: u64,
    witnesses: Vec<Bits>,
    nodes: u64,
}

/// Depth at which the tree is split into tasks.
const SPLIT_DEPTH: u32 = 3;

impl Engine<'_> {
    fn admits(&self, bits: Bits, pos: usize) -> bool {
        self.property.admits(&EdgeView::new(self.layout, bits), self.layout.sets[pos])
    }

    pub fn value(&self, bits: Bits) -> u64 {
        match self.objective {
            Objective::Edges { .. } => u64::from(bits.count_ones()),
            Objective::Cliques { s } => count_cliques_with(self.layout.n, self.layout.r, s, &EdgeView::new(self.layout, bits)),
        }
    }

    /// Optimistic value of any graph between `bits` and `bits + cands`.
    fn bound(&self, bits: Bits, cands: &[u8]) -> u64 {
        match self.objective {
            Objective::Edges { deletion } => {
                let plain = u64::from(bits.count_ones()) + cands.len() as u64;
                let Some(sub) = deletion else { return plain };
                let mut deg = vec![0u64; self.layout.n];
                for e in self.layout.edges(bits).chain(cands.iter().map(|&c| self.layout.sets[c as usize])) {
                    for v in e.iter() {
                        deg[v] += 1;
                    }
                }
                plain.min(sub + deg.into_iter().min().unwrap_or(0))
            }
            Objective::Cliques { .. } => {
                let all = cands.iter().fold(bits, |acc, &c| acc | 1 << c);
                self.value(all)
            }
        }
    }

    fn pruned(&self, bound: u64, best: u64) -> bool {
        match self.mode {
            Mode::Single => bound <= best,
            Mode::All => bound < best,
            Mode::Every => false,
        }
    }

    /// Deterministic greedy fill in colex order.
    pub fn greedy(&self) -> Bits {
        let mut bits: Bits = 0;
        for pos in 0..self.layout.positions() {
            if self.admits(bits, pos) {
                bits |= 1 << pos;
            }
        }
        bits
    }

    fn children(&self, bits: Bits, cands: &[u8], best: u64) -> Vec<(Bits, Vec<u8>)> {
        let mut out = Vec::new();
        for (i, &t) in cands.iter().enumerate() {
            let rest = &cands[i + 1..];
            if let Objective::Edges { .. } = self.objective {
                // the plain bound only shrinks along the list
                if self.pruned(u64::from(bits.count_ones()) + 1 + rest.len() as u64, best) {
                    break;
                }
            }
            let child = bits | 1 << t;
            if !self.layout.is_canonical(child) {
                continue;
            }
            let child_cands: Vec<u8> = rest.iter().copied().filter(|&c| self.admits(child, c as usize)).collect();
            if self.pruned(self.bound(child, &child_cands), best) {
                continue;
            }
            out.push((child, child_cands));
        }
        out
    }

    fn visit(&self, local: &mut Local, bits: Bits) {
        local.nodes += 1;
        let v = self.value(bits);
        match self.mode {
            Mode::Every => local.witnesses.push(bits),
            Mode::Single if v > local.best => {
                local.best = v;
                local.witnesses = vec![bits];
            }
            Mode::All if v > local.best => {
                local.best = v;
                local.witnesses = vec![bits];
            }
            Mode::All if v == local.best => local.witnesses.push(bits),
            _ => {}
        }
    }

    fn dfs(&self, shared: &Shared, local: &mut Local, bits: Bits, cands: &[u8]) {
        if !shared.tick() {
            return;
        }
        self.visit(local, bits);
        for (child, child_cands) in self.children(bits, cands, local.best) {
            self.dfs(shared, local, child, &child_cands);
        }
    }

    /// Runs the search. `lower` is a value known to be attained, with its
    /// witness; in single-witness mode it is returned if nothing beats it.
    pub fn run(&self, budget: &SearchBudget, lower: Option<(u64, Bits)>) -> Outcome {
        let shared = Shared {
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| Instant::now() + d),
        };
        let floor = match (self.mode, lower) {
            (Mode::Every, _) | (_, None) => 0,
            (_, Some((v, _))) => v,
        };
        let root_cands: Vec<u8> = (0..self.layout.positions()).filter(|&p| self.admits(0, p)).map(|p| p as u8).collect();

        // sequential prefix: visit shallow nodes, collect the split frontier
        let mut prefix = Local { best: floor, witnesses: Vec::new(), nodes: 0 };
        let mut tasks: Vec<(Bits, Vec<u8>)> = Vec::new();
        let mut stack = vec![(0 as Bits, root_cands)];
        while let Some((bits, cands)) = stack.pop() {
            if bits.count_ones() == SPLIT_DEPTH {
                tasks.push((bits, cands));
                continue;
            }
            if !shared.tick() {
                break;
            }
            self.visit(&mut prefix, bits);
            let kids = self.children(bits, &cands, floor);
            stack.extend(kids.into_iter().rev());
        }

        let results = par::map_ordered(&tasks, budget.workers, |(bits, cands)| {
            let mut local = Local { best: floor, witnesses: Vec::new(), nodes: 0 };
            if !self.pruned(self.bound(*bits, cands), floor) {
                self.dfs(&shared, &mut local, *bits, cands);
            }
            local
        });

        let exhausted = !shared.abort.load(Ordering::Relaxed);
        let mut nodes = prefix.nodes;
        let mut value = prefix.best;
        for r in &results {
            nodes += r.nodes;
            value = value.max(r.best);
        }
        let mut witnesses = Vec::new();
        for part in std::iter::once(&prefix).chain(&results) {
            if part.best == value || self.mode == Mode::Every {
                witnesses.extend(part.witnesses.iter().copied());
            }
            if self.mode == Mode::Single && !witnesses.is_empty() {
                break;
            }
        }
        if witnesses.is_empty() && self.mode == Mode::Single {
            if let Some((v, w)) = lower {
                debug_assert_eq!(v, value);
                witnesses.push(w);
            }
        }
        Outcome { value, witnesses, nodes, exhausted }
    }
}
