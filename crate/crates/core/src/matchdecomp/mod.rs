//! Bipartite matchings, the matching partition certificate and the
//! red-blue reduction built on it.

mod partition;
mod reduction;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use partition::{audit_exhaustive, audit_random, check_partition, matching_partition, AuditReport, InvariantReport, MatchingPartition, PartitionError};
pub use reduction::{g_value, incidence_bipartite, redblue_reduction, IncidenceBipartite, ReductionReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("A-vertex {a} has neighbor {b} outside 0..{size_b}")]
    NeighborOutOfRange { a: usize, b: usize, size_b: usize },
}

/// Bipartite graph with parts `A = 0..size_a` and `B = 0..size_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    size_a: usize,
    size_b: usize,
    /// Sorted, deduplicated B-neighbors of each A-vertex.
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(size_b: usize, mut adj: Vec<Vec<usize>>) -> Result<Self, BipartiteError> {
        for (a, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&b) = list.iter().find(|&&b| b >= size_b) {
                return Err(BipartiteError::NeighborOutOfRange { a, b, size_b });
            }
        }
        Ok(BipartiteGraph { size_a: adj.len(), size_b, adj })
    }

    pub fn from_edges(size_a: usize, size_b: usize, edges: &[(usize, usize)]) -> Result<Self, BipartiteError> {
        let mut adj = vec![Vec::new(); size_a];
        for &(a, b) in edges {
            adj[a].push(b);
        }
        Self::new(size_b, adj)
    }

    pub fn size_a(&self) -> usize {
        self.size_a
    }

    pub fn size_b(&self) -> usize {
        self.size_b
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Each of the `size_a * size_b` pairs is an edge with probability
    /// `density`.
    pub fn random<R: Rng>(rng: &mut R, size_a: usize, size_b: usize, density: f64) -> Self {
        let adj = (0..size_a).map(|_| (0..size_b).filter(|_| rng.gen_bool(density)).collect()).collect();
        BipartiteGraph { size_a, size_b, adj }
    }
}

/// A matching stored as mate arrays on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate_a: Vec<Option<usize>>,
    mate_b: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(size_a: usize, size_b: usize) -> Self {
        Matching { mate_a: vec![None; size_a], mate_b: vec![None; size_b] }
    }

    /// Builds a matching from pairs, rejecting repeated vertices and
    /// non-edges.
    pub fn from_pairs(g: &BipartiteGraph, pairs: &[(usize, usize)]) -> Option<Self> {
        let mut m = Matching::empty(g.size_a, g.size_b);
        for &(a, b) in pairs {
            if a >= g.size_a || b >= g.size_b || !g.has_edge(a, b) || m.mate_a[a].is_some() || m.mate_b[b].is_some() {
                return None;
            }
            m.mate_a[a] = Some(b);
            m.mate_b[b] = Some(a);
        }
        Some(m)
    }

    /// Pairs `(a, b)` in increasing order of `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_a.iter().enumerate().filter_map(|(a, &b)| b.map(|b| (a, b))).collect()
    }

    pub fn len(&self) -> usize {
        self.mate_a.iter().filter(|m| m.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mate_of_a(&self, a: usize) -> Option<usize> {
        self.mate_a[a]
    }

    pub fn mate_of_b(&self, b: usize) -> Option<usize> {
        self.mate_b[b]
    }

    fn set(&mut self, a: usize, b: usize) {
        self.mate_a[a] = Some(b);
        self.mate_b[b] = Some(a);
    }

    /// Whether every pair is an edge of `g` and the mate arrays agree.
    pub fn is_valid_in(&self, g: &BipartiteGraph) -> bool {
        self.mate_a.len() == g.size_a
            && self.mate_b.len() == g.size_b
            && self.mate_a.iter().enumerate().all(|(a, &b)| b.is_none_or(|b| g.has_edge(a, b) && self.mate_b[b] == Some(a)))
            && self.mate_b.iter().enumerate().all(|(b, &a)| a.is_none_or(|a| self.mate_a[a] == Some(b)))
    }
}

/// Kuhn's augmenting-path step from `a`, trying neighbors in order.
fn try_augment(g: &BipartiteGraph, m: &mut Matching, a: usize, seen: &mut [bool], allowed_b: &dyn Fn(usize) -> bool) -> bool {
    for &b in &g.adj[a] {
        if seen[b] || !allowed_b(b) {
            continue;
        }
        seen[b] = true;
        if m.mate_b[b].is_none_or(|a2| try_augment(g, m, a2, seen, allowed_b)) {
            m.set(a, b);
            return true;
        }
    }
    false
}

/// Maximum matching by repeated augmenting-path search; deterministic.
pub fn maximum_matching(g: &BipartiteGraph) -> Matching {
    let mut m = Matching::empty(g.size_a, g.size_b);
    for a in 0..g.size_a {
        let mut seen = vec![false; g.size_b];
        try_augment(g, &mut m, a, &mut seen, &|_| true);
    }
    debug_assert!(!has_augmenting_path(g, &m));
    m
}

/// Whether an alternating path joins an unmatched A-vertex to an unmatched
/// B-vertex (so `m` is not maximum, by Berge's theorem).
pub fn has_augmenting_path(g: &BipartiteGraph, m: &Matching) -> bool {
    let mut seen_a = vec![false; g.size_a];
    let mut stack: Vec<usize> = (0..g.size_a).filter(|&a| m.mate_a[a].is_none()).collect();
    for &a in &stack {
        seen_a[a] = true;
    }
    while let Some(a) = stack.pop() {
        for &b in &g.adj[a] {
            if m.mate_a[a] == Some(b) {
                continue;
            }
            match m.mate_b[b] {
                None => return true,
                Some(a2) if !seen_a[a2] => {
                    seen_a[a2] = true;
                    stack.push(a2);
                }
                _ => {}
            }
        }
    }
    false
}
