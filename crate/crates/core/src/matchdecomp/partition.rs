//! The matching partition: a maximum matching `M` together with a split
//! `A = A1 + A2`, `B' = B1 + B2` (`B'` the matched B-vertices) such that
//! `M` matches `A1` perfectly onto `B1`, every neighbor of `A2` lies in
//! `B2`, and every `A1`-vertex has an unmatched neighbor.
//!
//! Construction: take any maximum matching and let `Z` be the vertices
//! reachable by alternating paths from unmatched B-vertices; `A1 = A ∩ Z`
//! satisfies everything except possibly the last clause. That clause only
//! involves the subgraph between `X = A ∩ Z` and `Y = B ∩ Z`, where a
//! certificate is an `X`-saturating matching leaving, for every `x`, some
//! neighbor in `Y` free. It is sought first by rotating alternating paths
//! and then by an exact search over the set of free `Y`-vertices. The
//! exact search can prove that no certificate exists: the path
//! `y0 x0 y1 x1 y2 x2 y3` is the smallest such graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{has_augmenting_path, maximum_matching, try_augment, BipartiteGraph, Matching};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingPartition {
    #[serde(rename = "M")]
    pub matching: Vec<(usize, usize)>,
    #[serde(rename = "A1")]
    pub a1: Vec<usize>,
    #[serde(rename = "A2")]
    pub a2: Vec<usize>,
    #[serde(rename = "B1")]
    pub b1: Vec<usize>,
    #[serde(rename = "B2")]
    pub b2: Vec<usize>,
    #[serde(rename = "Bprime")]
    pub bprime: Vec<usize>,
}

/// Outcome of each of the five defining conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub maximum: bool,
    pub parts: bool,
    pub perfect_on_a1: bool,
    pub a2_neighbors_in_b2: bool,
    pub a1_free_neighbor: bool,
}

impl InvariantReport {
    pub fn all(&self) -> bool {
        self.structural() && self.a1_free_neighbor
    }

    /// The four conditions that do not involve unmatched neighbors.
    pub fn structural(&self) -> bool {
        self.maximum && self.parts && self.perfect_on_a1 && self.a2_neighbors_in_b2
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    /// Proven: no maximum matching admits the free-neighbor clause. The
    /// partial certificate satisfies the other four conditions.
    #[error("no matching partition exists; A-vertices {stuck:?} never get a free neighbor (partial certificate: {partial:?})")]
    NoCertificate { partial: MatchingPartition, stuck: Vec<usize> },
    #[error("matching partition search gave up after {nodes} nodes (partial certificate: {partial:?})")]
    Unresolved { partial: MatchingPartition, nodes: u64 },
}

impl PartitionError {
    pub fn partial(&self) -> &MatchingPartition {
        match self {
            PartitionError::NoCertificate { partial, .. } | PartitionError::Unresolved { partial, .. } => partial,
        }
    }
}

/// Node cap for the exact search.
const EXACT_NODE_LIMIT: u64 = 1 << 20;

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

pub fn check_partition(g: &BipartiteGraph, p: &MatchingPartition) -> InvariantReport {
    let Some(m) = Matching::from_pairs(g, &p.matching) else {
        return InvariantReport { maximum: false, parts: false, perfect_on_a1: false, a2_neighbors_in_b2: false, a1_free_neighbor: false };
    };
    let maximum = !has_augmenting_path(g, &m);
    let bprime: Vec<usize> = (0..g.size_b()).filter(|&b| m.mate_of_b(b).is_some()).collect();
    let disjoint_cover = |x: &[usize], y: &[usize], all: &[usize]| {
        let mut u: Vec<usize> = x.iter().chain(y).copied().collect();
        u.sort_unstable();
        let len = u.len();
        u.dedup();
        u.len() == len && u == all
    };
    let all_a: Vec<usize> = (0..g.size_a()).collect();
    let parts = p.bprime == bprime && disjoint_cover(&p.a1, &p.a2, &all_a) && disjoint_cover(&p.b1, &p.b2, &bprime);
    let mut images: Vec<usize> = p.a1.iter().filter_map(|&a| m.mate_of_a(a)).collect();
    images.sort_unstable();
    let perfect_on_a1 = images.len() == p.a1.len() && images == sorted(p.b1.clone());
    let a2_neighbors_in_b2 = p.a2.iter().all(|&a| g.neighbors(a).iter().all(|b| p.b2.contains(b)));
    let a1_free_neighbor = p.a1.iter().all(|&a| g.neighbors(a).iter().any(|&b| m.mate_of_b(b).is_none()));
    InvariantReport { maximum, parts, perfect_on_a1, a2_neighbors_in_b2, a1_free_neighbor }
}

fn b_adjacency(g: &BipartiteGraph) -> Vec<Vec<usize>> {
    let mut badj = vec![Vec::new(); g.size_b()];
    for a in 0..g.size_a() {
        for &b in g.neighbors(a) {
            badj[b].push(a);
        }
    }
    badj
}

/// Alternating reachability from unmatched B-vertices: returns
/// `(in_z_a, in_z_b)`.
fn reachable(g: &BipartiteGraph, badj: &[Vec<usize>], m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut za = vec![false; g.size_a()];
    let mut zb = vec![false; g.size_b()];
    let mut stack: Vec<usize> = (0..g.size_b()).filter(|&b| m.mate_of_b(b).is_none()).collect();
    for &b in &stack {
        zb[b] = true;
    }
    while let Some(b) = stack.pop() {
        for &a in &badj[b] {
            if za[a] || m.mate_of_b(b) == Some(a) {
                continue;
            }
            za[a] = true;
            let mate = m.mate_of_a(a).expect("reachable A-vertex is matched in a maximum matching");
            if !zb[mate] {
                zb[mate] = true;
                stack.push(mate);
            }
        }
    }
    (za, zb)
}

fn z_partition(g: &BipartiteGraph, badj: &[Vec<usize>], m: &Matching) -> MatchingPartition {
    let (za, _) = reachable(g, badj, m);
    let a1: Vec<usize> = (0..g.size_a()).filter(|&a| za[a]).collect();
    let a2: Vec<usize> = (0..g.size_a()).filter(|&a| !za[a]).collect();
    let b1 = sorted(a1.iter().map(|&a| m.mate_of_a(a).expect("matched")).collect());
    let bprime: Vec<usize> = (0..g.size_b()).filter(|&b| m.mate_of_b(b).is_some()).collect();
    let b2 = bprime.iter().copied().filter(|b| !b1.contains(b)).collect();
    MatchingPartition { matching: m.pairs(), a1, a2, b1, b2, bprime }
}

fn lacking(g: &BipartiteGraph, m: &Matching, a1: &[usize]) -> Vec<usize> {
    a1.iter().copied().filter(|&a| g.neighbors(a).iter().all(|&b| m.mate_of_b(b).is_some())).collect()
}

/// Rotates an even alternating path from an unmatched B-vertex to `x`, so
/// that `x`'s old mate becomes free. Returns `false` if no path exists.
fn rotate_towards(g: &BipartiteGraph, badj: &[Vec<usize>], m: &mut Matching, x: usize) -> bool {
    // BFS over A-vertices; parent_b[a] is the B-vertex we arrived from
    let mut parent_b = vec![usize::MAX; g.size_a()];
    let mut queue = std::collections::VecDeque::new();
    let mut seen_b = vec![false; g.size_b()];
    for b in 0..g.size_b() {
        if m.mate_of_b(b).is_none() {
            seen_b[b] = true;
            queue.push_back(b);
        }
    }
    let mut reached = false;
    'bfs: while let Some(b) = queue.pop_front() {
        for &a in &badj[b] {
            if parent_b[a] != usize::MAX || m.mate_of_b(b) == Some(a) {
                continue;
            }
            parent_b[a] = b;
            if a == x {
                reached = true;
                break 'bfs;
            }
            if let Some(next) = m.mate_of_a(a) {
                if !seen_b[next] {
                    seen_b[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    if !reached {
        return false;
    }
    let old_mate = m.mate_of_a(x).expect("x is matched");
    let mut a = x;
    loop {
        let b = parent_b[a];
        let prev = m.mate_of_b(b);
        m.mate_a[a] = Some(b);
        m.mate_b[b] = Some(a);
        match prev {
            Some(pa) => a = pa,
            None => break,
        }
    }
    m.mate_b[old_mate] = None;
    true
}

/// Exact search on `(X, Y)`: pick a set `D` of `Y`-vertices to leave free
/// so that every `x` sees `D` and `X` is still saturated inside `Y \ D`.
struct Exact<'a> {
    g: &'a BipartiteGraph,
    x: Vec<usize>,
    in_y: Vec<bool>,
    nodes: u64,
}

impl Exact<'_> {
    fn saturating(&self, free: &[bool]) -> Option<Matching> {
        let mut m = Matching::empty(self.g.size_a(), self.g.size_b());
        let allowed = |b: usize| self.in_y[b] && !free[b];
        for &a in &self.x {
            let mut seen = vec![false; self.g.size_b()];
            if !try_augment(self.g, &mut m, a, &mut seen, &allowed) {
                return None;
            }
        }
        Some(m)
    }

    /// `Ok(Some)` on success, `Ok(None)` when the subtree is exhausted,
    /// `Err` on hitting the node cap.
    fn search(&mut self, free: &mut Vec<bool>) -> Result<Option<Matching>, ()> {
        self.nodes += 1;
        if self.nodes > EXACT_NODE_LIMIT {
            return Err(());
        }
        let Some(&x) = self.x.iter().find(|&&x| !self.g.neighbors(x).iter().any(|&b| free[b])) else {
            return Ok(self.saturating(free));
        };
        for &y in self.g.neighbors(x) {
            if !self.in_y[y] || free[y] {
                continue;
            }
            free[y] = true;
            if self.saturating(free).is_some() {
                if let Some(m) = self.search(free)? {
                    return Ok(Some(m));
                }
            }
            free[y] = false;
        }
        Ok(None)
    }
}

/// Computes a validated matching partition, or explains why none exists.
pub fn matching_partition(g: &BipartiteGraph) -> Result<MatchingPartition, PartitionError> {
    let badj = b_adjacency(g);
    let mut m = maximum_matching(g);
    let size = m.len();
    let mut part = z_partition(g, &badj, &m);

    for _ in 0..g.size_a() * g.size_b() {
        let stuck = lacking(g, &m, &part.a1);
        let Some(&x) = stuck.first() else { break };
        let mut next = m.clone();
        if !rotate_towards(g, &badj, &mut next, x) || next.len() != size || !next.is_valid_in(g) {
            break;
        }
        m = next;
        part = z_partition(g, &badj, &m);
    }
    if lacking(g, &m, &part.a1).is_empty() {
        return Ok(validated(g, part));
    }

    let (za, zb) = reachable(g, &badj, &m);
    let x: Vec<usize> = (0..g.size_a()).filter(|&a| za[a]).collect();
    let mut exact = Exact { g, x, in_y: zb, nodes: 0 };
    let mut free = vec![false; g.size_b()];
    match exact.search(&mut free) {
        Ok(Some(inner)) => {
            // keep M outside X, replace it on X
            let mut combined = Matching::empty(g.size_a(), g.size_b());
            for (a, b) in m.pairs() {
                if !za[a] {
                    combined.set(a, b);
                }
            }
            for (a, b) in inner.pairs() {
                combined.set(a, b);
            }
            assert_eq!(combined.len(), size, "recombined matching lost edges");
            Ok(validated(g, z_partition(g, &badj, &combined)))
        }
        Ok(None) => {
            let stuck = lacking(g, &m, &part.a1);
            Err(PartitionError::NoCertificate { partial: part, stuck })
        }
        Err(()) => Err(PartitionError::Unresolved { partial: part, nodes: exact.nodes }),
    }
}

fn validated(g: &BipartiteGraph, part: MatchingPartition) -> MatchingPartition {
    let report = check_partition(g, &part);
    assert!(report.all(), "internal error: matching partition fails its invariants: {report:?} {part:?} on {g:?}");
    part
}

/// Tally of a batch of partition runs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub graphs: u64,
    pub certified: u64,
    pub no_certificate: u64,
    pub unresolved: u64,
    /// Partial certificates violating one of the four structural conditions.
    pub structural_failures: u64,
    /// Smallest failing input seen, as an A-side adjacency list.
    pub first_failure: Option<BipartiteGraph>,
}

impl AuditReport {
    fn record(&mut self, g: &BipartiteGraph) {
        self.graphs += 1;
        match matching_partition(g) {
            Ok(_) => self.certified += 1,
            Err(e) => {
                if matches!(e, PartitionError::NoCertificate { .. }) {
                    self.no_certificate += 1;
                } else {
                    self.unresolved += 1;
                }
                if !check_partition(g, e.partial()).structural() {
                    self.structural_failures += 1;
                }
                if self.first_failure.is_none() {
                    self.first_failure = Some(g.clone());
                }
            }
        }
    }

    pub fn all_certified(&self) -> bool {
        self.certified == self.graphs
    }
}

/// Runs every bipartite graph with `|A| <= max_a`, `|B| <= max_b`.
pub fn audit_exhaustive(max_a: usize, max_b: usize) -> AuditReport {
    let mut report = AuditReport::default();
    for size_a in 0..=max_a {
        for size_b in 0..=max_b {
            let cells = size_a * size_b;
            for mask in 0u64..1 << cells {
                let edges: Vec<(usize, usize)> = (0..cells).filter(|i| mask >> i & 1 == 1).map(|i| (i / size_b, i % size_b)).collect();
                let g = BipartiteGraph::from_edges(size_a, size_b, &edges).expect("in range");
                report.record(&g);
            }
        }
    }
    report
}

/// Runs `count` seeded random graphs with sides in `1..=max_side` and
/// densities in `[0.1, 0.9]`.
pub fn audit_random(count: u64, seed: u64, max_side: usize) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AuditReport::default();
    for _ in 0..count {
        let size_a = rng.gen_range(1..=max_side);
        let size_b = rng.gen_range(1..=max_side);
        let density = rng.gen_range(0.1..=0.9);
        let g = BipartiteGraph::random(&mut rng, size_a, size_b, density);
        report.record(&g);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: every maximum matching and every choice of `A1`.
    fn brute_exists(g: &BipartiteGraph) -> bool {
        let edges: Vec<(usize, usize)> = (0..g.size_a()).flat_map(|a| g.neighbors(a).iter().map(move |&b| (a, b))).collect();
        let best = maximum_matching(g).len();
        for mask in 0u64..1 << edges.len() {
            let pairs: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            if pairs.len() != best {
                continue;
            }
            let Some(m) = Matching::from_pairs(g, &pairs) else { continue };
            let bprime: Vec<usize> = (0..g.size_b()).filter(|&b| m.mate_of_b(b).is_some()).collect();
            for amask in 0u32..1 << g.size_a() {
                let a1: Vec<usize> = (0..g.size_a()).filter(|a| amask >> a & 1 == 1).collect();
                let a2: Vec<usize> = (0..g.size_a()).filter(|a| amask >> a & 1 == 0).collect();
                if a1.iter().any(|&a| m.mate_of_a(a).is_none()) {
                    continue;
                }
                let b1 = sorted(a1.iter().map(|&a| m.mate_of_a(a).unwrap()).collect());
                let b2 = bprime.iter().copied().filter(|b| !b1.contains(b)).collect();
                let p = MatchingPartition { matching: pairs.clone(), a1, a2, b1, b2, bprime: bprime.clone() };
                if check_partition(g, &p).all() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn documented_examples() {
        let g = BipartiteGraph::from_edges(1, 2, &[(0, 0), (0, 1)]).unwrap();
        let p = matching_partition(&g).unwrap();
        assert_eq!(p.a1, vec![0]);
        assert_eq!(p.b1.len(), 1);
        assert!(p.a2.is_empty() && p.b2.is_empty());

        let g = BipartiteGraph::from_edges(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let p = matching_partition(&g).unwrap();
        assert!(p.a1.is_empty());
        assert_eq!(p.a2, vec![0, 1]);
        assert_eq!(p.b2, vec![0]);
    }

    #[test]
    fn path_on_seven_vertices_has_no_certificate() {
        // y0 x0 y1 x1 y2 x2 y3
        let g = BipartiteGraph::from_edges(3, 4, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3)]).unwrap();
        assert!(!brute_exists(&g));
        let err = matching_partition(&g).unwrap_err();
        assert!(matches!(err, PartitionError::NoCertificate { .. }));
        assert!(check_partition(&g, err.partial()).structural());
    }

    #[test]
    fn agrees_with_oracle_on_small_graphs() {
        for size_a in 0..=3 {
            for size_b in 0..=3 {
                let cells = size_a * size_b;
                for mask in 0u64..1 << cells {
                    let edges: Vec<(usize, usize)> = (0..cells).filter(|i| mask >> i & 1 == 1).map(|i| (i / size_b, i % size_b)).collect();
                    let g = BipartiteGraph::from_edges(size_a, size_b, &edges).unwrap();
                    let ours = matching_partition(&g);
                    assert_eq!(ours.is_ok(), brute_exists(&g), "{g:?}");
                    if let Err(e) = ours {
                        assert!(check_partition(&g, e.partial()).structural());
                    }
                }
            }
        }
    }

    #[test]
    fn json_field_names() {
        let g = BipartiteGraph::from_edges(1, 2, &[(0, 0), (0, 1)]).unwrap();
        let json = serde_json::to_string(&matching_partition(&g).unwrap()).unwrap();
        assert_eq!(json, r#"{"M":[[0,0]],"A1":[0],"A2":[],"B1":[0],"B2":[],"Bprime":[0]}"#);
    }
}
