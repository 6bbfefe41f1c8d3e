use std::collections::{BTreeSet, HashSet};

use super::{Hypergraph, HypergraphError, UniformHypergraph, VertexSet};

/// Edge-membership oracle for a host hypergraph.
pub trait EdgeLookup {
    fn contains(&self, e: VertexSet) -> bool;
}

impl EdgeLookup for HashSet<u64> {
    fn contains(&self, e: VertexSet) -> bool {
        HashSet::contains(self, &e.bits())
    }
}

impl<F: Fn(VertexSet) -> bool> EdgeLookup for F {
    fn contains(&self, e: VertexSet) -> bool {
        self(e)
    }
}

pub(crate) fn edge_table(h: &Hypergraph) -> HashSet<u64> {
    h.edges().iter().map(|e| e.bits()).collect()
}

/// Order in which pattern vertices are assigned, together with the
/// pattern edges completed at each step.
#[derive(Debug, Clone)]
struct Plan {
    order: Vec<usize>,
    closing: Vec<Vec<VertexSet>>,
}

impl Plan {
    /// Starts with `seed` (in the given order) and then greedily picks the
    /// vertex with the most edges into the already placed set.
    fn build(pattern: &Hypergraph, seed: &[usize]) -> Plan {
        let p = pattern.n();
        let mut order: Vec<usize> = seed.to_vec();
        let mut placed: VertexSet = seed.iter().copied().collect();
        let degree: Vec<usize> = (0..p).map(|v| pattern.degree(v)).collect();
        while order.len() < p {
            let next = (0..p)
                .filter(|&v| !placed.contains(v))
                .max_by_key(|&v| {
                    let touching = pattern.edges().iter().filter(|e| e.contains(v) && !e.intersection(placed).is_empty()).count();
                    (touching, degree[v], std::cmp::Reverse(v))
                })
                .expect("unplaced vertex exists");
            order.push(next);
            placed.insert(next);
        }
        let mut position = vec![0usize; p];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closing = vec![Vec::new(); p];
        for &e in pattern.edges() {
            let last = e.iter().map(|v| position[v]).max().expect("edges are nonempty");
            closing[last].push(e);
        }
        Plan { order, closing }
    }
}

/// Backtracking search for edge-preserving injections of a fixed pattern
/// into host hypergraphs.
#[derive(Debug, Clone)]
pub struct CopyFinder {
    pattern: Hypergraph,
    plan: Plan,
    /// One plan per pattern edge, seeded with that edge's vertices.
    through_plans: Vec<Plan>,
}

impl CopyFinder {
    pub fn new(pattern: &Hypergraph) -> Self {
        let plan = Plan::build(pattern, &[]);
        let through_plans = pattern.edges().iter().map(|e| Plan::build(pattern, &e.to_vec())).collect();
        CopyFinder { pattern: pattern.clone(), plan, through_plans }
    }

    pub fn pattern(&self) -> &Hypergraph {
        &self.pattern
    }

    /// Number of injective vertex maps sending every pattern edge onto a
    /// host edge.
    pub fn count_maps<L: EdgeLookup>(&self, host: &L, host_n: usize) -> u64 {
        let mut map = vec![usize::MAX; self.pattern.n()];
        let mut count = 0u64;
        search(&self.plan, 0, &mut map, 0, host, host_n, &mut |_| {
            count += 1;
            true
        });
        count
    }

    /// Calls `visit` with each edge-preserving injection (as a vertex map);
    /// stops early when `visit` returns `false`.
    pub fn for_each_map<L: EdgeLookup>(&self, host: &L, host_n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut map = vec![usize::MAX; self.pattern.n()];
        search(&self.plan, 0, &mut map, 0, host, host_n, visit);
    }

    /// Whether some copy maps a pattern edge exactly onto `added` (which
    /// must itself be reported as an edge by `host`).
    pub fn exists_through<L: EdgeLookup>(&self, host: &L, host_n: usize, added: VertexSet) -> bool {
        let targets = added.to_vec();
        for (f, plan) in self.pattern.edges().iter().zip(&self.through_plans) {
            if f.len() != targets.len() {
                continue;
            }
            let k = targets.len();
            let mut found = false;
            for_each_permutation(&targets, &mut |perm| {
                let mut map = vec![usize::MAX; self.pattern.n()];
                let mut used = 0u64;
                for (i, &v) in perm.iter().enumerate() {
                    map[plan.order[i]] = v;
                    used |= 1u64 << v;
                }
                // edges closed within the seeded prefix
                for closing in &plan.closing[..k] {
                    if closing.iter().any(|e| !host.contains(e.map(&map))) {
                        return true;
                    }
                }
                search(plan, k, &mut map, used, host, host_n, &mut |_| {
                    found = true;
                    false
                });
                !found
            });
            if found {
                return true;
            }
        }
        false
    }
}

fn for_each_permutation(items: &[usize], visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(buf: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == buf.len() {
            return visit(buf);
        }
        for i in k..buf.len() {
            buf.swap(k, i);
            if !rec(buf, k + 1, visit) {
                buf.swap(k, i);
                return false;
            }
            buf.swap(k, i);
        }
        true
    }
    let mut buf = items.to_vec();
    rec(&mut buf, 0, visit);
}

/// Returns `false` once `visit` asks to stop.
fn search<L: EdgeLookup>(
    plan: &Plan,
    pos: usize,
    map: &mut [usize],
    used: u64,
    host: &L,
    host_n: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if pos == plan.order.len() {
        return visit(map);
    }
    let u = plan.order[pos];
    for v in 0..host_n {
        if used >> v & 1 == 1 {
            continue;
        }
        map[u] = v;
        if plan.closing[pos].iter().all(|e| host.contains(e.map(map))) && !search(plan, pos + 1, map, used | 1u64 << v, host, host_n, visit) {
            map[u] = usize::MAX;
            return false;
        }
    }
    map[u] = usize::MAX;
    true
}

/// `N(pattern, host)`: the number of subhypergraphs of `host` isomorphic to
/// `pattern`, i.e. edge-preserving injections divided by `|Aut(pattern)|`.
pub fn count_sub_copies(pattern: &Hypergraph, host: &Hypergraph) -> u64 {
    if pattern.n() > host.n() {
        return 0;
    }
    let finder = CopyFinder::new(pattern);
    let maps = finder.count_maps(&edge_table(host), host.n());
    let aut = finder.count_maps(&edge_table(pattern), pattern.n());
    assert!(aut > 0 && maps.is_multiple_of(aut), "injection count {maps} not divisible by automorphism count {aut}");
    maps / aut
}

/// Distinct copies of `pattern` in `host`, each as the sorted list of host
/// edges it uses together with the image of every pattern edge (in pattern
/// edge order).
pub fn enumerate_sub_copies(pattern: &Hypergraph, host: &Hypergraph) -> Vec<Vec<VertexSet>> {
    if pattern.n() > host.n() {
        return Vec::new();
    }
    let finder = CopyFinder::new(pattern);
    let table = edge_table(host);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut out = Vec::new();
    finder.for_each_map(&table, host.n(), &mut |map| {
        let images: Vec<VertexSet> = pattern.edges().iter().map(|e| e.map(map)).collect();
        let mut key: Vec<u64> = images.iter().map(|e| e.bits()).collect();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(images);
        }
        true
    });
    out
}

/// Every `s`-set of `g`'s vertices all of whose `k`-subsets are edges.
pub(crate) fn cliques(g: &UniformHypergraph, s: usize) -> Vec<VertexSet> {
    let table = edge_table(g.base());
    cliques_with(g.n(), g.r(), s, &table)
}

pub(crate) fn cliques_with<L: EdgeLookup>(n: usize, k: usize, s: usize, host: &L) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut visit = |c: VertexSet| out.push(c);
    extend_cliques(n, k, s, VertexSet::EMPTY, 0, host, &mut visit);
    out.sort_unstable_by_key(|c| c.bits());
    out
}

/// Number of `K_s^(k)` in a host given by an edge oracle.
pub(crate) fn count_cliques_with<L: EdgeLookup>(n: usize, k: usize, s: usize, host: &L) -> u64 {
    let mut count = 0u64;
    let mut visit = |_: VertexSet| count += 1;
    extend_cliques(n, k, s, VertexSet::EMPTY, 0, host, &mut visit);
    count
}

fn extend_cliques<L: EdgeLookup>(n: usize, k: usize, s: usize, current: VertexSet, from: usize, host: &L, visit: &mut dyn FnMut(VertexSet)) {
    if current.len() == s {
        visit(current);
        return;
    }
    let missing = s - current.len();
    for v in from..n {
        if n - v < missing {
            break;
        }
        let ok = current.len() + 1 < k || current.subsets_of_size(k - 1).into_iter().all(|t| host.contains(t.union(VertexSet::singleton(v))));
        if ok {
            extend_cliques(n, k, s, current.union(VertexSet::singleton(v)), v + 1, host, visit);
        }
    }
}

/// Number of `s`-sets of `h`'s vertices spanning a `K_s^(k)`.
pub fn count_cliques(h: &UniformHypergraph, s: usize) -> Result<u64, HypergraphError> {
    if s < h.r() {
        return Err(HypergraphError::InvalidParameters(format!("clique size {s} is below the uniformity {}", h.r())));
    }
    Ok(count_cliques_with(h.n(), h.r(), s, &edge_table(h.base())))
}

#[cfg(test)]
mod tests {
    use super::super::{complete_uniform, make_hypergraph};
    use super::*;

    /// Oracle: all injections by brute force over vertex tuples.
    fn brute_maps(pattern: &Hypergraph, host: &Hypergraph) -> u64 {
        fn rec(p: usize, n: usize, map: &mut Vec<usize>, pattern: &Hypergraph, host: &Hypergraph, count: &mut u64) {
            if map.len() == p {
                if pattern.edges().iter().all(|e| host.contains_edge(e.map(map))) {
                    *count += 1;
                }
                return;
            }
            for v in 0..n {
                if !map.contains(&v) {
                    map.push(v);
                    rec(p, n, map, pattern, host, count);
                    map.pop();
                }
            }
        }
        let mut count = 0;
        rec(pattern.n(), host.n(), &mut Vec::new(), pattern, host, &mut count);
        count
    }

    #[test]
    fn triangles_in_k4() {
        let k3 = complete_uniform(3, 2).unwrap();
        let k4 = complete_uniform(4, 2).unwrap();
        assert_eq!(brute_maps(&k3, &k4), 24);
        assert_eq!(brute_maps(&k3, &k3), 6);
        assert_eq!(count_sub_copies(&k3, &k4), 4);
    }

    #[test]
    fn single_edge_counts_edges() {
        let edge = complete_uniform(3, 3).unwrap();
        let host = make_hypergraph(5, &[vec![0, 1, 2], vec![1, 2, 3], vec![0, 3, 4]]).unwrap();
        assert_eq!(count_sub_copies(&edge, &host), 3);
    }

    #[test]
    fn k4_3_in_k5_3() {
        let k43 = complete_uniform(4, 3).unwrap();
        let k53 = complete_uniform(5, 3).unwrap();
        assert_eq!(brute_maps(&k43, &k53) / brute_maps(&k43, &k43), 5);
        assert_eq!(count_sub_copies(&k43, &k53), 5);
    }

    #[test]
    fn cliques_examples() {
        let k53 = complete_uniform(5, 3).unwrap();
        assert_eq!(count_cliques(&k53, 4).unwrap(), 5);
        assert_eq!(count_cliques(&k53, 3).unwrap(), 10);
        let empty = UniformHypergraph::new(Hypergraph::empty(6), 3).unwrap();
        assert_eq!(count_cliques(&empty, 3).unwrap(), 0);
        assert_eq!(count_cliques(&empty, 5).unwrap(), 0);
        assert!(count_cliques(&k53, 2).is_err());
    }

    #[test]
    fn cliques_agree_with_sub_copies() {
        let g = make_hypergraph(6, &[vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 3], vec![2, 3], vec![0, 3], vec![3, 4], vec![4, 5]]).unwrap();
        let g = UniformHypergraph::new(g, 2).unwrap();
        for s in 2..=5 {
            let ks = complete_uniform(s, 2).unwrap();
            assert_eq!(count_cliques(&g, s).unwrap(), count_sub_copies(&ks, &g));
        }
    }

    #[test]
    fn through_search_finds_only_copies_using_the_edge() {
        let k3 = complete_uniform(3, 2).unwrap();
        let finder = CopyFinder::new(&k3);
        let host = make_hypergraph(5, &[vec![0, 1], vec![0, 2], vec![1, 2], vec![3, 4]]).unwrap();
        let table = edge_table(&host);
        assert!(finder.exists_through(&table, 5, VertexSet::from_bits(0b011)));
        assert!(!finder.exists_through(&table, 5, VertexSet::from_bits(0b11000)));
    }

    #[test]
    fn enumerate_copies_counts_match() {
        let p3 = make_hypergraph(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let k4 = complete_uniform(4, 2).unwrap();
        assert_eq!(enumerate_sub_copies(&p3, &k4).len() as u64, count_sub_copies(&p3, &k4));
    }
}
