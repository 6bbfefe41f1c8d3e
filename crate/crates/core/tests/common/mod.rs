//! Brute-force oracles shared by the integration tests. Each one is
//! written without the library's search code so that agreement means
//! something.

#![allow(dead_code)]

use std::path::PathBuf;

use bergekit::hypercore::format::load_uniform;
use bergekit::hypercore::{Hypergraph, UniformHypergraph, VertexSet};

/// All injections `0..k -> 0..n`, as vectors.
pub fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(k, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(k, n, &mut Vec::new(), &mut out);
    }
    out
}

fn image(e: &[usize], phi: &[usize]) -> u64 {
    e.iter().fold(0, |acc, &v| acc | 1 << phi[v])
}

/// Whether distinct host edges can be picked, one containing each target.
fn distinct_containers(targets: &[u64], host: &[u64], used: &mut Vec<bool>) -> bool {
    let Some((&t, rest)) = targets.split_first() else { return true };
    for (i, &h) in host.iter().enumerate() {
        if !used[i] && t & !h == 0 {
            used[i] = true;
            if distinct_containers(rest, host, used) {
                return true;
            }
            used[i] = false;
        }
    }
    false
}

/// Berge copy by trying every vertex injection and every edge assignment.
pub fn brute_berge(host: &Hypergraph, pattern: &Hypergraph) -> bool {
    let pe = pattern.edge_lists();
    let he: Vec<u64> = host.edge_lists().iter().map(|e| e.iter().fold(0, |acc, &v| acc | 1 << v)).collect();
    if pe.len() > he.len() {
        return false;
    }
    injections(pattern.n(), host.n()).iter().any(|phi| {
        let targets: Vec<u64> = pe.iter().map(|e| image(e, phi)).collect();
        distinct_containers(&targets, &he, &mut vec![false; he.len()])
    })
}

/// Whether `host` contains `pattern` as a (not necessarily induced)
/// subhypergraph.
pub fn brute_contains(host: &Hypergraph, pattern: &Hypergraph) -> bool {
    let pe = pattern.edge_lists();
    let he: Vec<u64> = host.edge_lists().iter().map(|e| e.iter().fold(0, |acc, &v| acc | 1 << v)).collect();
    injections(pattern.n(), host.n()).iter().any(|phi| pe.iter().all(|e| he.contains(&image(e, phi))))
}

/// All `k`-subsets of `0..n` as sorted lists, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every labeled `r`-graph on `n` vertices.
pub fn all_uniform(n: usize, r: usize) -> impl Iterator<Item = Hypergraph> {
    let sets = k_subsets(n, r);
    (0u64..1 << sets.len()).map(move |mask| {
        let chosen: Vec<Vec<usize>> = (0..sets.len()).filter(|i| mask >> i & 1 == 1).map(|i| sets[i].clone()).collect();
        Hypergraph::new(n, &chosen).expect("valid subsets")
    })
}

/// Whether two hypergraphs are isomorphic, by trying every bijection.
pub fn brute_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && brute_contains(b, a)
}

pub fn complete_bipartite(p: usize, q: usize) -> Hypergraph {
    let edges: Vec<Vec<usize>> = (0..p).flat_map(|a| (p..p + q).map(move |b| vec![a, b])).collect();
    Hypergraph::new(p + q, &edges).unwrap()
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus(name: &str) -> UniformHypergraph {
    load_uniform(&corpus_dir().join(format!("{name}.hg"))).expect("corpus file")
}

pub fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}
