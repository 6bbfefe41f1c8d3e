//! Exact extremal numbers by orderly branch-and-bound, Ramsey numbers by
//! exhaustive colorings, and verifiers for inequalities between them.

mod engine;
mod orderly;
mod ramsey;
mod verify;

use std::time::Duration;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::berge::{find_berge, has_berge_through};
use crate::hypercore::{canonical_form, count_cliques, count_sub_copies, CopyFinder, Hypergraph, UniformHypergraph, VertexSet};
use engine::{Engine, Mode, Objective};
use orderly::Layout;

pub use engine::{EdgeView, MonotoneProperty};
pub use ramsey::{ramsey_number, RamseyResult, RamseyWitness};
pub use verify::{verify_expansion_chain, verify_sandwich, ExpansionChainReport, SandwichReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("n = {n}, r = {r} lies outside the supported exact grid (r=2: n<=9, r=3: n<=7, r=4: n<=6); pass force to override")]
    OutsideGrid { n: usize, r: usize },
    #[error("C({n}, {r}) exceeds the {} edge positions the search can index", orderly::MAX_POSITIONS)]
    TooLarge { n: usize, r: usize },
    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Limits for one search. `workers` only affects speed, never results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 2_000_000_000, max_time: None, workers: 1 }
    }
}

impl SearchBudget {
    pub fn with_workers(workers: usize) -> Self {
        SearchBudget { workers: workers.max(1), ..Default::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtremalOptions {
    pub budget: SearchBudget,
    /// Return every extremal class instead of one witness.
    pub all_witnesses: bool,
    /// Allow sizes outside the supported grid.
    pub force: bool,
}

fn serialize_witnesses<S: Serializer>(w: &[Hypergraph], s: S) -> Result<S::Ok, S::Error> {
    let lists: Vec<Vec<Vec<usize>>> = w.iter().map(Hypergraph::edge_lists).collect();
    lists.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub value: u64,
    /// `false` if the budget ran out; `value` is then only a lower bound.
    pub exhausted: bool,
    pub nodes: u64,
    /// Canonical forms, sorted; one per isomorphism class.
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: Vec<Hypergraph>,
}

/// Whether `(n, r)` lies in the grid where exact answers are promised.
pub fn in_supported_grid(n: usize, r: usize) -> bool {
    matches!((r, n), (2, 0..=9) | (3, 0..=7) | (4, 0..=6))
}

fn layout_for(n: usize, r: usize, force: bool) -> Result<Layout, ExtremalError> {
    if !force && !in_supported_grid(n, r) {
        return Err(ExtremalError::OutsideGrid { n, r });
    }
    Layout::new(n, r).ok_or(ExtremalError::TooLarge { n, r })
}

/// No copy of a fixed `r`-graph as a subgraph.
pub struct SubgraphFree {
    finder: CopyFinder,
}

impl SubgraphFree {
    pub fn new(f: &UniformHypergraph) -> Self {
        SubgraphFree { finder: CopyFinder::new(f) }
    }
}

impl MonotoneProperty for SubgraphFree {
    fn admits(&self, current: &EdgeView<'_>, added: VertexSet) -> bool {
        !self.finder.exists_through(&current.with(added), current.n(), added)
    }
}

/// No Berge copy of a fixed uniform pattern.
pub struct BergeFree {
    f: UniformHypergraph,
}

impl BergeFree {
    pub fn new(f: &UniformHypergraph) -> Self {
        BergeFree { f: f.clone() }
    }
}

impl MonotoneProperty for BergeFree {
    fn admits(&self, current: &EdgeView<'_>, added: VertexSet) -> bool {
        if current.edge_count() + 1 < self.f.edge_count() {
            return true;
        }
        let h = current.with(added).to_hypergraph();
        let t = h.edge_index(added).expect("added edge present");
        !has_berge_through(&h, &self.f, t)
    }
}

/// Every graph qualifies.
pub struct Unrestricted;

impl MonotoneProperty for Unrestricted {
    fn admits(&self, _: &EdgeView<'_>, _: VertexSet) -> bool {
        true
    }
}

fn canonical_witnesses(layout: &Layout, bits: &[orderly::Bits]) -> Vec<Hypergraph> {
    let mut out: Vec<Hypergraph> = bits.iter().map(|&b| canonical_form(&layout.to_hypergraph(b)).form).collect();
    out.sort_by_key(|h| h.edges().iter().map(|e| e.bits()).collect::<Vec<_>>());
    out.dedup();
    out
}

/// Shared driver: optional deletion bound, greedy start, search, witness
/// validation.
fn solve(
    layout: &Layout,
    property: &dyn MonotoneProperty,
    objective: Objective,
    opts: &ExtremalOptions,
    sub_nodes: u64,
    check: &dyn Fn(&Hypergraph, u64) -> bool,
) -> ExtremalResult {
    let mode = if opts.all_witnesses { Mode::All } else { Mode::Single };
    let engine = Engine { layout, property, objective, mode };
    let greedy = engine.greedy();
    let outcome = engine.run(&opts.budget, Some((engine.value(greedy), greedy)));
    let witnesses = canonical_witnesses(layout, &outcome.witnesses);
    for w in &witnesses {
        assert!(check(w, outcome.value), "internal error: extremal witness fails validation: {w:?}");
    }
    ExtremalResult { value: outcome.value, exhausted: outcome.exhausted, nodes: outcome.nodes + sub_nodes, witnesses }
}

/// Exact value on `n - 1` vertices for the vertex-deletion bound, with the
/// nodes it cost; `None` if that run was cut short.
fn deletion_bound(n: usize, opts: &ExtremalOptions, sub: impl Fn(usize, &ExtremalOptions) -> Result<ExtremalResult, ExtremalError>) -> (Option<u64>, u64) {
    if n == 0 {
        return (None, 0);
    }
    let inner = ExtremalOptions { budget: opts.budget.clone(), all_witnesses: false, force: true };
    match sub(n - 1, &inner) {
        Ok(r) if r.exhausted => (Some(r.value), r.nodes),
        Ok(r) => (None, r.nodes),
        Err(_) => (None, 0),
    }
}

/// `ex_k(n, F)`: most edges in an `F`-free `k`-graph on `n` vertices.
pub fn ex_uniform(n: usize, k: usize, f: &UniformHypergraph, opts: &ExtremalOptions) -> Result<ExtremalResult, ExtremalError> {
    if f.r() != k {
        return Err(ExtremalError::InvalidParameters(format!("pattern is {}-uniform, expected {k}", f.r())));
    }
    let layout = layout_for(n, k, opts.force)?;
    let (deletion, sub_nodes) = deletion_bound(n, opts, |m, o| ex_uniform(m, k, f, o));
    let property = SubgraphFree::new(f);
    let check = |w: &Hypergraph, v: u64| count_sub_copies(f, w) == 0 && w.edge_count() as u64 == v;
    Ok(solve(&layout, &property, Objective::Edges { deletion }, opts, sub_nodes, &check))
}

/// `ex_r(n, Berge-F)`: most edges in an `r`-graph on `n` vertices with no
/// Berge copy of `F`.
pub fn ex_berge(n: usize, r: usize, f: &UniformHypergraph, opts: &ExtremalOptions) -> Result<ExtremalResult, ExtremalError> {
    let layout = layout_for(n, r, opts.force)?;
    let (deletion, sub_nodes) = deletion_bound(n, opts, |m, o| ex_berge(m, r, f, o));
    let property = BergeFree::new(f);
    let check = |w: &Hypergraph, v: u64| find_berge(w, f).is_none() && w.edge_count() as u64 == v;
    Ok(solve(&layout, &property, Objective::Edges { deletion }, opts, sub_nodes, &check))
}

/// `ex_k(n, K_s^(k), F)`: most copies of `K_s^(k)` in an `F`-free `k`-graph
/// on `n` vertices. `value` is that clique count.
pub fn ex_generalized(n: usize, k: usize, s: usize, f: &UniformHypergraph, opts: &ExtremalOptions) -> Result<ExtremalResult, ExtremalError> {
    if s < k {
        return Err(ExtremalError::InvalidParameters(format!("clique size {s} is below the uniformity {k}")));
    }
    if f.r() != k {
        return Err(ExtremalError::InvalidParameters(format!("pattern is {}-uniform, expected {k}", f.r())));
    }
    let layout = layout_for(n, k, opts.force)?;
    let property = SubgraphFree::new(f);
    let check = |w: &Hypergraph, v: u64| {
        let u = UniformHypergraph::new(w.clone(), k).expect("uniform witness");
        count_sub_copies(f, w) == 0 && count_cliques(&u, s).expect("s >= k") == v
    };
    Ok(solve(&layout, &property, Objective::Cliques { s }, opts, 0, &check))
}

/// One representative (the maximal-code labeling) of every isomorphism
/// class of `r`-graphs on `n` vertices with a monotone property.
pub fn enumerate_uniform(n: usize, r: usize, property: &dyn MonotoneProperty, budget: &SearchBudget) -> Result<Vec<Hypergraph>, ExtremalError> {
    let layout = Layout::new(n, r).ok_or(ExtremalError::TooLarge { n, r })?;
    let engine = Engine { layout: &layout, property, objective: Objective::Edges { deletion: None }, mode: Mode::Every };
    let outcome = engine.run(budget, None);
    if !outcome.exhausted {
        return Err(ExtremalError::Budget { nodes: outcome.nodes });
    }
    Ok(outcome.witnesses.iter().map(|&b| layout.to_hypergraph(b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{complete_uniform, make_hypergraph, turan_hypergraph};
    use std::collections::HashSet;

    fn k3() -> UniformHypergraph {
        complete_uniform(3, 2).unwrap()
    }

    fn opts() -> ExtremalOptions {
        ExtremalOptions::default()
    }

    /// Oracle: every labeled `r`-graph, keeping those with the predicate.
    fn brute_max(n: usize, r: usize, ok: impl Fn(&Hypergraph) -> bool, value: impl Fn(&Hypergraph) -> u64) -> u64 {
        let sets = VertexSet::prefix(n).subsets_of_size(r);
        (0u64..1 << sets.len())
            .map(|mask| Hypergraph::from_sets(n, (0..sets.len()).filter(|i| mask >> i & 1 == 1).map(|i| sets[i]).collect()).unwrap())
            .filter(|h| ok(h))
            .map(|h| value(&h))
            .max()
            .unwrap()
    }

    #[test]
    fn mantel_small() {
        assert_eq!(ex_uniform(5, 2, &k3(), &opts()).unwrap().value, 6);
        let r4 = ex_uniform(4, 2, &k3(), &ExtremalOptions { all_witnesses: true, ..opts() }).unwrap();
        assert_eq!(r4.value, 4);
        let c4 = make_hypergraph(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        assert_eq!(r4.witnesses, vec![canonical_form(&c4).form]);
        let k2 = complete_uniform(2, 2).unwrap();
        assert_eq!(ex_uniform(6, 2, &k2, &opts()).unwrap().value, 0);
    }

    #[test]
    fn uniform_matches_brute_force() {
        let p3 = UniformHypergraph::from_lists(3, 2, &[vec![0, 1], vec![1, 2]]).unwrap();
        for n in 2..=6 {
            for f in [k3(), p3.clone()] {
                let expected = brute_max(n, 2, |h| count_sub_copies(&f, h) == 0, |h| h.edge_count() as u64);
                assert_eq!(ex_uniform(n, 2, &f, &opts()).unwrap().value, expected, "n={n}");
            }
        }
        let k43 = complete_uniform(4, 3).unwrap();
        for n in 4..=5 {
            let expected = brute_max(n, 3, |h| count_sub_copies(&k43, h) == 0, |h| h.edge_count() as u64);
            assert_eq!(ex_uniform(n, 3, &k43, &opts()).unwrap().value, expected);
        }
    }

    #[test]
    fn berge_examples() {
        let edge3 = complete_uniform(3, 3).unwrap();
        assert_eq!(ex_berge(5, 3, &edge3, &opts()).unwrap().value, 0);
        assert_eq!(ex_berge(3, 3, &k3(), &opts()).unwrap().value, 1);
        assert_eq!(ex_berge(4, 3, &k3(), &opts()).unwrap().value, 2);
        for n in 3..=5 {
            let expected = brute_max(n, 3, |h| find_berge(h, &k3()).is_none(), |h| h.edge_count() as u64);
            assert_eq!(ex_berge(n, 3, &k3(), &opts()).unwrap().value, expected, "n={n}");
        }
    }

    #[test]
    fn generalized_examples() {
        assert_eq!(ex_generalized(5, 2, 3, &k3(), &opts()).unwrap().value, 0);
        let k4 = complete_uniform(4, 2).unwrap();
        let r = ex_generalized(5, 2, 3, &k4, &opts()).unwrap();
        assert_eq!(r.value, 4);
        let k2 = complete_uniform(2, 2).unwrap();
        assert_eq!(ex_generalized(5, 2, 3, &k2, &opts()).unwrap().value, 0);
        let expected = brute_max(5, 2, |h| count_sub_copies(&k4, h) == 0, |h| count_cliques(&UniformHypergraph::new(h.clone(), 2).unwrap(), 3).unwrap());
        assert_eq!(r.value, expected);
    }

    #[test]
    fn enumeration_counts() {
        let all = enumerate_uniform(3, 2, &Unrestricted, &SearchBudget::default()).unwrap();
        assert_eq!(all.len(), 4);
        let tf = enumerate_uniform(4, 2, &SubgraphFree::new(&k3()), &SearchBudget::default()).unwrap();
        // oracle: filter all 2^6 labeled graphs, dedup by canonical form
        let sets = VertexSet::prefix(4).subsets_of_size(2);
        let oracle: HashSet<Hypergraph> = (0u32..64)
            .map(|m| Hypergraph::from_sets(4, (0..6).filter(|i| m >> i & 1 == 1).map(|i| sets[i]).collect()).unwrap())
            .filter(|h| count_sub_copies(&k3(), h) == 0)
            .map(|h| canonical_form(&h).form)
            .collect();
        let forms: HashSet<Hypergraph> = tf.iter().map(|h| canonical_form(h).form).collect();
        assert_eq!(tf.len(), oracle.len());
        assert_eq!(forms, oracle);
        let full = enumerate_uniform(3, 3, &Unrestricted, &SearchBudget::default()).unwrap();
        assert_eq!(full.len(), 2);
    }

    #[test]
    fn budget_is_signalled() {
        let tiny = SearchBudget { max_nodes: 5, ..Default::default() };
        assert!(matches!(enumerate_uniform(5, 2, &Unrestricted, &tiny), Err(ExtremalError::Budget { .. })));
        let r = ex_uniform(7, 2, &k3(), &ExtremalOptions { budget: tiny, ..opts() }).unwrap();
        assert!(!r.exhausted);
    }

    #[test]
    fn grid_is_enforced() {
        assert_eq!(ex_uniform(10, 2, &k3(), &opts()).unwrap_err(), ExtremalError::OutsideGrid { n: 10, r: 2 });
        let forced = ExtremalOptions { force: true, ..opts() };
        assert_eq!(ex_uniform(10, 2, &k3(), &forced).unwrap().value, 25);
        assert!(matches!(ex_uniform(20, 2, &k3(), &forced), Err(ExtremalError::TooLarge { .. })));
    }

    #[test]
    fn workers_do_not_change_results() {
        let one = ex_uniform(7, 2, &k3(), &ExtremalOptions { all_witnesses: true, ..opts() }).unwrap();
        let four = ex_uniform(7, 2, &k3(), &ExtremalOptions { all_witnesses: true, budget: SearchBudget::with_workers(4), ..opts() }).unwrap();
        assert_eq!(one, four);
        let t = turan_hypergraph(7, 2, 2).unwrap();
        assert_eq!(one.witnesses, vec![canonical_form(&t).form]);
    }
}
