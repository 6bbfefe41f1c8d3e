//! Berge copies: detection, blue edges, greedy construction from a shadow
//! copy, and enumeration of all uniform Berge copies of a pattern.
//!
//! A Berge copy of `F` in `H` is an injection `phi: V(F) -> V(H)` together
//! with an injection `psi: E(F) -> E(H)` such that `phi(f)` is contained in
//! `psi(f)` for every edge `f`. Containment is tested against
//! subhypergraphs, so `H` may have more edges than the copy uses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercore::{canonical_form, shadow, Hypergraph, UniformHypergraph, VertexSet};

/// Witness of a Berge copy. `edge_map[i]` indexes the host edge list and is
/// assigned to the `i`-th edge of the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BergeEmbedding {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl BergeEmbedding {
    /// Checks injectivity of both maps and containment of every edge.
    pub fn validate(&self, host: &Hypergraph, pattern: &Hypergraph) -> Result<(), String> {
        if self.vertex_map.len() != pattern.n() || self.edge_map.len() != pattern.edge_count() {
            return Err("map lengths do not match the pattern".into());
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &self.vertex_map {
            if v >= host.n() || seen.contains(v) {
                return Err(format!("vertex map is not an injection into 0..{}", host.n()));
            }
            seen.insert(v);
        }
        let mut used = BTreeSet::new();
        for (f, &i) in pattern.edges().iter().zip(&self.edge_map) {
            if i >= host.edge_count() || !used.insert(i) {
                return Err("edge map is not an injection into the host edges".into());
            }
            if !f.map(&self.vertex_map).is_subset(host.edges()[i]) {
                return Err(format!("pattern edge {:?} is not contained in host edge {:?}", f.to_vec(), host.edges()[i].to_vec()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BergeError {
    #[error("pattern edge {edge:?} maps into {multiplicity} host edges, need at least {required}")]
    Multiplicity { edge: Vec<usize>, multiplicity: usize, required: usize },
    #[error("vertex map is not an injection of the pattern vertices into the host")]
    BadVertexMap,
    #[error("target uniformity {k} is below the pattern uniformity {r}")]
    Uniformity { k: usize, r: usize },
    #[error("too many vertices: {0}")]
    TooLarge(usize),
}

/// Edge-index bitsets over a host's edge list.
struct Host<'a> {
    h: &'a Hypergraph,
    words: usize,
    /// `incidence[v]`: edges containing `v`.
    incidence: Vec<Vec<u64>>,
    degree: Vec<usize>,
}

impl<'a> Host<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let words = h.edge_count().div_ceil(64).max(1);
        let mut incidence = vec![vec![0u64; words]; h.n()];
        for (i, e) in h.edges().iter().enumerate() {
            for v in e.iter() {
                incidence[v][i / 64] |= 1 << (i % 64);
            }
        }
        let degree = incidence.iter().map(|b| b.iter().map(|w| w.count_ones() as usize).sum()).collect();
        Host { h, words, incidence, degree }
    }

    /// Bitset of host edges containing `s`.
    fn containers(&self, s: VertexSet) -> Vec<u64> {
        let mut out = vec![u64::MAX; self.words];
        let m = self.h.edge_count();
        for (w, word) in out.iter_mut().enumerate() {
            let live = m.saturating_sub(w * 64);
            if live < 64 {
                *word = (1u64 << live) - 1;
            }
        }
        for v in s.iter() {
            for (o, &b) in out.iter_mut().zip(&self.incidence[v]) {
                *o &= b;
            }
        }
        out
    }
}

fn bits_iter(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| VertexSet::from_bits(word).iter().map(move |b| w * 64 + b))
}

fn is_zero(bits: &[u64]) -> bool {
    bits.iter().all(|&w| w == 0)
}

/// Assignment order for pattern vertices and the edges closed at each step.
struct Plan {
    order: Vec<usize>,
    closing: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    /// `seed` vertices go first; the rest follow by number of edges into the
    /// placed set, then by degree, then by index.
    fn new(f: &Hypergraph, seed: VertexSet) -> Self {
        let p = f.n();
        let incident: Vec<Vec<usize>> = (0..p).map(|v| (0..f.edge_count()).filter(|&i| f.edges()[i].contains(v)).collect()).collect();
        let degree: Vec<usize> = incident.iter().map(Vec::len).collect();
        let mut order: Vec<usize> = seed.iter().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
        let mut placed = seed;
        while order.len() < p {
            let next = (0..p)
                .filter(|&v| !placed.contains(v))
                .max_by_key(|&v| {
                    let touching = incident[v].iter().filter(|&&i| !f.edges()[i].intersection(placed).is_empty()).count();
                    (touching, degree[v], std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            order.push(next);
            placed.insert(next);
        }
        let mut position = vec![0; p];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closing = vec![Vec::new(); p];
        for (i, e) in f.edges().iter().enumerate() {
            closing[e.iter().map(|v| position[v]).max().expect("nonempty edge")].push(i);
        }
        Plan { order, closing, incident, degree }
    }
}

/// Extra restrictions used by the pinning pass and the through-edge search.
#[derive(Clone)]
struct Constraints {
    /// Allowed host vertices per pattern vertex.
    allowed: Vec<VertexSet>,
    /// `(pattern edge, host edge)`: that pattern edge must use exactly that
    /// host edge, and no other pattern edge may use it.
    forced: Option<(usize, usize)>,
}

struct Searcher<'a> {
    host: Host<'a>,
    pattern: &'a Hypergraph,
    plan: Plan,
    cons: Constraints,
}

#[derive(Clone)]
struct State {
    map: Vec<usize>,
    used: VertexSet,
    placed: VertexSet,
    containers: Vec<Vec<u64>>,
    edge_of: Vec<usize>,
    owner: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl<'a> Searcher<'a> {
    fn new(h: &'a Hypergraph, f: &'a Hypergraph, cons: Constraints, seed: VertexSet) -> Self {
        Searcher { host: Host::new(h), pattern: f, plan: Plan::new(f, seed), cons }
    }

    /// Containers for a pattern edge (or partial image of one), honoring the
    /// forced assignment.
    fn allowed_containers(&self, edge: usize, image: VertexSet) -> Vec<u64> {
        let mut c = self.host.containers(image);
        if let Some((fe, he)) = self.cons.forced {
            let bit = 1u64 << (he % 64);
            if edge == fe {
                let keep = c[he / 64] & bit;
                c.iter_mut().for_each(|w| *w = 0);
                c[he / 64] = keep;
            } else {
                c[he / 64] &= !bit;
            }
        }
        c
    }

    fn augment(&self, st: &mut State, f: usize, visited: &mut Vec<u64>) -> bool {
        let candidates: Vec<usize> = bits_iter(&st.containers[f]).collect();
        for e in candidates {
            if visited[e / 64] >> (e % 64) & 1 == 1 {
                continue;
            }
            visited[e / 64] |= 1 << (e % 64);
            let prev = st.owner[e];
            if prev == NONE || self.augment(st, prev, visited) {
                st.owner[e] = f;
                st.edge_of[f] = e;
                return true;
            }
        }
        false
    }

    fn run(&self) -> Option<Vec<usize>> {
        let p = self.pattern.n();
        if p > self.host.h.n() || self.pattern.edge_count() > self.host.h.edge_count() {
            return None;
        }
        let mut st = State {
            map: vec![NONE; p],
            used: VertexSet::EMPTY,
            placed: VertexSet::EMPTY,
            containers: vec![Vec::new(); self.pattern.edge_count()],
            edge_of: vec![NONE; self.pattern.edge_count()],
            owner: vec![NONE; self.host.h.edge_count()],
        };
        self.extend(&mut st, 0).then_some(st.map)
    }

    fn extend(&self, st: &mut State, pos: usize) -> bool {
        if pos == self.plan.order.len() {
            return true;
        }
        let u = self.plan.order[pos];
        let need = self.plan.degree[u];
        for v in self.cons.allowed[u].iter() {
            if st.used.contains(v) || self.host.degree[v] < need {
                continue;
            }
            let mut next = st.clone();
            next.map[u] = v;
            next.used.insert(v);
            next.placed.insert(u);
            if self.accept(&mut next, pos, u) && self.extend(&mut next, pos + 1) {
                *st = next;
                return true;
            }
        }
        false
    }

    /// Closes finished edges into the matching and checks that every
    /// partially mapped edge still has a container.
    fn accept(&self, st: &mut State, pos: usize, u: usize) -> bool {
        for &i in &self.plan.incident[u] {
            let f = self.pattern.edges()[i];
            let image = f.intersection(st.placed).map(&st.map);
            if self.plan.closing[pos].contains(&i) {
                st.containers[i] = self.allowed_containers(i, image);
                let mut visited = vec![0u64; self.host.words];
                if !self.augment(st, i, &mut visited) {
                    return false;
                }
            } else if is_zero(&self.allowed_containers(i, image)) {
                return false;
            }
        }
        true
    }
}

fn full_constraints(p: usize, host_n: usize) -> Constraints {
    Constraints { allowed: vec![VertexSet::prefix(host_n); p], forced: None }
}

/// Pins pattern vertices `0..p` in turn to the least feasible host vertex,
/// yielding the lexicographically least vertex map among all copies.
fn least_vertex_map(h: &Hypergraph, f: &Hypergraph, mut cons: Constraints, seed: VertexSet) -> Option<Vec<usize>> {
    Searcher::new(h, f, cons.clone(), seed).run()?;
    for u in 0..f.n() {
        let options = cons.allowed[u];
        let mut pinned = false;
        for v in options.iter() {
            cons.allowed[u] = VertexSet::singleton(v);
            if Searcher::new(h, f, cons.clone(), seed).run().is_some() {
                pinned = true;
                break;
            }
        }
        assert!(pinned, "a completion exists, so some pin must succeed");
        // later vertices may not reuse the pinned one
        let v = cons.allowed[u];
        for w in u + 1..f.n() {
            cons.allowed[w] = cons.allowed[w].difference(v);
        }
    }
    Some(cons.allowed.iter().map(|s| VertexSet::min(*s).expect("pinned")).collect())
}

/// Deterministic edge assignment for a fixed vertex map: Kuhn's algorithm
/// over pattern edges in order, host containers in ascending index order.
fn assign_edges(h: &Hypergraph, f: &Hypergraph, vmap: &[usize], forced: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let cons = Constraints { allowed: vmap.iter().map(|&v| VertexSet::singleton(v)).collect(), forced };
    let s = Searcher::new(h, f, cons, VertexSet::EMPTY);
    let mut st = State {
        map: vmap.to_vec(),
        used: VertexSet::EMPTY,
        placed: VertexSet::prefix(f.n()),
        containers: f.edges().iter().enumerate().map(|(i, e)| s.allowed_containers(i, e.map(vmap))).collect(),
        edge_of: vec![NONE; f.edge_count()],
        owner: vec![NONE; h.edge_count()],
    };
    for i in 0..f.edge_count() {
        let mut visited = vec![0u64; s.host.words];
        if !s.augment(&mut st, i, &mut visited) {
            return None;
        }
    }
    Some(st.edge_of)
}

fn embedding(h: &Hypergraph, f: &Hypergraph, vmap: Vec<usize>, forced: Option<(usize, usize)>) -> BergeEmbedding {
    let edge_map = assign_edges(h, f, &vmap, forced).expect("vertex map admits an edge assignment");
    let emb = BergeEmbedding { vertex_map: vmap, edge_map };
    if let Err(e) = emb.validate(h, f) {
        panic!("internal error: invalid Berge witness: {e}");
    }
    emb
}

/// A Berge copy of `f` in `h`, if any; the witness has the
/// lexicographically least vertex map among all copies.
pub fn find_berge(h: &Hypergraph, f: &UniformHypergraph) -> Option<BergeEmbedding> {
    let cons = full_constraints(f.n(), h.n());
    let vmap = least_vertex_map(h, f.base(), cons, VertexSet::EMPTY)?;
    Some(embedding(h, f.base(), vmap, None))
}

/// A Berge copy of `f` whose edge map uses host edge `t`.
pub fn find_berge_through(h: &Hypergraph, f: &UniformHypergraph, t: usize) -> Option<BergeEmbedding> {
    let target = h.edges()[t];
    for (i, e) in f.edges().iter().enumerate() {
        let mut cons = full_constraints(f.n(), h.n());
        for v in e.iter() {
            cons.allowed[v] = target;
        }
        cons.forced = Some((i, t));
        if let Some(vmap) = Searcher::new(h, f.base(), cons.clone(), *e).run() {
            return Some(embedding(h, f.base(), vmap, cons.forced));
        }
    }
    None
}

/// Whether some Berge copy of `f` uses host edge `t`.
pub fn has_berge_through(h: &Hypergraph, f: &UniformHypergraph, t: usize) -> bool {
    let target = h.edges()[t];
    f.edges().iter().enumerate().any(|(i, e)| {
        let mut cons = full_constraints(f.n(), h.n());
        for v in e.iter() {
            cons.allowed[v] = target;
        }
        cons.forced = Some((i, t));
        Searcher::new(h, f.base(), cons, *e).run().is_some()
    })
}

/// First family member with a Berge copy in `h`, with its witness.
pub fn find_berge_in_family(h: &Hypergraph, family: &[UniformHypergraph]) -> Option<(usize, BergeEmbedding)> {
    family.iter().enumerate().find_map(|(i, f)| find_berge(h, f).map(|e| (i, e)))
}

pub fn is_berge_free(h: &Hypergraph, family: &[UniformHypergraph]) -> bool {
    find_berge_in_family(h, family).is_none()
}

/// Number of hyperedges of `h` containing `e`.
pub fn shadow_multiplicity(h: &Hypergraph, e: VertexSet) -> usize {
    h.edges().iter().filter(|x| e.is_subset(**x)).count()
}

/// Shadow `r`-sets (with `r` the pattern uniformity) lying in at most
/// `|E(F)| - 1` hyperedges.
pub fn blue_edges(h: &Hypergraph, f: &UniformHypergraph) -> UniformHypergraph {
    let limit = f.edge_count().saturating_sub(1);
    let sh = shadow(h, f.r());
    let edges: Vec<Vec<usize>> = sh.edges().iter().filter(|&&e| shadow_multiplicity(h, e) <= limit).map(|e| e.to_vec()).collect();
    UniformHypergraph::from_lists(h.n(), f.r(), &edges).expect("subset of a valid shadow")
}

/// Builds a Berge copy over a given copy of `f` in the shadow of `h`, when
/// every image edge lies in at least `|E(F)|` hyperedges (so distinct
/// representatives exist by Hall's theorem).
pub fn greedy_berge_from_copy(h: &Hypergraph, f: &UniformHypergraph, vmap: &[usize]) -> Result<BergeEmbedding, BergeError> {
    if vmap.len() != f.n() || vmap.iter().any(|&v| v >= h.n()) || vmap.iter().collect::<BTreeSet<_>>().len() != vmap.len() {
        return Err(BergeError::BadVertexMap);
    }
    let required = f.edge_count();
    for e in f.edges() {
        let image = e.map(vmap);
        let multiplicity = shadow_multiplicity(h, image);
        if multiplicity < required {
            return Err(BergeError::Multiplicity { edge: image.to_vec(), multiplicity, required });
        }
    }
    Ok(embedding(h, f.base(), vmap.to_vec(), None))
}

/// All `k`-uniform Berge copies of `f` up to isomorphism, as canonical
/// forms sorted by vertex count, then edge masks. Each edge of `f` is enlarged by
/// `k - r` vertices drawn from the other pattern vertices and a pool of
/// fresh ones; unused fresh vertices are dropped.
pub fn enumerate_berge_copies(f: &UniformHypergraph, k: usize) -> Result<Vec<Hypergraph>, BergeError> {
    let r = f.r();
    if k < r {
        return Err(BergeError::Uniformity { k, r });
    }
    let pad = k - r;
    let total = f.n() + pad * f.edge_count();
    if total > crate::hypercore::MAX_VERTICES {
        return Err(BergeError::TooLarge(total));
    }
    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(f.edge_count());
    grow(f, pad, 0, f.n(), &mut chosen, &mut found);
    Ok(found
        .into_iter()
        .map(|(n, masks)| Hypergraph::from_sets_unchecked(n, masks.into_iter().map(VertexSet::from_bits).collect()))
        .collect())
}

/// Enlarges edge `i` onward; `next_fresh` is the first fresh vertex not yet
/// used, so fresh vertices appear in first-use order.
fn grow(f: &UniformHypergraph, pad: usize, i: usize, next_fresh: usize, chosen: &mut Vec<VertexSet>, found: &mut BTreeSet<(usize, Vec<u64>)>) {
    if i == f.edge_count() {
        let h = Hypergraph::from_sets_unchecked(next_fresh, chosen.clone());
        let form = canonical_form(&h).form;
        let mut masks: Vec<u64> = form.edges().iter().map(|e| e.bits()).collect();
        masks.sort_unstable();
        found.insert((next_fresh, masks));
        return;
    }
    let e = f.edges()[i];
    let reusable = VertexSet::prefix(next_fresh).difference(e);
    for new in 0..=pad {
        for old in reusable.subsets_of_size(pad - new) {
            let fresh: VertexSet = (next_fresh..next_fresh + new).collect();
            let edge = e.union(old).union(fresh);
            if chosen.contains(&edge) {
                continue;
            }
            chosen.push(edge);
            grow(f, pad, i + 1, next_fresh + new, chosen, found);
            chosen.pop();
        }
    }
}
