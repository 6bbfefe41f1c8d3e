//! Diagonal two-color Ramsey numbers by exhaustive coloring search.
//!
//! For each order `N` the edges of `K_N^(r)` are colored in colex order.
//! The edges inside the first `r + 1` vertices are colored up front and
//! only one coloring per orbit under vertex permutations of that block and
//! color swap is kept; each survivor seeds an independent depth-first task.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Serialize, Serializer};

use super::engine::EdgeView;
use super::orderly::{Bits, Layout};
use super::ExtremalError;
use crate::hypercore::{count_sub_copies, CopyFinder, Hypergraph, UniformHypergraph, VertexSet};
use crate::par;

fn serialize_edges<S: Serializer>(h: &Hypergraph, s: S) -> Result<S::Ok, S::Error> {
    h.edge_lists().serialize(s)
}

/// A 2-coloring of `K_n^(r)` with no monochromatic copy of the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyWitness {
    pub n: usize,
    #[serde(serialize_with = "serialize_edges")]
    pub red: Hypergraph,
    #[serde(serialize_with = "serialize_edges")]
    pub blue: Hypergraph,
}

impl RamseyWitness {
    /// Independent check: the classes partition all `r`-sets and neither
    /// holds a copy of `f`.
    pub fn validate(&self, f: &UniformHypergraph) -> bool {
        let all = VertexSet::prefix(self.n).subsets_of_size(f.r());
        let covered = all.iter().all(|&e| self.red.contains_edge(e) != self.blue.contains_edge(e));
        let sized = self.red.edge_count() + self.blue.edge_count() == all.len();
        covered && sized && count_sub_copies(f, &self.red) == 0 && count_sub_copies(f, &self.blue) == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyResult {
    /// `None` when every order up to `cap` has a good coloring.
    pub value: Option<usize>,
    pub cap: usize,
    /// Good coloring of the largest order searched below `value` (or of
    /// `K_cap` when the cap was exceeded).
    pub witness: Option<RamseyWitness>,
    pub nodes: u64,
}

struct Order<'a> {
    layout: Layout,
    finder: &'a CopyFinder,
}

impl Order<'_> {
    /// Whether coloring position `pos` into `class` keeps that class free.
    fn admits(&self, class: Bits, pos: usize) -> bool {
        let e = self.layout.sets[pos];
        let view = EdgeView::new(&self.layout, class | 1 << pos);
        !self.finder.exists_through(&view, self.layout.n, e)
    }

    /// Extends a partial coloring of positions `..pos` to a full good one.
    fn extend(&self, red: Bits, blue: Bits, pos: usize, nodes: &mut u64) -> Option<(Bits, Bits)> {
        *nodes += 1;
        if pos == self.layout.positions() {
            return Some((red, blue));
        }
        if self.admits(red, pos) {
            if let Some(done) = self.extend(red | 1 << pos, blue, pos + 1, nodes) {
                return Some(done);
            }
        }
        if self.admits(blue, pos) {
            return self.extend(red, blue | 1 << pos, pos + 1, nodes);
        }
        None
    }

    /// Good colorings of the first `block` positions, one per orbit.
    /// In colex order those are the edges inside the first `block_vertices`.
    fn seeds(&self, block_vertices: usize, block: usize) -> Vec<Bits> {
        let perms = permutations(block_vertices);
        let full: Bits = (1 << block) - 1;
        let mut out = Vec::new();
        for red in 0..(1u128 << block) {
            let image = |bits: Bits, perm: &[usize]| -> Bits {
                (0..block).filter(|&i| bits >> i & 1 == 1).fold(0, |acc, i| acc | 1 << self.layout.rank(self.layout.sets[i].map(perm)))
            };
            // representative: smallest code when position 0 is most significant
            let key = |bits: Bits| bits.reverse_bits();
            let minimal = perms.iter().all(|p| {
                let r = image(red, p);
                key(r) >= key(red) && key(full & !r) >= key(red)
            });
            if minimal && self.good_block(red, full & !red, block) {
                out.push(red);
            }
        }
        out
    }

    fn good_block(&self, red: Bits, blue: Bits, block: usize) -> bool {
        let mut r = 0;
        let mut b = 0;
        for pos in 0..block {
            if red >> pos & 1 == 1 {
                if !self.admits(r, pos) {
                    return false;
                }
                r |= 1 << pos;
            } else {
                if !self.admits(b, pos) {
                    return false;
                }
                b |= 1 << pos;
            }
        }
        debug_assert_eq!((r, b), (red, blue));
        true
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn rec(cur: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(cur, i + 1, out);
            cur.swap(i, j);
        }
    }
    rec(&mut cur, 0, &mut out);
    out
}

/// Searches for a good coloring of `K_n^(r)`; returns it with the node count.
fn good_coloring(finder: &CopyFinder, n: usize, r: usize, workers: usize) -> Result<(Option<RamseyWitness>, u64), ExtremalError> {
    let layout = Layout::new(n, r).ok_or(ExtremalError::TooLarge { n, r })?;
    let order = Order { layout, finder };
    let block_vertices = n.min(r + 1);
    let block = binomial_usize(block_vertices, r);
    let seeds = order.seeds(block_vertices, block);
    let counters: Vec<AtomicU64> = seeds.iter().map(|_| AtomicU64::new(0)).collect();
    let indexed: Vec<(usize, Bits)> = seeds.iter().copied().enumerate().collect();
    let full: Bits = (1u128 << block) - 1;
    let found = par::find_map_first(&indexed, workers, |&(i, red)| {
        let mut nodes = 0;
        let out = order.extend(red, full & !red, block, &mut nodes);
        counters[i].store(nodes, Ordering::Relaxed);
        out.map(|c| (i, c))
    });
    let last = found.map_or(seeds.len(), |(i, _)| i + 1);
    let nodes = seeds.len() as u64 + counters[..last].iter().map(|c| c.load(Ordering::Relaxed)).sum::<u64>();
    let witness = found.map(|(_, (red, blue))| RamseyWitness { n, red: order.layout.to_hypergraph(red), blue: order.layout.to_hypergraph(blue) });
    Ok((witness, nodes))
}

fn binomial_usize(n: usize, k: usize) -> usize {
    crate::hypercore::binomial(n as u64, k as u64) as usize
}

/// `R^(r)(F, F)` if it is at most `cap`.
pub fn ramsey_number(f: &UniformHypergraph, cap: usize, workers: usize) -> Result<RamseyResult, ExtremalError> {
    let r = f.r();
    if f.edge_count() == 0 {
        return Err(ExtremalError::InvalidParameters("pattern has no edges".into()));
    }
    if cap < r {
        return Err(ExtremalError::InvalidParameters(format!("cap {cap} is below the uniformity {r}")));
    }
    let finder = CopyFinder::new(f);
    let mut nodes = 0;
    // K_{r-1}^(r) has no edges, so its empty coloring is good
    let mut witness = RamseyWitness { n: r - 1, red: Hypergraph::empty(r - 1), blue: Hypergraph::empty(r - 1) };
    for n in r..=cap {
        let (good, spent) = good_coloring(&finder, n, r, workers)?;
        nodes += spent;
        match good {
            Some(w) => witness = w,
            None => {
                assert!(witness.validate(f), "internal error: stored Ramsey witness is not a good coloring");
                return Ok(RamseyResult { value: Some(n), cap, witness: Some(witness), nodes });
            }
        }
    }
    assert!(witness.validate(f), "internal error: stored Ramsey witness is not a good coloring");
    Ok(RamseyResult { value: None, cap, witness: Some(witness), nodes })
}
