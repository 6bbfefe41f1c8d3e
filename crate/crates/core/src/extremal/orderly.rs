//! Colex indexing of `r`-sets and the maximal-code canonicity test used by
//! orderly generation.
//!
//! A labeled `r`-graph is encoded by its indicator vector over all
//! `r`-subsets of `0..n` in colex order, position 0 most significant. A
//! graph is canonical when no relabeling yields a larger code. Deleting
//! the edge with the largest colex index from a canonical graph leaves a
//! canonical graph, so extending canonical graphs by edges past their last
//! one and keeping canonical results visits every isomorphism class once.

use crate::hypercore::{binomial, Hypergraph, VertexSet};

/// Edge sets are bitsets over colex positions; this caps `C(n, r)`.
pub(crate) const MAX_POSITIONS: usize = 128;

pub(crate) type Bits = u128;

#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub n: usize,
    pub r: usize,
    /// All `r`-subsets of `0..n` in colex order.
    pub sets: Vec<VertexSet>,
    binom: Vec<Vec<usize>>,
    /// For each label `t`, the `(r-1)`-subsets of `0..t` in colex order.
    blocks: Vec<Vec<VertexSet>>,
}

impl Layout {
    /// `None` when `C(n, r)` exceeds [`MAX_POSITIONS`].
    pub fn new(n: usize, r: usize) -> Option<Self> {
        if r == 0 || binomial(n as u64, r as u64) as usize > MAX_POSITIONS {
            return None;
        }
        let mut sets = VertexSet::prefix(n).subsets_of_size(r);
        sets.sort_unstable_by_key(|s| s.bits());
        let binom = (0..=n).map(|a| (0..=r).map(|b| binomial(a as u64, b as u64) as usize).collect()).collect();
        let blocks = (0..n)
            .map(|t| {
                let mut b = VertexSet::prefix(t).subsets_of_size(r - 1);
                b.sort_unstable_by_key(|s| s.bits());
                b
            })
            .collect();
        Some(Layout { n, r, sets, binom, blocks })
    }

    pub fn positions(&self) -> usize {
        self.sets.len()
    }

    /// Colex position of an `r`-set.
    pub fn rank(&self, s: VertexSet) -> usize {
        s.iter().enumerate().map(|(i, v)| self.binom[v][i + 1]).sum()
    }

    pub fn contains(&self, bits: Bits, s: VertexSet) -> bool {
        bits >> self.rank(s) & 1 == 1
    }

    pub fn edges(&self, bits: Bits) -> impl Iterator<Item = VertexSet> + '_ {
        (0..self.positions()).filter(move |&i| bits >> i & 1 == 1).map(|i| self.sets[i])
    }

    pub fn to_hypergraph(&self, bits: Bits) -> Hypergraph {
        Hypergraph::from_sets(self.n, self.edges(bits).collect()).expect("layout sets are valid edges")
    }

    /// Whether `bits` has the maximal code among all relabelings.
    pub fn is_canonical(&self, bits: Bits) -> bool {
        if bits == 0 {
            return true;
        }
        let last = 127 - bits.leading_zeros() as usize;
        let top = self.sets[last].max().expect("nonempty edge");
        let mut order = Vec::with_capacity(self.n);
        !self.find_larger(bits, top, &mut order, VertexSet::EMPTY)
    }

    /// Depth-first over relabelings, label `t = order.len()` next. Returns
    /// `true` as soon as some relabeling gives a larger code.
    fn find_larger(&self, bits: Bits, top: usize, order: &mut Vec<usize>, used: VertexSet) -> bool {
        let t = order.len();
        for v in 0..self.n {
            if used.contains(v) {
                continue;
            }
            order.push(v);
            let mut verdict = std::cmp::Ordering::Equal;
            for &s in &self.blocks[t] {
                let ours = self.contains(bits, s.union(VertexSet::singleton(t)));
                let mut pre = VertexSet::singleton(v);
                for label in s.iter() {
                    pre.insert(order[label]);
                }
                let theirs = self.contains(bits, pre);
                if theirs != ours {
                    verdict = if theirs { std::cmp::Ordering::Greater } else { std::cmp::Ordering::Less };
                    break;
                }
            }
            let larger = match verdict {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                // equal through the last edge means equal overall
                std::cmp::Ordering::Equal => t < top && self.find_larger(bits, top, order, used.union(VertexSet::singleton(v))),
            };
            order.pop();
            if larger {
                return true;
            }
        }
        false
    }
}
