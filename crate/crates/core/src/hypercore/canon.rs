//! Canonical labeling by individualization and refinement.
//!
//! The search tree is label-equivariant: vertex colors are refined from
//! the incidence structure, the first non-singleton color cell is
//! individualized, and every discrete leaf `perm` (vertex `v` gets label
//! `perm[v]`) is scored by its image. The canonical form is the leaf image
//! whose edge masks, sorted ascending as integers, are lexicographically
//! least. Subtrees equivalent under automorphisms discovered along the way
//! are skipped, which keeps highly symmetric inputs (complete graphs,
//! Turán graphs) cheap.

use super::{Hypergraph, VertexSet};

/// Canonical edge list plus the relabeling that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCertificate {
    pub form: Hypergraph,
    /// `perm[v]` is the canonical label of input vertex `v`.
    pub perm: Vec<usize>,
}

/// Canonical form of `h`; isomorphic inputs give identical `form`s.
pub fn canonical_form(h: &Hypergraph) -> CanonicalCertificate {
    let n = h.n();
    let incidence: Vec<Vec<usize>> = (0..n).map(|v| (0..h.edge_count()).filter(|&i| h.edges()[i].contains(v)).collect()).collect();
    let mut search = Search { h, incidence, best: None, first: None, automorphisms: Vec::new() };
    let colors = search.refine(vec![0; n]);
    search.descend(colors, &mut Vec::new());
    let (image, perm) = search.best.expect("search visits at least one leaf");
    let edges = image.into_iter().map(VertexSet::from_bits).collect();
    CanonicalCertificate { form: Hypergraph::from_sets_unchecked(n, edges), perm }
}

type Leaf = (Vec<u64>, Vec<usize>);

struct Search<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<usize>>,
    best: Option<Leaf>,
    first: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

/// Replaces each key by its rank among the distinct keys.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter().map(|k| distinct.binary_search(k).expect("key present")).collect()
}

fn cell_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |&m| m + 1)
}

impl Search<'_> {
    /// Equitable refinement of the vertex coloring against the edge set.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let edges = self.h.edges();
        loop {
            let edge_keys: Vec<(usize, Vec<usize>)> = edges
                .iter()
                .map(|e| {
                    let mut c: Vec<usize> = e.iter().map(|v| colors[v]).collect();
                    c.sort_unstable();
                    (e.len(), c)
                })
                .collect();
            let edge_class = rank(&edge_keys);
            let vertex_keys: Vec<(usize, Vec<usize>)> = (0..colors.len())
                .map(|v| {
                    let mut c: Vec<usize> = self.incidence[v].iter().map(|&i| edge_class[i]).collect();
                    c.sort_unstable();
                    (colors[v], c)
                })
                .collect();
            let next = rank(&vertex_keys);
            if cell_count(&next) == cell_count(&colors) {
                return next;
            }
            colors = next;
        }
    }

    fn image(&self, perm: &[usize]) -> Vec<u64> {
        let mut masks: Vec<u64> = self.h.edges().iter().map(|e| e.map(perm).bits()).collect();
        masks.sort_unstable();
        masks
    }

    fn record_leaf(&mut self, perm: Vec<usize>) {
        let image = self.image(&perm);
        if let Some((first_image, first_perm)) = &self.first {
            if *first_image == image {
                let gamma = automorphism(first_perm, &perm);
                self.automorphisms.push(gamma);
            }
        } else {
            self.first = Some((image.clone(), perm.clone()));
        }
        match &self.best {
            Some((best_image, best_perm)) if *best_image == image => {
                let gamma = automorphism(best_perm, &perm);
                self.automorphisms.push(gamma);
            }
            Some((best_image, _)) if *best_image < image => {}
            _ => self.best = Some((image, perm)),
        }
    }

    fn descend(&mut self, colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let n = colors.len();
        if cell_count(&colors) == n {
            self.record_leaf(colors);
            return;
        }
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = (0..n).find(|&c| sizes[c] > 1).expect("non-discrete coloring has a large cell");
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.same_orbit(prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            let keys: Vec<(usize, bool)> = (0..n).map(|w| (colors[w], w != v)).collect();
            let child = self.refine(rank(&keys));
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    /// Whether `v` lies in the orbit of some already tried vertex under the
    /// group generated by known automorphisms fixing `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.h.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

/// Given two labelings with the same image, the input automorphism
/// `a^-1 . b`, i.e. `gamma[v] = a^-1(b(v))`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; a.len()];
    for (v, &label) in a.iter().enumerate() {
        inverse[label] = v;
    }
    b.iter().map(|&label| inverse[label]).collect()
}

#[cfg(test)]
mod tests {
    use super::super::{complete_uniform, make_hypergraph, turan_hypergraph};
    use super::*;
    use std::collections::BTreeSet;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Minimum image over every permutation; a complete invariant.
    fn brute_form(h: &Hypergraph) -> Vec<u64> {
        all_perms(h.n())
            .iter()
            .map(|p| {
                let mut m: Vec<u64> = h.edges().iter().map(|e| e.map(p).bits()).collect();
                m.sort_unstable();
                m
            })
            .min()
            .unwrap()
    }

    fn masks(h: &Hypergraph) -> Vec<u64> {
        let mut m: Vec<u64> = h.edges().iter().map(|e| e.bits()).collect();
        m.sort_unstable();
        m
    }

    #[test]
    fn certificate_relabels_input() {
        let h = make_hypergraph(5, &[vec![0, 1, 4], vec![1, 2], vec![2, 3, 4]]).unwrap();
        let c = canonical_form(&h);
        assert_eq!(h.relabel(&c.perm), c.form);
    }

    #[test]
    fn triangle_relabelings_agree() {
        let tri = make_hypergraph(5, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let base = canonical_form(&tri).form;
        for p in all_perms(5) {
            assert_eq!(canonical_form(&tri.relabel(&p)).form, base);
        }
        let p3 = make_hypergraph(5, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_ne!(canonical_form(&p3).form, base);
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let pairs = VertexSet::prefix(4).subsets_of_size(2);
        let mut brute = BTreeSet::new();
        let mut ours = BTreeSet::new();
        for mask in 0u32..64 {
            let edges: Vec<VertexSet> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = Hypergraph::from_sets(4, edges).unwrap();
            brute.insert(brute_form(&g));
            ours.insert(masks(&canonical_form(&g).form));
        }
        assert_eq!(brute.len(), 11);
        assert_eq!(ours.len(), 11);
    }

    #[test]
    fn invariant_under_every_relabeling() {
        let cases = [
            make_hypergraph(5, &[vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![1]]).unwrap(),
            make_hypergraph(6, &[vec![0, 1, 2], vec![3, 4, 5], vec![0, 3]]).unwrap(),
            complete_uniform(5, 3).unwrap().into_base(),
            Hypergraph::empty(4),
        ];
        for h in &cases {
            let base = canonical_form(h).form;
            for p in all_perms(h.n()) {
                assert_eq!(canonical_form(&h.relabel(&p)).form, base, "{h:?} under {p:?}");
            }
        }
    }

    #[test]
    fn symmetric_inputs_stay_cheap() {
        let k12 = complete_uniform(12, 2).unwrap();
        assert_eq!(canonical_form(&k12).form, k12.clone().into_base());
        let t = turan_hypergraph(12, 3, 4).unwrap();
        let c = canonical_form(&t);
        assert_eq!(t.relabel(&c.perm).into_base(), c.form);
    }
}
