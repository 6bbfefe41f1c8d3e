//! Hypergraph values, the standard constructions, shadows, subgraph
//! counting and canonical forms.
//!
//! Vertices are dense integers `0..n` with `n <= 64`; every hyperedge is a
//! [`VertexSet`] bit mask so containment is a single AND. Edge lists are
//! kept sorted in lexicographic order of their ascending vertex sequences,
//! which gives every value a deterministic identity and stable file output.

mod canon;
mod chromatic;
mod constructions;
mod counting;
pub mod format;
mod vertex_set;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_form, CanonicalCertificate};
pub use chromatic::chromatic_number;
pub use constructions::{clique_replacement, complete_uniform, expansion, star_construction, turan_hypergraph};
pub use counting::{count_cliques, count_sub_copies, enumerate_sub_copies, CopyFinder, EdgeLookup};
pub(crate) use constructions::turan_edge_count;
pub(crate) use counting::count_cliques_with;
pub use vertex_set::{binomial, VertexIter, VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("edge at position {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("empty edge at position {0}")]
    EmptyEdge(usize),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("edge {edge:?} has size {size}, expected uniformity {r}")]
    NotUniform { edge: Vec<usize>, size: usize, r: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("color list has {colors} entries for {edges} edges")]
    ColorCount { colors: usize, edges: usize },
}

/// A finite hypergraph on vertices `0..n` with pairwise distinct,
/// nonempty edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph from explicit vertex lists. Edges may be given
    /// in any order; duplicates are rejected.
    pub fn new(n: usize, edge_list: &[Vec<usize>]) -> Result<Self, HypergraphError> {
        if n > MAX_VERTICES {
            return Err(HypergraphError::TooManyVertices(n));
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (i, e) in edge_list.iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            let mut set = VertexSet::EMPTY;
            for &v in e {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
                }
                set.insert(v);
            }
            if set.len() != e.len() {
                return Err(HypergraphError::RepeatedVertex(i));
            }
            edges.push(set);
        }
        Self::from_sets(n, edges)
    }

    /// Builds a hypergraph from vertex sets, normalizing edge order.
    pub fn from_sets(n: usize, mut edges: Vec<VertexSet>) -> Result<Self, HypergraphError> {
        if n > MAX_VERTICES {
            return Err(HypergraphError::TooManyVertices(n));
        }
        let bound = VertexSet::prefix(n);
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            if !e.is_subset(bound) {
                let vertex = e.difference(bound).min().unwrap_or(n);
                return Err(HypergraphError::VertexOutOfRange { vertex, n });
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateEdge(w[0].to_vec()));
        }
        Ok(Hypergraph { n, edges })
    }

    /// Same as [`Hypergraph::from_sets`] for inputs already known to be
    /// valid (distinct, nonempty, in range).
    pub(crate) fn from_sets_unchecked(n: usize, mut edges: Vec<VertexSet>) -> Self {
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0] != w[1]));
        Hypergraph { n, edges }
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }

    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Index of `e` in the sorted edge list.
    pub fn edge_index(&self, e: VertexSet) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Common size of all edges, if the hypergraph is uniform and nonempty.
    pub fn uniformity(&self) -> Option<usize> {
        let r = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == r).then_some(r)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let edges = self.edges.iter().map(|e| e.map(perm)).collect();
        Hypergraph::from_sets_unchecked(self.n, edges)
    }

    /// Appends `extra` isolated vertices.
    pub fn with_extra_vertices(&self, extra: usize) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::from_sets(self.n + extra, self.edges.clone())
    }

    /// Subhypergraph formed by the edges at the given indices.
    pub fn edge_subgraph(&self, indices: &[usize]) -> Hypergraph {
        Hypergraph::from_sets_unchecked(self.n, indices.iter().map(|&i| self.edges[i]).collect())
    }

    /// Adds one edge, failing on duplicates.
    pub fn with_edge(&self, e: VertexSet) -> Result<Hypergraph, HypergraphError> {
        let mut edges = self.edges.clone();
        edges.push(e);
        Hypergraph::from_sets(self.n, edges)
    }
}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hypergraph(n={}, {:?})", self.n, self.edge_lists())
    }
}

/// [`make_hypergraph`] under its operation name.
pub fn make_hypergraph(n: usize, edge_list: &[Vec<usize>]) -> Result<Hypergraph, HypergraphError> {
    Hypergraph::new(n, edge_list)
}

/// A hypergraph whose edges all have exactly `r` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    base: Hypergraph,
    r: usize,
}

impl UniformHypergraph {
    pub fn new(base: Hypergraph, r: usize) -> Result<Self, HypergraphError> {
        if r == 0 {
            return Err(HypergraphError::InvalidParameters("uniformity must be at least 1".into()));
        }
        if let Some(e) = base.edges.iter().find(|e| e.len() != r) {
            return Err(HypergraphError::NotUniform { edge: e.to_vec(), size: e.len(), r });
        }
        Ok(UniformHypergraph { base, r })
    }

    pub fn from_lists(n: usize, r: usize, edge_list: &[Vec<usize>]) -> Result<Self, HypergraphError> {
        Self::new(Hypergraph::new(n, edge_list)?, r)
    }

    pub(crate) fn from_sets_unchecked(n: usize, r: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.iter().all(|e| e.len() == r));
        UniformHypergraph { base: Hypergraph::from_sets_unchecked(n, edges), r }
    }

    /// Infers the uniformity from the edges; an edgeless hypergraph needs
    /// an explicit `r`, passed as `fallback`.
    pub fn infer(base: Hypergraph, fallback: usize) -> Result<Self, HypergraphError> {
        let r = base.edges.first().map_or(fallback, |e| e.len());
        Self::new(base, r)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn into_base(self) -> Hypergraph {
        self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.base.edges
    }

    pub fn edge_count(&self) -> usize {
        self.base.edges.len()
    }

    pub fn relabel(&self, perm: &[usize]) -> UniformHypergraph {
        UniformHypergraph { base: self.base.relabel(perm), r: self.r }
    }
}

impl std::ops::Deref for UniformHypergraph {
    type Target = Hypergraph;

    fn deref(&self) -> &Hypergraph {
        &self.base
    }
}

impl std::fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-graph(n={}, {:?})", self.r, self.base.n, self.base.edge_lists())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// A uniform hypergraph with a red/blue color on every edge. Colors are
/// index-aligned with the (sorted) edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedBlueHypergraph {
    base: UniformHypergraph,
    colors: Vec<Color>,
}

impl RedBlueHypergraph {
    /// Colors are given per input edge; both are re-sorted together.
    pub fn new(n: usize, r: usize, colored: Vec<(VertexSet, Color)>) -> Result<Self, HypergraphError> {
        let edges: Vec<VertexSet> = colored.iter().map(|&(e, _)| e).collect();
        let base = UniformHypergraph::new(Hypergraph::from_sets(n, edges)?, r)?;
        let mut colored = colored;
        colored.sort_unstable_by_key(|a| a.0);
        let colors = colored.into_iter().map(|(_, c)| c).collect();
        Ok(RedBlueHypergraph { base, colors })
    }

    pub fn from_parts(base: UniformHypergraph, colors: Vec<Color>) -> Result<Self, HypergraphError> {
        if colors.len() != base.edge_count() {
            return Err(HypergraphError::ColorCount { colors: colors.len(), edges: base.edge_count() });
        }
        Ok(RedBlueHypergraph { base, colors })
    }

    pub fn base(&self) -> &UniformHypergraph {
        &self.base
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn r(&self) -> usize {
        self.base.r
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    fn part(&self, color: Color) -> UniformHypergraph {
        let edges = self.base.edges().iter().zip(&self.colors).filter(|(_, &c)| c == color).map(|(&e, _)| e).collect();
        UniformHypergraph::from_sets_unchecked(self.n(), self.r(), edges)
    }

    pub fn red(&self) -> UniformHypergraph {
        self.part(Color::Red)
    }

    pub fn blue(&self) -> UniformHypergraph {
        self.part(Color::Blue)
    }
}

/// The `r`-shadow: every `r`-set contained in some edge. Edges smaller
/// than `r` contribute nothing.
pub fn shadow(h: &Hypergraph, r: usize) -> UniformHypergraph {
    assert!(r >= 1, "shadow uniformity must be at least 1");
    let mut sets: Vec<VertexSet> = h.edges.iter().filter(|e| e.len() >= r).flat_map(|e| e.subsets_of_size(r)).collect();
    sets.sort_unstable_by_key(|s| s.bits());
    sets.dedup();
    UniformHypergraph::from_sets_unchecked(h.n, r, sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_normalizes_edges() {
        let h = make_hypergraph(3, &[vec![2, 0, 1]]).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_lists(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn make_rejects_duplicates() {
        let err = make_hypergraph(3, &[vec![0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(err, HypergraphError::DuplicateEdge(vec![0, 1]));
    }

    #[test]
    fn make_rejects_out_of_range_and_empty() {
        assert_eq!(make_hypergraph(2, &[vec![0, 2]]).unwrap_err(), HypergraphError::VertexOutOfRange { vertex: 2, n: 2 });
        assert_eq!(make_hypergraph(2, &[vec![0], vec![]]).unwrap_err(), HypergraphError::EmptyEdge(1));
        assert!(matches!(make_hypergraph(65, &[]), Err(HypergraphError::TooManyVertices(65))));
    }

    #[test]
    fn edge_list_sorted_lexicographically() {
        let h = make_hypergraph(4, &[vec![1, 2], vec![0, 3], vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert_eq!(h.edge_lists(), vec![vec![0, 1], vec![0, 1, 2], vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn shadow_examples() {
        let tri = make_hypergraph(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(shadow(&tri, 2).edge_lists(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);

        let pair = make_hypergraph(2, &[vec![0, 1]]).unwrap();
        let s = shadow(&pair, 3);
        assert_eq!(s.edge_count(), 0);
        assert_eq!(s.n(), 2);

        // union of two 3-element shadows sharing the pair 12
        let two = make_hypergraph(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let s = shadow(&two, 2);
        let brute: std::collections::BTreeSet<(usize, usize)> = two
            .edge_lists()
            .iter()
            .flat_map(|e| {
                let mut v = Vec::new();
                for i in 0..e.len() {
                    for j in i + 1..e.len() {
                        v.push((e[i], e[j]));
                    }
                }
                v
            })
            .collect();
        assert_eq!(s.edge_count(), brute.len());
        assert_eq!(s.edge_count(), 5);
    }

    #[test]
    fn uniform_rejects_mixed_sizes() {
        let h = make_hypergraph(3, &[vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert!(matches!(UniformHypergraph::new(h, 2), Err(HypergraphError::NotUniform { .. })));
    }

    #[test]
    fn red_blue_colors_follow_sorting() {
        let rb = RedBlueHypergraph::new(
            3,
            2,
            vec![(VertexSet::from_bits(0b110), Color::Blue), (VertexSet::from_bits(0b011), Color::Red)],
        )
        .unwrap();
        assert_eq!(rb.colors(), &[Color::Red, Color::Blue]);
        assert_eq!(rb.red().edge_lists(), vec![vec![0, 1]]);
        assert_eq!(rb.blue().edge_lists(), vec![vec![1, 2]]);
    }
}
