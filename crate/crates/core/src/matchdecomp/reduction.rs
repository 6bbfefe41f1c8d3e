use serde::{Deserialize, Serialize};

use super::partition::{check_partition, matching_partition, MatchingPartition};
use super::BipartiteGraph;
use crate::hypercore::{count_cliques, shadow, Color, HypergraphError, RedBlueHypergraph, UniformHypergraph};

/// Containment graph between the edges of an `r`-graph (side A) and its
/// `k`-shadow (side B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceBipartite {
    pub graph: BipartiteGraph,
    pub shadow: UniformHypergraph,
}

pub fn incidence_bipartite(h0: &UniformHypergraph, k: usize) -> Result<IncidenceBipartite, HypergraphError> {
    if k == 0 || k > h0.r() {
        return Err(HypergraphError::InvalidParameters(format!("shadow uniformity {k} must lie in 1..={}", h0.r())));
    }
    let sh = shadow(h0, k);
    let adj = h0
        .edges()
        .iter()
        .map(|&a| a.subsets_of_size(k).into_iter().map(|b| sh.edge_index(b).expect("subset lies in the shadow")).collect())
        .collect();
    let graph = BipartiteGraph::new(sh.edge_count(), adj).expect("indices come from the shadow");
    Ok(IncidenceBipartite { graph, shadow: sh })
}

/// Red edge count plus the number of `K_r^(k)` in the blue part.
pub fn g_value(h: &RedBlueHypergraph, r: usize) -> Result<u64, HypergraphError> {
    let red = h.colors().iter().filter(|&&c| c == Color::Red).count() as u64;
    Ok(red + count_cliques(&h.blue(), r)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub edges: usize,
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
    pub g_value: u64,
    /// `g >= |E(H0)|`.
    pub g_at_least_edges: bool,
    /// Every `k`-subset of every `A2` edge is blue.
    pub a2_subsets_blue: bool,
    /// Copies of `K_r^(k)` in the red part, measured rather than assumed.
    pub red_cliques: u64,
    pub red_clique_free: bool,
    /// Whether the partition also met the free-neighbor clause. The
    /// reduction itself only needs the other four conditions, so it goes
    /// ahead with the partial certificate when this is false.
    pub full_partition: bool,
    pub partition_error: Option<String>,
    pub partition: MatchingPartition,
}

/// Colors the matched part of the `k`-shadow of `h0`: matched to `A1`
/// edges is red, matched to `A2` edges is blue.
pub fn redblue_reduction(h0: &UniformHypergraph, k: usize, r: usize) -> Result<(RedBlueHypergraph, ReductionReport), HypergraphError> {
    if r < k {
        return Err(HypergraphError::InvalidParameters(format!("clique size {r} is below the target uniformity {k}")));
    }
    let inc = incidence_bipartite(h0, k)?;
    let (partition, full, error) = match matching_partition(&inc.graph) {
        Ok(p) => (p, true, None),
        Err(e) => (e.partial().clone(), false, Some(e.to_string())),
    };
    assert!(check_partition(&inc.graph, &partition).structural(), "partial certificate violates its structural conditions");
    let sh = inc.shadow.edges();
    let mut colored: Vec<_> = partition.b1.iter().map(|&b| (sh[b], Color::Red)).collect();
    colored.extend(partition.b2.iter().map(|&b| (sh[b], Color::Blue)));
    let out = RedBlueHypergraph::new(h0.n(), k, colored)?;

    let g = g_value(&out, r)?;
    let blue = out.blue();
    let a2_subsets_blue = partition.a2.iter().all(|&a| h0.edges()[a].subsets_of_size(k).into_iter().all(|s| blue.contains_edge(s)));
    let red_cliques = count_cliques(&out.red(), r)?;
    let report = ReductionReport {
        edges: h0.edge_count(),
        a1: partition.a1.len(),
        a2: partition.a2.len(),
        b1: partition.b1.len(),
        b2: partition.b2.len(),
        g_value: g,
        g_at_least_edges: g >= h0.edge_count() as u64,
        a2_subsets_blue,
        red_cliques,
        red_clique_free: red_cliques == 0,
        full_partition: full,
        partition_error: error,
        partition,
    };
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{complete_uniform, Hypergraph, VertexSet};

    #[test]
    fn incidence_examples() {
        let tri = complete_uniform(3, 3).unwrap();
        let inc = incidence_bipartite(&tri, 2).unwrap();
        assert_eq!((inc.graph.size_a(), inc.graph.size_b(), inc.graph.edge_count()), (1, 3, 3));

        let k43 = complete_uniform(4, 3).unwrap();
        let inc = incidence_bipartite(&k43, 2).unwrap();
        assert_eq!((inc.graph.size_a(), inc.graph.size_b()), (4, 6));
        assert!((0..4).all(|a| inc.graph.neighbors(a).len() == 3));

        let inc = incidence_bipartite(&k43, 3).unwrap();
        assert!((0..4).all(|a| inc.graph.neighbors(a) == [a]));
        assert!(incidence_bipartite(&k43, 4).is_err());
    }

    #[test]
    fn g_value_examples() {
        let k4 = complete_uniform(4, 2).unwrap();
        // blue K4 on 0..4 plus red pairs {4,5} and {4,6}
        let mut colored: Vec<_> = k4.edges().iter().map(|&e| (e, Color::Blue)).collect();
        colored.push((VertexSet::from_bits(0b011_0000), Color::Red));
        colored.push((VertexSet::from_bits(0b101_0000), Color::Red));
        let h = RedBlueHypergraph::new(7, 2, colored).unwrap();
        assert_eq!(g_value(&h, 3).unwrap(), 6);

        let all_red = RedBlueHypergraph::from_parts(k4.clone(), vec![Color::Red; 6]).unwrap();
        assert_eq!(g_value(&all_red, 3).unwrap(), 6);
        let all_blue = RedBlueHypergraph::from_parts(k4.clone(), vec![Color::Blue; 6]).unwrap();
        assert_eq!(g_value(&all_blue, 3).unwrap(), count_cliques(&k4, 3).unwrap());
        assert!(g_value(&all_blue, 1).is_err());
    }

    #[test]
    fn reduction_examples() {
        let empty = UniformHypergraph::new(Hypergraph::empty(4), 3).unwrap();
        let (out, rep) = redblue_reduction(&empty, 2, 3).unwrap();
        assert_eq!(out.base().edge_count(), 0);
        assert_eq!(rep.g_value, 0);

        let tri = complete_uniform(3, 3).unwrap();
        let (out, rep) = redblue_reduction(&tri, 2, 3).unwrap();
        assert_eq!(out.red().edge_count(), 1);
        assert_eq!(out.blue().edge_count(), 0);
        assert_eq!(rep.g_value, 1);
        assert!(rep.g_at_least_edges && rep.full_partition);
    }
}
