//! Exact small-case checks of inequalities between extremal numbers.
//! A report only passes when every search it relies on ran to completion.

use serde::Serialize;

use super::{ex_berge, ex_generalized, ex_uniform, ExtremalError, ExtremalOptions, ExtremalResult};
use crate::berge::find_berge;
use crate::hypercore::{chromatic_number, clique_replacement, expansion, UniformHypergraph};

/// `ex_k(n, K_r^(k), F) <= ex_r(n, Berge-F) <= ex_k(n, K_r^(k), F) + ex_k(n, F)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub generalized: ExtremalResult,
    pub berge: ExtremalResult,
    pub uniform: ExtremalResult,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// Edges of the `r`-graph obtained by replacing each `K_r^(k)` of the
    /// generalized witness with an `r`-edge.
    pub construction_edges: u64,
    pub construction_berge_free: bool,
    pub exhausted: bool,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.exhausted && self.lower_holds && self.upper_holds && self.construction_berge_free
    }
}

pub fn verify_sandwich(n: usize, k: usize, r: usize, f: &UniformHypergraph, opts: &ExtremalOptions) -> Result<SandwichReport, ExtremalError> {
    if k > r {
        return Err(ExtremalError::InvalidParameters(format!("uniformity {k} exceeds clique size {r}")));
    }
    let generalized = ex_generalized(n, k, r, f, opts)?;
    let berge = ex_berge(n, r, f, opts)?;
    let uniform = ex_uniform(n, k, f, opts)?;

    let witness = UniformHypergraph::new(generalized.witnesses[0].clone(), k).expect("witness is k-uniform");
    let construction = clique_replacement(&witness, r).expect("r >= k");
    let construction_berge_free = find_berge(&construction, f).is_none();

    Ok(SandwichReport {
        n,
        k,
        r,
        lower_holds: generalized.value <= berge.value,
        upper_holds: berge.value <= generalized.value + uniform.value,
        construction_edges: construction.edge_count() as u64,
        construction_berge_free,
        exhausted: generalized.exhausted && berge.exhausted && uniform.exhausted,
        generalized,
        berge,
        uniform,
    })
}

/// `ex_r(n, Berge-F0) <= ex_r(n, Berge-F0^{+k}) <= ex_r(n, F0^{+r})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionChainReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub left: ExtremalResult,
    pub middle: ExtremalResult,
    pub right: ExtremalResult,
    pub left_holds: bool,
    pub right_holds: bool,
    /// Chromatic number of `F0`.
    pub chromatic: usize,
    /// `|E(T^r(n, m - 1))|`, reported when `m > r > k`.
    pub turan_edges: Option<u64>,
    /// Whether the middle value reaches `turan_edges`; informational only.
    pub middle_at_least_turan: Option<bool>,
    pub exhausted: bool,
}

impl ExpansionChainReport {
    pub fn passed(&self) -> bool {
        self.exhausted && self.left_holds && self.right_holds
    }
}

pub fn verify_expansion_chain(n: usize, r: usize, k: usize, f0: &UniformHypergraph, opts: &ExtremalOptions) -> Result<ExpansionChainReport, ExtremalError> {
    if f0.r() != 2 {
        return Err(ExtremalError::InvalidParameters(format!("base pattern must be a graph, got uniformity {}", f0.r())));
    }
    if !(2..=r).contains(&k) {
        return Err(ExtremalError::InvalidParameters(format!("need 2 <= k <= r, got k = {k}, r = {r}")));
    }
    let invalid = |e: crate::hypercore::HypergraphError| ExtremalError::InvalidParameters(e.to_string());
    let f0k = expansion(f0, k).map_err(invalid)?;
    let f0r = expansion(f0, r).map_err(invalid)?;

    let left = ex_berge(n, r, f0, opts)?;
    let middle = ex_berge(n, r, &f0k, opts)?;
    let right = ex_uniform(n, r, &f0r, opts)?;

    let chromatic = chromatic_number(f0);
    let turan_edges = (chromatic > r && r > k).then(|| crate::hypercore::turan_edge_count(n, r, chromatic - 1));

    Ok(ExpansionChainReport {
        n,
        r,
        k,
        left_holds: left.value <= middle.value,
        right_holds: middle.value <= right.value,
        chromatic,
        turan_edges,
        middle_at_least_turan: turan_edges.map(|t| middle.value >= t),
        exhausted: left.exhausted && middle.exhausted && right.exhausted,
        left,
        middle,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::complete_uniform;

    fn opts() -> ExtremalOptions {
        ExtremalOptions::default()
    }

    #[test]
    fn sandwich_examples() {
        let k3 = complete_uniform(3, 2).unwrap();
        let rep = verify_sandwich(5, 2, 3, &k3, &opts()).unwrap();
        assert_eq!((rep.generalized.value, rep.uniform.value), (0, 6));
        assert!(rep.passed());

        let edge = complete_uniform(2, 2).unwrap();
        let rep = verify_sandwich(5, 2, 3, &edge, &opts()).unwrap();
        assert_eq!((rep.generalized.value, rep.berge.value, rep.uniform.value), (0, 0, 0));
        assert!(rep.passed());

        let p4 = UniformHypergraph::from_lists(4, 2, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(verify_sandwich(6, 2, 3, &p4, &opts()).unwrap().passed());
        assert!(verify_sandwich(5, 3, 2, &k3, &opts()).is_err());
    }

    #[test]
    fn chain_examples() {
        let edge = complete_uniform(2, 2).unwrap();
        let rep = verify_expansion_chain(5, 3, 2, &edge, &opts()).unwrap();
        assert_eq!(rep.left.value, 0);
        assert!(rep.passed());

        let k3 = complete_uniform(3, 2).unwrap();
        let rep = verify_expansion_chain(5, 3, 2, &k3, &opts()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.turan_edges, None);

        let k4 = complete_uniform(4, 2).unwrap();
        let rep = verify_expansion_chain(6, 3, 2, &k4, &opts()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.turan_edges, Some(8));
        assert_eq!(rep.middle_at_least_turan, Some(true));
    }
}
