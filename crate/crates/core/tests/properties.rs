mod common;

use bergekit::berge::{blue_edges, find_berge, is_berge_free, shadow_multiplicity};
use bergekit::boundslab::{alpha_constant, decaen_bound, shadow_copy_structure, Rational};
use bergekit::extremal::{ex_uniform, ExtremalOptions};
use bergekit::hypercore::format::{parse_hg, write_hg};
use bergekit::hypercore::{binomial, canonical_form, complete_uniform, count_sub_copies, shadow, Hypergraph, UniformHypergraph, VertexSet};
use bergekit::matchdecomp::{check_partition, has_augmenting_path, matching_partition, maximum_matching, BipartiteGraph};
use common::brute_berge;
use proptest::prelude::*;

fn hypergraph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::btree_set(1u64..1 << n, 0..=max_edges)
            .prop_map(move |masks| Hypergraph::from_sets(n, masks.into_iter().map(VertexSet::from_bits).collect()).unwrap())
    })
}

fn uniform(max_n: usize, r: usize, max_edges: usize) -> impl Strategy<Value = UniformHypergraph> {
    (r..=max_n).prop_flat_map(move |n| {
        let sets = VertexSet::prefix(n).subsets_of_size(r);
        prop::sample::subsequence(sets, 0..=max_edges.min(binomial(n as u64, r as u64) as usize))
            .prop_map(move |edges| UniformHypergraph::new(Hypergraph::from_sets(n, edges).unwrap(), r).unwrap())
    })
}

fn relabeling(h: Hypergraph) -> impl Strategy<Value = (Hypergraph, Vec<usize>)> {
    let n = h.n();
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(move |perm| (h.clone(), perm))
}

fn bipartite() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(a, b)| {
        prop::collection::vec(prop::collection::btree_set(0..b, 0..=b), a).prop_map(move |adj| BipartiteGraph::new(b, adj.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_ignores_labels((h, perm) in hypergraph(7, 8).prop_flat_map(relabeling)) {
        let moved = h.relabel(&perm);
        prop_assert_eq!(canonical_form(&h).form, canonical_form(&moved).form);
        let cert = canonical_form(&h);
        prop_assert_eq!(h.relabel(&cert.perm), cert.form);
    }

    #[test]
    fn text_format_round_trips(h in hypergraph(8, 10)) {
        prop_assert_eq!(parse_hg(&write_hg(&h)).unwrap(), h);
    }

    #[test]
    fn copy_counts_ignore_labels((h, perm) in hypergraph(6, 10).prop_flat_map(relabeling)) {
        let k3 = complete_uniform(3, 2).unwrap();
        let p3 = UniformHypergraph::from_lists(3, 2, &[vec![0, 1], vec![1, 2]]).unwrap();
        for f in [k3, p3] {
            prop_assert_eq!(count_sub_copies(&f, &h), count_sub_copies(&f, &h.relabel(&perm)));
        }
    }

    #[test]
    fn berge_detection_matches_oracle(h in hypergraph(6, 5), f in uniform(4, 2, 4)) {
        prop_assume!(f.edge_count() > 0);
        let got = find_berge(&h, &f);
        prop_assert_eq!(got.is_some(), brute_berge(&h, &f));
        if let Some(w) = got {
            prop_assert!(w.validate(&h, &f).is_ok());
        }
    }

    #[test]
    fn blue_edges_are_rare(h in hypergraph(6, 6)) {
        let k3 = complete_uniform(3, 2).unwrap();
        let blue = blue_edges(&h, &k3);
        for &e in blue.edges() {
            prop_assert!(shadow_multiplicity(&h, e) < k3.edge_count());
        }
        prop_assert!(blue.edges().iter().all(|&e| shadow(&h, 2).contains_edge(e)));
    }

    #[test]
    fn shadow_is_exactly_the_covered_sets(h in hypergraph(6, 6), r in 1usize..4) {
        let sh = shadow(&h, r);
        for &e in sh.edges() {
            prop_assert!(h.edges().iter().any(|&big| e.is_subset(big)));
        }
        for &big in h.edges() {
            for s in big.subsets_of_size(r) {
                prop_assert!(sh.contains_edge(s));
            }
        }
    }

    #[test]
    fn copies_in_free_shadows_share_a_container(h in hypergraph(6, 5)) {
        let k3 = complete_uniform(3, 2).unwrap();
        prop_assume!(is_berge_free(&h, std::slice::from_ref(&k3)));
        prop_assert!(shadow_copy_structure(&h, &k3).all_share());
    }

    #[test]
    fn matchings_are_maximum_and_partitions_structural(g in bipartite()) {
        let m = maximum_matching(&g);
        prop_assert!(m.is_valid_in(&g));
        prop_assert!(!has_augmenting_path(&g, &m));
        match matching_partition(&g) {
            Ok(p) => prop_assert!(check_partition(&g, &p).all()),
            Err(e) => prop_assert!(check_partition(&g, e.partial()).structural()),
        }
    }

    #[test]
    fn clique_bound_density_below_alpha(r in 2usize..5, extra in 1usize..4, pad in 0usize..10) {
        let s = r + extra;
        let n = s + pad;
        let bound = decaen_bound(n, r, s).unwrap();
        let alpha = alpha_constant(r, s).unwrap();
        prop_assert!(alpha < Rational::from_integer(1));
        prop_assert!(bound.value / Rational::from_integer(binomial(n as u64, r as u64) as i128) <= alpha);
        prop_assert!(Rational::from_integer(bound.floor) <= bound.value);
        prop_assert!(bound.value < Rational::from_integer(bound.floor + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn extremal_numbers_grow_with_n(f in uniform(4, 2, 4)) {
        prop_assume!(f.edge_count() > 0);
        // below |V(F)| nothing embeds, so the sequence starts there
        let mut last = 0;
        for n in f.n()..=6 {
            let v = ex_uniform(n, 2, &f, &ExtremalOptions::default()).unwrap().value;
            prop_assert!(v >= last);
            last = v;
        }
    }
}
