use std::collections::BTreeSet;

use proptest::prelude::*;

use snc_core::analysis::{
    is_seymour_vertex, is_sullivan_vertex, sullivan_vertices, triangle_stats, two_kings,
};
use snc_core::format::{parse_arclist, parse_digraph6, write_arclist, write_digraph6};
use snc_core::generators::{gen_split, gen_random_tournament, CrossDistribution, Family, GenSpec};
use snc_core::harness::OrientationIndex;
use snc_core::split::check_sum_identities;
use snc_core::{Digraph, VertexSet, MAX_VERTICES};

/// An oriented graph given by one base-3 digit per pair.
fn oriented(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u8..3, n * n.saturating_sub(1) / 2).prop_map(move |digits| {
            let mut arcs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    match digits[k] {
                        1 => arcs.push((i, j)),
                        2 => arcs.push((j, i)),
                        _ => {}
                    }
                    k += 1;
                }
            }
            Digraph::new(n, arcs).unwrap()
        })
    })
}

fn naive_second_out(g: &Digraph, u: usize) -> BTreeSet<usize> {
    let n = g.order();
    (0..n)
        .filter(|&v| v != u && !g.has_arc(u, v) && (0..n).any(|w| g.has_arc(u, w) && g.has_arc(w, v)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn second_out_matches_naive(g in oriented(MAX_VERTICES.min(90))) {
        for u in 0..g.order() {
            let got: BTreeSet<usize> = g.second_out(u).iter().collect();
            prop_assert_eq!(got, naive_second_out(&g, u));
        }
    }
}

proptest! {
    #[test]
    fn reversal_swaps_directions(g in oriented(20)) {
        let r = g.reverse();
        prop_assert_eq!(r.reverse(), g.clone());
        for u in 0..g.order() {
            prop_assert_eq!(g.out_degree(u), r.in_degree(u));
            prop_assert_eq!(g.second_in(u), r.second_out(u));
            prop_assert_eq!(g.second_out(u), r.second_in(u));
        }
    }

    #[test]
    fn neighbourhoods_are_disjoint_from_second_neighbourhoods(g in oriented(24)) {
        for u in 0..g.order() {
            let pp = g.second_out(u);
            prop_assert!(pp.is_disjoint(&g.out_neighbors(u)));
            prop_assert!(!pp.contains(u));
            let mm = g.second_in(u);
            prop_assert!(mm.is_disjoint(&g.in_neighbors(u)));
            prop_assert!(!mm.contains(u));
        }
    }

    #[test]
    fn degree_sums_equal_arc_count(g in oriented(30)) {
        let out: usize = (0..g.order()).map(|u| g.out_degree(u)).sum();
        let inn: usize = (0..g.order()).map(|u| g.in_degree(u)).sum();
        prop_assert_eq!(out, g.arc_count());
        prop_assert_eq!(inn, g.arc_count());
    }

    #[test]
    fn triangle_identity_holds(g in oriented(30)) {
        let stats = triangle_stats(&g);
        prop_assert_eq!(stats.identity_residual, 0);
        prop_assert_eq!(stats.tt_per_vertex.iter().sum::<u64>(), stats.tt_total);
    }

    #[test]
    fn two_kings_are_sullivan(g in oriented(30)) {
        let kings = two_kings(&g);
        prop_assert!(kings.is_subset(&sullivan_vertices(&g)));
    }

    #[test]
    fn sources_are_sullivan_and_sinks_are_seymour(g in oriented(30)) {
        for u in 0..g.order() {
            if g.in_degree(u) == 0 {
                prop_assert!(is_sullivan_vertex(&g, u));
            }
            if g.out_degree(u) == 0 {
                prop_assert!(is_seymour_vertex(&g, u));
            }
        }
    }

    #[test]
    fn arclist_round_trip(g in oriented(40)) {
        prop_assert_eq!(parse_arclist(&write_arclist(&g)).unwrap(), g);
    }

    #[test]
    fn digraph6_round_trip(g in oriented(MAX_VERTICES.min(80))) {
        let bytes = write_digraph6(&g);
        let back = parse_digraph6(&bytes).unwrap();
        prop_assert_eq!(write_digraph6(&back), bytes);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn orientation_index_round_trip(g in oriented(9)) {
        let oi = OrientationIndex::encode(&g).unwrap();
        prop_assert_eq!(oi.decode().unwrap(), g);
    }

    #[test]
    fn split_sums_hold(x in 0usize..10, y in 0usize..10, seed: u64, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let yt = gen_random_tournament(y, seed).unwrap();
        let total = 1.0 + a + b;
        let cross = CrossDistribution::new(1.0 / total, a / total, 1.0 - (1.0 + a) / total).unwrap();
        let s = gen_split(x, &yt, cross, seed ^ 1).unwrap();
        prop_assert!(check_sum_identities(&s).ok);
    }

    #[test]
    fn generation_is_deterministic(n in 0usize..40, p in 0.0f64..=1.0, seed: u64) {
        let spec = GenSpec::new(Family::OrientedRandom { n, p }, seed);
        let a = spec.generate().unwrap().graph;
        let b = spec.generate().unwrap().graph;
        prop_assert_eq!(write_digraph6(&a), write_digraph6(&b));
    }

    #[test]
    fn vertex_set_matches_btreeset(xs in prop::collection::vec(0usize..MAX_VERTICES, 0..60),
                                   ys in prop::collection::vec(0usize..MAX_VERTICES, 0..60)) {
        let (a, b): (VertexSet, VertexSet) = (xs.iter().copied().collect(), ys.iter().copied().collect());
        let (ma, mb): (BTreeSet<usize>, BTreeSet<usize>) = (xs.into_iter().collect(), ys.into_iter().collect());
        prop_assert_eq!(a.len(), ma.len());
        prop_assert_eq!((a | b).to_vec(), ma.union(&mb).copied().collect::<Vec<_>>());
        prop_assert_eq!((a & b).to_vec(), ma.intersection(&mb).copied().collect::<Vec<_>>());
        prop_assert_eq!((a - b).to_vec(), ma.difference(&mb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.is_subset(&b), ma.is_subset(&mb));
        prop_assert_eq!(a.is_disjoint(&b), ma.is_disjoint(&mb));
        prop_assert_eq!(a.first(), ma.first().copied());
    }
}
