//! Library results compared with values computed independently: naive
//! loops over the adjacency relation, and constants evaluated offline with
//! 30-digit arithmetic.

use snc_core::analysis::{sullivan_vertices, triangle_stats, two_kings};
use snc_core::checks::Check;
use snc_core::format::{parse_digraph6, write_digraph6};
use snc_core::harness::{
    enumerate_oriented, enumerate_tournaments, exhaustive_check, markov_expectation,
    markov_expectation_exact, rational_to_f64, Space, SweepOptions,
};
use snc_core::Digraph;

fn naive_second_out(g: &Digraph, u: usize) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .filter(|&v| v != u && !g.has_arc(u, v) && (0..n).any(|w| g.has_arc(u, w) && g.has_arc(w, v)))
        .collect()
}

fn naive_in_degree(g: &Digraph, u: usize) -> usize {
    (0..g.order()).filter(|&v| g.has_arc(v, u)).count()
}

fn naive_out_degree(g: &Digraph, u: usize) -> usize {
    (0..g.order()).filter(|&v| g.has_arc(u, v)).count()
}

/// Ordered triples `(a, b, c)` with `a → b`, `a → c`, `b → c`.
fn naive_tt(g: &Digraph) -> u64 {
    let n = g.order();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if g.has_arc(a, b) && g.has_arc(a, c) && g.has_arc(b, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn naive_w(g: &Digraph, u: usize) -> u64 {
    let second = naive_second_out(g, u);
    (0..g.order())
        .filter(|&v| g.has_arc(u, v))
        .map(|v| second.iter().filter(|&&w| g.has_arc(v, w)).count() as u64)
        .sum()
}

#[test]
fn second_neighbourhoods_match_naive_on_all_small_graphs() {
    for n in 0..=4 {
        for g in enumerate_oriented(n).unwrap() {
            for u in 0..n {
                assert_eq!(g.second_out(u).to_vec(), naive_second_out(&g, u));
                let r = g.reverse();
                assert_eq!(g.second_in(u).to_vec(), naive_second_out(&r, u));
            }
        }
    }
}

#[test]
fn triangle_counts_match_triple_enumeration() {
    for g in enumerate_oriented(5).unwrap() {
        let stats = triangle_stats(&g);
        assert_eq!(stats.tt_total, naive_tt(&g));
        let w: u64 = (0..5).map(|u| naive_w(&g, u)).sum();
        let rhs: u64 = (0..5)
            .map(|u| (naive_in_degree(&g, u) * naive_out_degree(&g, u)) as u64)
            .sum();
        assert_eq!(stats.tt_total + w, rhs);
        for u in 0..5 {
            assert_eq!(stats.w[u], naive_w(&g, u));
        }
    }
}

#[test]
fn sullivan_sets_match_naive_definition() {
    for g in enumerate_oriented(4).unwrap() {
        let naive: Vec<usize> = (0..4)
            .filter(|&u| naive_second_out(&g, u).len() >= naive_in_degree(&g, u))
            .collect();
        assert_eq!(sullivan_vertices(&g).to_vec(), naive);
        let kings: Vec<usize> = (0..4)
            .filter(|&u| naive_out_degree(&g, u) + naive_second_out(&g, u).len() == 3)
            .collect();
        assert_eq!(two_kings(&g).to_vec(), kings);
    }
}

// Reference values of (n-1)(1-p/2)(1-p^2/4)^(n-2), computed to 30 digits.
#[allow(clippy::excessive_precision)]
const EXPECTATIONS: [(usize, f64, f64); 5] = [
    (100, 0.5, 0.133_009_158_291_144_353_069_775_857_322),
    (20, 0.3, 10.721_963_288_5),
    (40, 0.5, 2.517_876_205_1),
    (60, 0.5, 1.047_724_998_5),
    (80, 0.8, 5.882_509_734e-5),
];

#[test]
fn expectation_matches_reference_values() {
    let (n, p, reference) = EXPECTATIONS[0];
    assert!((markov_expectation(n, p).unwrap() - reference).abs() < 1e-6);
    assert!((rational_to_f64(&markov_expectation_exact(n, p).unwrap()) - reference).abs() < 1e-15);
    for (n, p, reference) in EXPECTATIONS {
        let got = markov_expectation(n, p).unwrap();
        assert!(((got - reference) / reference).abs() < 1e-9, "n={n} p={p}: {got}");
    }
    assert_eq!(markov_expectation(2, 1.0).unwrap(), 0.5);
    assert_eq!(markov_expectation(2, 0.0).unwrap(), 1.0);
}

fn count_where(space: Space, n: usize, pred: impl Fn(&Digraph) -> bool) -> usize {
    match space {
        Space::Oriented => enumerate_oriented(n).unwrap().filter(|g| pred(g)).count(),
        Space::Tournaments => enumerate_tournaments(n).unwrap().filter(|g| pred(g)).count(),
    }
}

fn almost_regular(g: &Digraph) -> bool {
    (0..g.order()).all(|u| naive_out_degree(g, u).abs_diff(naive_in_degree(g, u)) == 1)
}

fn regular(g: &Digraph) -> bool {
    (0..g.order()).all(|u| naive_out_degree(g, u) == naive_in_degree(g, u))
}

#[test]
fn labeled_almost_regular_tournament_counts() {
    // 2, 24 and 2640 labeled almost regular tournaments on 2, 4 and 6 vertices.
    for (n, expected) in [(2, 2), (4, 24), (6, 2640)] {
        assert_eq!(count_where(Space::Tournaments, n, almost_regular), expected);
        let r = exhaustive_check(Space::Tournaments, n, &[Check::ArBalance], None, &SweepOptions::default())
            .unwrap();
        assert_eq!(r.applicable(Check::ArBalance), expected as u64);
        assert!(r.passed());
    }
}

#[test]
fn labeled_regular_tournament_counts() {
    for (n, expected) in [(3, 2), (5, 24), (7, 2640)] {
        assert_eq!(count_where(Space::Tournaments, n, regular), expected);
    }
}

#[test]
fn enumeration_lengths() {
    assert_eq!(enumerate_oriented(2).unwrap().count(), 3);
    assert_eq!(enumerate_oriented(3).unwrap().count(), 27);
    assert_eq!(enumerate_oriented(5).unwrap().count(), 59049);
    assert_eq!(enumerate_tournaments(6).unwrap().count(), 32768);
}

#[test]
fn digraph6_hand_packed() {
    let d = Digraph::new(2, [(0, 1)]).unwrap();
    assert_eq!(write_digraph6(&d), b"&AO");
    // 3-cycle 0->1->2->0: matrix 010 001 100 -> 010001 100(000) -> 17, 32.
    let c = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
    assert_eq!(write_digraph6(&c), [b'&', b'B', 17 + 63, 32 + 63]);
    assert_eq!(parse_digraph6(&[b'&', b'B', 17 + 63, 32 + 63]).unwrap(), c);
}
