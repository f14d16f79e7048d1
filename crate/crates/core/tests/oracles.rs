//! Enumeration, homology and cobar dimensions against independent oracles.

mod common;

use common::{naive_counts, planar_tree_count, real_m0n_betti};
use kleinhomology::{build_cobar_complex, build_graph_complex, enumerate_graphs, CobarOperad, EnumerationQuery, GraphVariant};

fn check_counts(cases: &[(usize, usize)], variant: GraphVariant) {
    for &(g, n) in cases {
        let ours = enumerate_graphs(&EnumerationQuery::new(g, n, variant)).counts();
        assert_eq!(ours, naive_counts(g, n, variant), "{variant} ({g},{n})");
    }
}

#[test]
fn ribbon_counts_match_brute_force() {
    check_counts(&[(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)], GraphVariant::Ribbon);
}

#[test]
fn dianalytic_counts_match_brute_force() {
    check_counts(&[(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)], GraphVariant::Dianalytic);
}

#[test]
fn moebius_counts_match_brute_force() {
    check_counts(&[(0, 3), (0, 4), (1, 1), (1, 2), (2, 0)], GraphVariant::Moebius);
}

#[test]
fn genus_one_one_leg_ribbon_is_one_class() {
    assert_eq!(naive_counts(1, 1, GraphVariant::Ribbon).iter().sum::<usize>(), 1);
    assert_eq!(enumerate_graphs(&EnumerationQuery::new(1, 1, GraphVariant::Ribbon)).total(), 1);
}

#[test]
fn dianalytic_trees_compute_real_m0n() {
    assert_eq!(real_m0n_betti(5), vec![0, 4, 1]);
    for n in 4..=7 {
        let c = build_graph_complex(&EnumerationQuery::new(0, n, GraphVariant::Dianalytic)).unwrap();
        assert_eq!(c.betti_numbers().unwrap(), real_m0n_betti(n), "n = {n}");
    }
}

#[test]
fn cobar_dimensions_count_planar_trees() {
    for n in 2..=5 {
        let ass = build_cobar_complex(n, CobarOperad::Ass).unwrap().dims();
        let expect: Vec<usize> = (0..=n - 2).map(|s| planar_tree_count(n, s)).collect();
        assert_eq!(ass, expect, "n = {n}");
        // 2^(n+1) leg colours and 2^s twists, modulo 2^(s+1) free vertex reflections
        let mass = build_cobar_complex(n, CobarOperad::MAss).unwrap().dims();
        assert_eq!(mass, expect.iter().map(|d| d << n).collect::<Vec<_>>(), "n = {n}");
    }
}
