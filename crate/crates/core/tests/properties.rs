//! Randomized invariants. `KLEINHOMOLOGY_SEED` fixes the proptest seed.

mod common;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use common::proptest_config;
use kleinhomology::complex::build_graph_complex_with;
use kleinhomology::orientation::Orientation;
use kleinhomology::surface::surface_invariant;
use kleinhomology::{
    build_graph_complex, canonical_code, enumerate_graphs, surface_type, EnumerationQuery, GraphFamily, GraphVariant, HalfEdgeGraph,
};
use proptest::prelude::*;
use proptest::sample::Index;

const QUERIES: [(usize, usize); 6] = [(0, 5), (1, 2), (1, 3), (2, 0), (2, 1), (0, 6)];

fn family(i: usize, variant: GraphVariant) -> Arc<GraphFamily> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, GraphVariant), Arc<GraphFamily>>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    let (g, n) = QUERIES[i % QUERIES.len()];
    cache.entry((i, variant)).or_insert_with(|| Arc::new(enumerate_graphs(&EnumerationQuery::new(g, n, variant)))).clone()
}

fn pick(f: &GraphFamily, idx: &Index) -> HalfEdgeGraph {
    let all: Vec<_> = f.levels.iter().flatten().collect();
    all[idx.index(all.len())].decode().unwrap()
}

fn variant() -> impl Strategy<Value = GraphVariant> {
    prop_oneof![Just(GraphVariant::Ribbon), Just(GraphVariant::Moebius), Just(GraphVariant::Dianalytic)]
}

/// A random element of the variant's isomorphism group applied to `g`.
fn scramble(g: &HalfEdgeGraph, variant: GraphVariant, perm: &[usize], flips: u64) -> HalfEdgeGraph {
    let mut h = g.clone();
    if variant != GraphVariant::Ribbon {
        for v in 0..h.n_vertices() {
            if flips >> v & 1 == 1 {
                h = h.reflect_vertex(v).unwrap();
            }
        }
    }
    if variant == GraphVariant::Moebius {
        for (k, e) in h.edges().into_iter().enumerate() {
            if flips >> (32 + k) & 1 == 1 {
                h = h.recolor_edge(e).unwrap();
            }
        }
    }
    if variant != GraphVariant::Moebius {
        h = h.project_variant(variant);
    }
    h.permute_half_edges(perm)
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(proptest_config(64))]

    #[test]
    fn canonical_code_is_an_isomorphism_invariant(q in 0usize..6, v in variant(), idx in any::<Index>(), seed in any::<u64>(), flips in any::<u64>()) {
        let f = family(q, v);
        let g = pick(&f, &idx);
        let h = scramble(&g, v, &shuffled(g.n_half_edges(), seed), flips);
        prop_assert_eq!(canonical_code(&g, v), canonical_code(&h, v));
    }

    #[test]
    fn contraction_keeps_surface_and_signature(q in 0usize..6, idx in any::<Index>(), e in any::<Index>()) {
        let f = family(q, GraphVariant::Moebius);
        let g = pick(&f, &idx);
        let edges: Vec<usize> = g.edges().into_iter().filter(|&x| !g.is_loop(x)).collect();
        prop_assume!(!edges.is_empty());
        let small = g.contract_edge(edges[e.index(edges.len())]).unwrap();
        prop_assert_eq!(small.signature(), g.signature());
        prop_assert_eq!(surface_type(&small).unwrap(), surface_type(&g).unwrap());
        prop_assert!(small.is_reduced());
    }

    #[test]
    fn json_round_trip(q in 0usize..6, v in variant(), idx in any::<Index>()) {
        let g = pick(&family(q, v), &idx);
        prop_assert_eq!(HalfEdgeGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn reflection_is_an_involution(q in 0usize..6, idx in any::<Index>(), v in any::<Index>()) {
        let g = pick(&family(q, GraphVariant::Moebius), &idx);
        let v = v.index(g.n_vertices());
        prop_assert_eq!(g.reflect_vertex(v).unwrap().reflect_vertex(v).unwrap(), g.clone());
        prop_assert_eq!(surface_invariant(&g.reflect_vertex(v).unwrap(), GraphVariant::Moebius).unwrap(), surface_invariant(&g, GraphVariant::Moebius).unwrap());
    }
}

/// Reversed edge order, first cycle negated, first cycle added to the second.
fn perturbed(g: &HalfEdgeGraph) -> Orientation {
    let mut o = Orientation::reference(g);
    o.edges.reverse();
    if let Some(c) = o.cycles.first_mut() {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    if o.cycles.len() >= 2 {
        let first = o.cycles[0].clone();
        o.cycles[1].iter_mut().zip(&first).for_each(|(x, y)| *x += y);
    }
    o
}

#[test]
fn homology_is_independent_of_orientation_choices() {
    for (g, n) in [(0, 5), (1, 2), (1, 3), (2, 1)] {
        for v in [GraphVariant::Ribbon, GraphVariant::Moebius, GraphVariant::Dianalytic] {
            let q = EnumerationQuery::new(g, n, v);
            let a = build_graph_complex(&q).unwrap();
            let b = build_graph_complex_with(&q, &perturbed).unwrap();
            assert_eq!(a.dims(), b.dims());
            assert_eq!(a.betti_numbers().unwrap(), b.betti_numbers().unwrap(), "{v} ({g},{n})");
            let changed = a.differentials.iter().zip(&b.differentials).any(|(x, y)| x != y);
            assert!(changed || a.differentials.iter().all(|d| d.is_zero()), "{v} ({g},{n})");
        }
    }
}
