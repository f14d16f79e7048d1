//! Band surfaces of Möbius graphs: the three basic surfaces, and invariance of
//! the surface type under contraction of non-loop edges.
//!
//! cargo run --release --example surface_types

use kleinhomology::{enumerate_graphs, surface_type, EnumerationQuery, GraphVariant, HalfEdgeGraph};

fn one_vertex(word: &[usize], pairs: &[(usize, usize)], colors: Vec<u8>) -> HalfEdgeGraph {
    let legs: Vec<(u32, usize)> = (0..word.len()).filter(|h| !pairs.iter().any(|&(a, b)| a == *h || b == *h)).zip(1..).map(|(h, l)| (l, h)).collect();
    HalfEdgeGraph::from_rotation(word.len(), &[word.to_vec()], pairs, &legs, colors).unwrap()
}

fn main() {
    let handle = one_vertex(&[0, 1, 2, 3, 4], &[(0, 2), (1, 3)], vec![0; 5]);
    let crosscap = one_vertex(&[0, 1, 2], &[(0, 1)], vec![0, 1, 0]);
    let annulus = one_vertex(&[0, 1, 2], &[(0, 1)], vec![0; 3]);
    for (name, g) in [("handle", &handle), ("crosscap", &crosscap), ("annulus", &annulus)] {
        let s = surface_type(g).unwrap();
        println!("{name:>9}: (m,u,h) = ({},{},{}), legs {}", s.m, s.u, s.h, s.boundary_partition());
    }

    let family = enumerate_graphs(&EnumerationQuery::new(2, 1, GraphVariant::Moebius));
    let (mut contractions, mut changes) = (0, 0);
    for e in 0..family.levels.len() {
        for g in family.graphs(e) {
            let s = surface_type(&g).unwrap();
            for edge in g.edges().into_iter().filter(|&x| !g.is_loop(x)) {
                contractions += 1;
                changes += (surface_type(&g.contract_edge(edge).unwrap()).unwrap() != s) as usize;
            }
        }
    }
    println!("moebius (2,1): {contractions} contractions, {changes} change the surface");
}
