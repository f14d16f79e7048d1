//! Betti numbers of graph complexes. The dianalytic trees of genus 0 compute
//! the real moduli spaces of stable curves of genus 0.
//!
//! cargo run --release --example homology

use kleinhomology::{build_graph_complex, homology, EnumerationQuery, GraphVariant};

fn main() {
    let queries = [
        (0, 5, GraphVariant::Dianalytic),
        (0, 6, GraphVariant::Dianalytic),
        (0, 5, GraphVariant::Moebius),
        (1, 2, GraphVariant::Ribbon),
        (1, 3, GraphVariant::Moebius),
        (2, 1, GraphVariant::Ribbon),
        (2, 1, GraphVariant::Dianalytic),
    ];
    for (genus, legs, variant) in queries {
        let c = build_graph_complex(&EnumerationQuery::new(genus, legs, variant)).unwrap();
        let h = homology(&c).unwrap();
        println!("{variant} ({genus},{legs})");
        println!("  dims  {:?}", h.dims);
        println!("  betti {:?}  (moduli degrees {:?})", h.betti, h.moduli_grading.iter().map(|p| p.0).collect::<Vec<_>>());
        println!("  euler {}", h.euler_from_betti);
    }
}
