//! Counts reduced graphs by edge number for each variant, and prints the
//! surface census of the Möbius graphs of genus 1 with 2 legs.
//!
//! cargo run --release --example enumerate -- [genus] [legs]

use kleinhomology::surface::{census_row, CENSUS_HEADER};
use kleinhomology::{enumerate_graphs, EnumerationQuery, GraphVariant};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("numeric argument"));
    let genus = args.next().unwrap_or(1);
    let legs = args.next().unwrap_or(2);

    for variant in [GraphVariant::Ribbon, GraphVariant::Moebius, GraphVariant::Dianalytic] {
        let family = enumerate_graphs(&EnumerationQuery::new(genus, legs, variant));
        println!("{variant:>10} ({genus},{legs}): {:?} total {}", family.counts(), family.total());
    }

    let family = enumerate_graphs(&EnumerationQuery::new(genus, legs, GraphVariant::Moebius));
    println!("\n{CENSUS_HEADER}");
    for e in 0..family.levels.len() {
        for g in family.graphs(e) {
            println!("{}", census_row(&g, GraphVariant::Moebius).unwrap());
        }
    }
}
