//! Graph and complex export: DOT for the trivalent Möbius graphs of genus 1
//! with one leg (twisted edges dashed), and the complex as JSON.
//!
//! cargo run --release --example export > graphs.dot

use kleinhomology::{build_graph_complex, enumerate_graphs, EnumerationQuery, GraphVariant};

fn main() {
    let q = EnumerationQuery::new(1, 1, GraphVariant::Moebius);
    let family = enumerate_graphs(&q);
    let top = q.max_edges().unwrap();
    for g in family.graphs(top) {
        print!("{}", g.to_dot());
        eprintln!("{}", g.to_json());
    }
    let c = build_graph_complex(&q).unwrap();
    eprintln!("{}", serde_json::to_string(&c.to_json()).unwrap());
}
