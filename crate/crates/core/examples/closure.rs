//! Modular closure: graphs modulo contraction against surface invariants, and
//! the two normal-form relations.
//!
//! cargo run --release --example closure

use kleinhomology::operad::closure::{closure_classes, relation_one_pair, relation_two_pair};
use kleinhomology::surface::surface_type;
use kleinhomology::GraphVariant;

fn main() {
    for (g, n) in [(2, 0), (3, 0), (1, 1), (1, 2), (2, 1)] {
        let r = closure_classes(g, n, GraphVariant::Moebius, 3 * g + n - 3).unwrap();
        println!("({g},{n}): {} graphs, {} classes, {} invariants, certified {}", r.graphs, r.classes.len(), r.invariant_count, r.certified);
        for c in &r.classes {
            println!("    {:?} x{}", c.invariant.topological_type(), c.members);
        }
    }

    let (a, b) = relation_one_pair();
    let r = closure_classes(1, 2, GraphVariant::Moebius, 2).unwrap();
    println!("relation (1): {:?} ~ {:?}: {}", surface_type(&a).unwrap(), surface_type(&b).unwrap(), r.same_class(&a, &b));
    let (a, b) = relation_two_pair();
    let r = closure_classes(3, 1, GraphVariant::Moebius, 7).unwrap();
    println!(
        "relation (2): {} ~ {}: {}",
        surface_type(&a).unwrap().topological_type(),
        surface_type(&b).unwrap().topological_type(),
        r.same_class(&a, &b)
    );
}
