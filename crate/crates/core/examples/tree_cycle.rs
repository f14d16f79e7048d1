//! The eight-term tree chain in the dianalytic complex with five legs: it is a
//! cycle, and it bounds the sum of two pentagons.
//!
//! cargo run --release --example tree_cycle

use kleinhomology::chains::{drawing_sign, tree_cycle_check, EIGHT_TERMS};

fn main() {
    for (s, v, w) in EIGHT_TERMS {
        println!("{:+} {v:?} | {w:?}   drawing sign {:+}", s, drawing_sign(v, w));
    }
    let r = tree_cycle_check().unwrap();
    println!("cycle {}  boundary {}  cycles on the support {}", r.is_cycle, r.is_boundary, r.support_cycles);
    if let Some((x, y)) = r.bounding_pair {
        println!("T = {x} d(5;1,2,3,4) + {y} d(5;2,1,3,4)");
    }
    println!("dianalytic betti {:?}, moebius betti {:?}", r.dianalytic_betti, r.moebius_betti);
}
