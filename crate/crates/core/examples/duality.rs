//! Quadratic self-duality of `MAss` at arity 3: the explicit map sends the
//! relations onto their orthogonal complement.
//!
//! cargo run --release --example duality

use kleinhomology::operad::duality::{k_basis, quadratic_duality_check, quadratic_duality_check_ass};

fn main() {
    println!("generators of E = MAss(2):");
    for c in k_basis() {
        println!("  {c:?}");
    }
    for (name, r) in [("MAss", quadratic_duality_check()), ("Ass", quadratic_duality_check_ass())] {
        println!("{name}: {r:#?}");
    }
}
