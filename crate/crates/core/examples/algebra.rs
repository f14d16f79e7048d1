//! Algebra checkers: involutive Frobenius algebras and the sign law for
//! involutive `A∞` structures. Writes the sample tables as JSON when given a
//! directory.
//!
//! cargo run --release --example algebra -- [out dir]

use kleinhomology::operad::algebra::samples::{cyclic_group_algebra, exterior_algebra, matrix_algebra, square_zero_m3};
use kleinhomology::operad::algebra::{check_frobenius_involution, check_involutive_ainfty_signs, AlgebraReport};

fn show(name: &str, r: &AlgebraReport) {
    println!("{name}: {}", if r.passed { "pass" } else { "fail" });
    for c in r.checks.iter().filter(|c| !c.passed) {
        println!("    {} fails at {:?}", c.axiom, c.witnesses.first());
    }
}

fn main() {
    let frobenius = [
        ("matrix-transpose", matrix_algebra(true)),
        ("matrix-identity", matrix_algebra(false)),
        ("z3", cyclic_group_algebra(3)),
    ];
    for (name, t) in &frobenius {
        show(name, &check_frobenius_involution(t).unwrap());
    }
    let graded = [("exterior", exterior_algebra()), ("m3-good", square_zero_m3(-1)), ("m3-bad", square_zero_m3(1))];
    for (name, t) in &graded {
        show(name, &check_involutive_ainfty_signs(t).unwrap());
    }
    if let Some(dir) = std::env::args().nth(1) {
        for (name, t) in frobenius.iter().chain(&graded) {
            let path = std::path::Path::new(&dir).join(format!("{name}.json"));
            std::fs::write(&path, t.to_json()).unwrap();
            println!("wrote {}", path.display());
        }
    }
}
