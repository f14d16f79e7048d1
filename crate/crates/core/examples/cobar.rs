//! Cobar complexes of `Ass` and `MAss`: the dimension split by `2^n` and
//! Koszulness (homology only in the top degree).
//!
//! cargo run --release --example cobar -- [max n]

use kleinhomology::operad::koszul::koszul_check;

fn main() {
    let max_n: usize = std::env::args().nth(1).map(|a| a.parse().unwrap()).unwrap_or(5);
    for n in 2..=max_n {
        let r = koszul_check(n).unwrap();
        println!("n = {n}");
        println!("  C(Ass)  dims {:?} betti {:?}", r.ass_dims, r.ass_betti);
        println!("  C(MAss) dims {:?} betti {:?}", r.mass_dims, r.mass_betti);
        println!("  split {} concentrated {} top {} -> {}", r.split, r.concentrated, r.top_dimensions, r.passed);
    }
}
