//! The d^2 = 0 and surface sweep over graph and cobar complexes up to the given
//! bounds (defaults: genus 2, 3 legs, arity 5).
//!
//! cargo run --release --example sweep -- [max genus] [max legs] [max arity]

use kleinhomology::verify::{dsq_suite, out_of_reach, range, Target};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().unwrap());
    let (g, n, c) = (args.next().unwrap_or(2), args.next().unwrap_or(3), args.next().unwrap_or(5));
    let targets: Vec<Target> = range(g, n, c)
        .into_iter()
        .filter(|t| !matches!(*t, Target::Graph { genus, legs, variant } if out_of_reach(genus, legs, variant).is_some()))
        .collect();
    let outcomes = dsq_suite(&targets, |r| {
        let types = r.types.iter().filter(|t| t.ok()).count();
        println!("{:<18} dims {:?} d^2=0 {:?} types at top degree {}/{} {:.1}s", r.target.to_string(), r.dims, r.dsq, types, r.types.len(), r.seconds);
    });
    println!("all passed: {}", outcomes.iter().all(|r| r.passed()));
}
