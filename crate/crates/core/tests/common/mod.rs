//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use kleinhomology::GraphVariant;
use proptest::test_runner::{Config, RngSeed};

/// Proptest configuration; `KLEINHOMOLOGY_SEED` fixes the RNG seed.
pub fn proptest_config(cases: u32) -> Config {
    let mut c = Config::with_cases(cases);
    if let Some(seed) = std::env::var("KLEINHOMOLOGY_SEED").ok().and_then(|s| s.parse().ok()) {
        c.rng_seed = RngSeed::Fixed(seed);
    }
    c.failure_persistence = None;
    c
}

fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
    fn go(k: usize, p: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, f);
            p.swap(k, i);
        }
    }
    go(0, &mut (0..n).collect(), f);
}

fn cycles(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut h = s;
        while !seen[h] {
            seen[h] = true;
            c.push(h);
            h = sigma[h];
        }
        out.push(c);
    }
    out
}

/// Brute-force isomorphism class count of reduced graphs, by edge number.
///
/// Half-edges `2i, 2i+1` form edge `i`, the last `legs` half-edges are legs
/// `1..=legs`. A graph is a rotation permutation plus, for Möbius graphs, a
/// twist bit per edge and a colour bit per leg. Classes are orbits under
/// relabelling edges and their ends, and under vertex reflections (dianalytic:
/// reverse the rotation; Möbius: also flip the legs there and the twist of every
/// edge with exactly one end there). Every graph is put in the orbit of its
/// least key, which is then counted once.
pub fn naive_counts(genus: usize, legs: usize, variant: GraphVariant) -> Vec<usize> {
    let top = 3 * genus + legs - 3;
    (0..=top).map(|e| naive_level(genus, legs, e, variant)).collect()
}

fn naive_level(genus: usize, legs: usize, e: usize, variant: GraphVariant) -> usize {
    let Some(v) = (e + 1).checked_sub(genus) else { return 0 };
    if v == 0 {
        return 0;
    }
    let n = 2 * e + legs;
    let colored = variant == GraphVariant::Moebius;
    let reflect = variant != GraphVariant::Ribbon;

    // edge relabellings: permute edges, flip each
    let mut relabels: Vec<Vec<usize>> = Vec::new();
    permutations(e, &mut |p| {
        for flips in 0..1u32 << e {
            let mut pi: Vec<usize> = (0..n).collect();
            for i in 0..e {
                let f = (flips >> i & 1) as usize;
                pi[2 * i] = 2 * p[i] + f;
                pi[2 * i + 1] = 2 * p[i] + 1 - f;
            }
            relabels.push(pi);
        }
    });

    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    permutations(n, &mut |sigma| {
        let cyc = cycles(sigma);
        if cyc.len() != v || cyc.iter().any(|c| c.len() < 3) {
            return;
        }
        let mut vert = vec![0; n];
        for (i, c) in cyc.iter().enumerate() {
            for &h in c {
                vert[h] = i;
            }
        }
        if !connected(&vert, e, v) {
            return;
        }
        let colourings = if colored { 1u32 << (e + legs) } else { 1 };
        for col in 0..colourings {
            let twist: Vec<u8> = (0..e).map(|i| (col >> i & 1) as u8).collect();
            let leg: Vec<u8> = (0..legs).map(|i| (col >> (e + i) & 1) as u8).collect();
            let mut best: Option<Vec<usize>> = None;
            for r in 0..if reflect { 1u32 << v } else { 1 } {
                let flipped = |x: usize| r >> vert[x] & 1 == 1;
                let mut s = sigma.to_vec();
                for h in 0..n {
                    if flipped(h) {
                        s[sigma[h]] = h;
                    }
                }
                let tw: Vec<u8> = (0..e).map(|i| twist[i] ^ (colored && flipped(2 * i) != flipped(2 * i + 1)) as u8).collect();
                let lg: Vec<u8> = (0..legs).map(|i| leg[i] ^ (colored && flipped(2 * e + i)) as u8).collect();
                for pi in &relabels {
                    let mut key = vec![0; n];
                    for h in 0..n {
                        key[pi[h]] = pi[s[h]];
                    }
                    let mut t = vec![0u8; e];
                    for i in 0..e {
                        t[pi[2 * i] / 2] = tw[i];
                    }
                    key.extend(t.iter().map(|&x| x as usize));
                    key.extend(lg.iter().map(|&x| x as usize));
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
            }
            classes.insert(best.expect("group is nonempty"));
        }
    });
    classes.len()
}

fn connected(vert: &[usize], e: usize, v: usize) -> bool {
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..e {
        let (a, b) = (find(&mut parent, vert[2 * i]), find(&mut parent, vert[2 * i + 1]));
        parent[a] = b;
    }
    let r = find(&mut parent, 0);
    (0..v).all(|x| find(&mut parent, x) == r)
}

/// Betti numbers of the real moduli space of stable genus 0 curves with `n`
/// marked points, `prod_{0 <= k < (n-3)/2} (1 + (n-3-2k)^2 t)`, reindexed by
/// edge degree `s = (n - 3) - i`.
pub fn real_m0n_betti(n: usize) -> Vec<usize> {
    let mut p = vec![1usize];
    let mut k = 0;
    while 2 * k + 3 < n {
        let a = (n - 3 - 2 * k).pow(2);
        let mut q = vec![0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            q[i] += c;
            q[i + 1] += a * c;
        }
        p = q;
        k += 1;
    }
    let d = n - 3;
    (0..=d).map(|s| p.get(d - s).copied().unwrap_or(0)).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Planar trees with `n` labelled inputs and `s` internal edges: `n!` times the
/// number of dissections of an `(n+1)`-gon by `s` diagonals.
pub fn planar_tree_count(n: usize, s: usize) -> usize {
    let fact: usize = (1..=n).product();
    fact * binomial(n - 2, s) * binomial(n + s, s) / (s + 1)
}
