//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion may print FAIL without failing the run when the full claim is out
//! of reach or false, as long as every part that can be checked holds. Any
//! other failure makes the run exit nonzero.

use std::process::ExitCode;
use std::time::Instant;

use kleinhomology::chains::tree_cycle_check;
use kleinhomology::complex::CobarOperad;
use kleinhomology::operad::algebra::samples::{cyclic_group_algebra, matrix_algebra, square_zero_m3};
use kleinhomology::operad::algebra::{check_frobenius_involution, check_involutive_ainfty_signs};
use kleinhomology::surface::{surface_type, TopologicalType};
use kleinhomology::verify::{closure_suite, duality_suite, dsq_suite, koszul_suite, standard_range, SweepOutcome, Target, OUT_OF_REACH};
use kleinhomology::HalfEdgeGraph;

struct Outcome {
    passed: bool,
    /// Everything that can be checked holds.
    sound: bool,
    detail: String,
}

impl Outcome {
    fn plain(passed: bool, detail: String) -> Self {
        Outcome { passed, sound: passed, detail }
    }
}

fn graph_targets(sweep: &[SweepOutcome]) -> impl Iterator<Item = &SweepOutcome> {
    sweep.iter().filter(|r| matches!(r.target, Target::Graph { .. }))
}

fn dsq(sweep: &[SweepOutcome]) -> Outcome {
    let built: Vec<_> = sweep.iter().filter(|r| r.dsq.is_some()).collect();
    let bad: Vec<String> = built.iter().filter(|r| r.dsq != Some(true)).map(|r| r.target.to_string()).collect();
    let missing: Vec<String> = sweep.iter().filter(|r| r.dsq.is_none()).map(|r| r.target.to_string()).collect();
    let mut detail = format!("{} of {} complexes built, d^2 = 0 on all but {:?}", built.len(), sweep.len(), bad);
    if !missing.is_empty() {
        detail.push_str(&format!("; not built: {}", missing.join(", ")));
    }
    Outcome { passed: bad.is_empty() && missing.is_empty(), sound: bad.is_empty(), detail }
}

fn split(sweep: &[SweepOutcome]) -> Outcome {
    let dims = |n: usize, operad: CobarOperad| sweep.iter().find(|r| r.target == Target::Cobar { n, operad }).map(|r| r.dims.clone());
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 2..=6 {
        let (a, m) = (dims(n, CobarOperad::Ass).unwrap_or_default(), dims(n, CobarOperad::MAss).unwrap_or_default());
        let good = !a.is_empty() && a.len() == m.len() && a.iter().zip(&m).all(|(x, y)| *y == x << n);
        ok &= good;
        detail.push(format!("n={n} {:?}", m));
    }
    Outcome::plain(ok, detail.join("; "))
}

fn koszul() -> Outcome {
    let rs = koszul_suite(5).expect("cobar complexes build");
    let ok = rs.iter().all(|r| r.passed);
    let tops: Vec<String> = rs.iter().map(|r| format!("n={} {}/{}", r.n, r.ass_betti.last().unwrap(), r.mass_betti.last().unwrap())).collect();
    Outcome::plain(ok, format!("top homology {}; n=6 not run", tops.join(", ")))
}

fn duality() -> Outcome {
    let r = duality_suite();
    Outcome::plain(
        r.passed,
        format!(
            "dim F(E)(3) = {}, dim R = {}, dim R^perp = {}, Psi(R) = R^perp: {}",
            r.mass.dim_free,
            r.mass.dim_relations,
            r.mass.dim_orthogonal,
            r.mass.image_in_orthogonal && r.mass.dim_image == r.mass.dim_orthogonal
        ),
    )
}

fn tree_cycle() -> Outcome {
    let r = tree_cycle_check().expect("complexes at (0,5) build");
    let b1 = r.dianalytic_betti.get(1).copied().unwrap_or(0);
    let sound = r.is_cycle && b1 >= 1 && r.moebius_top_only;
    let mut detail = format!(
        "cycle {}, boundary {}, b_1 = {b1}, Möbius betti {:?}",
        r.is_cycle, r.is_boundary, r.moebius_betti
    );
    if let Some((x, y)) = r.bounding_pair {
        detail.push_str(&format!("; T = {x} d(5;1,2,3,4) + {y} d(5;2,1,3,4)"));
    }
    Outcome { passed: r.passed, sound, detail }
}

fn one_vertex(word: &[usize], pairs: &[(usize, usize)], colors: Vec<u8>) -> HalfEdgeGraph {
    let legs: Vec<(u32, usize)> =
        (0..word.len()).filter(|h| !pairs.iter().any(|&(a, b)| a == *h || b == *h)).zip(1..).map(|(h, l)| (l, h)).collect();
    HalfEdgeGraph::from_rotation(word.len(), &[word.to_vec()], pairs, &legs, colors).unwrap()
}

fn invariance(sweep: &[SweepOutcome]) -> Outcome {
    let t = |g: &HalfEdgeGraph| surface_type(g).unwrap().topological_type();
    let basic = t(&one_vertex(&[0, 1, 2, 3, 4], &[(0, 2), (1, 3)], vec![0; 5])) == TopologicalType { m: 1, u: 0, h: 1 }
        && t(&one_vertex(&[0, 1, 2], &[(0, 1)], vec![0, 1, 0])) == TopologicalType { m: 0, u: 1, h: 1 }
        && t(&one_vertex(&[0, 1, 2], &[(0, 1)], vec![0; 3])) == TopologicalType { m: 0, u: 0, h: 2 };
    let (mut graphs, mut contractions, mut violations) = (0, 0, 0);
    let mut missing = Vec::new();
    for r in graph_targets(sweep) {
        match (&r.invariance, r.target) {
            (Some(i), _) => {
                graphs += i.graphs;
                contractions += i.contractions;
                violations += i.violations.len();
            }
            (None, Target::Graph { variant, .. }) if variant.has_colors() || variant == kleinhomology::GraphVariant::Ribbon => {
                missing.push(r.target.to_string())
            }
            _ => {}
        }
    }
    let mut detail = format!("{contractions} contractions of {graphs} graphs, {violations} change the surface; basic surfaces {basic}");
    if !missing.is_empty() {
        detail.push_str(&format!("; not enumerated: {}", missing.join(", ")));
    }
    Outcome { passed: basic && violations == 0 && missing.is_empty(), sound: basic && violations == 0, detail }
}

fn closure() -> Outcome {
    let r = closure_suite().expect("closure classes build");
    let certs: Vec<String> = r.certificates.iter().map(|c| format!("({},{}) {}={}", c.genus, c.legs, c.classes, c.invariants)).collect();
    Outcome::plain(r.passed, format!("{}; relations {} {}", certs.join(" "), r.relation_one, r.relation_two))
}

fn top_degree(sweep: &[SweepOutcome]) -> Outcome {
    let rows: Vec<_> = graph_targets(sweep).flat_map(|r| &r.types).collect();
    let bad: Vec<String> = rows.iter().filter(|t| !t.ok()).map(|t| format!("({},{},{};{})", t.m, t.u, t.h, t.legs)).collect();
    let witnessed = rows.iter().filter(|t| t.witnessed).count();
    Outcome::plain(
        bad.is_empty() && !rows.is_empty(),
        format!("{} types, {witnessed} by trivalent witness, off top degree: {:?}", rows.len(), bad),
    )
}

fn algebras() -> Outcome {
    let frob = |t| check_frobenius_involution(&t).unwrap();
    let transpose = frob(matrix_algebra(true));
    let z3 = frob(cyclic_group_algebra(3));
    let identity = frob(matrix_algebra(false));
    let witness = identity.checks.iter().find(|c| !c.passed).and_then(|c| c.witnesses.first().map(|w| (c.axiom.clone(), w.clone())));
    let signs_ok = check_involutive_ainfty_signs(&square_zero_m3(-1)).unwrap().passed;
    let signs_caught = !check_involutive_ainfty_signs(&square_zero_m3(1)).unwrap().passed;
    let ok = transpose.passed && z3.passed && !identity.passed && witness.is_some() && signs_ok && signs_caught;
    Outcome::plain(
        ok,
        format!(
            "transpose {}, Z3 {}, identity involution fails at {:?}, m3 sign law holds {} and rejects the wrong sign {}",
            transpose.passed, z3.passed, witness, signs_ok, signs_caught
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let targets = standard_range();
    println!("sweeping {} complexes ({} out of reach)", targets.len(), OUT_OF_REACH.len());
    let sweep = dsq_suite(&targets, |r| {
        println!("  {:<20} dims {:?} {:.1}s{}", r.target.to_string(), r.dims, r.seconds, r.note.as_deref().map(|n| format!(" [{n}]")).unwrap_or_default());
    });
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 9] = [
        ("d^2 = 0 over the standard range", Box::new(|| dsq(&sweep))),
        ("dim C(MAss)(n) = 2^n dim C(Ass)(n), n <= 6", Box::new(|| split(&sweep))),
        ("Koszulness, n <= 5", Box::new(koszul)),
        ("quadratic self-duality at arity 3", Box::new(duality)),
        ("eight-term tree cycle at (0,5)", Box::new(tree_cycle)),
        ("surface type invariant under contraction", Box::new(|| invariance(&sweep))),
        ("modular closure certificate", Box::new(closure)),
        ("top degree 6g+3u+3h+n-6", Box::new(|| top_degree(&sweep))),
        ("algebra checkers", Box::new(algebras)),
    ];
    let mut sound = true;
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        sound &= o.sound;
        passed += o.passed as usize;
        println!("{} criterion {}: {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{passed}/9 criteria pass in {:.0}s", start.elapsed().as_secs_f64());
    if sound {
        ExitCode::SUCCESS
    } else {
        println!("a checkable part of some criterion failed");
        ExitCode::FAILURE
    }
}
