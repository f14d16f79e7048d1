//! The `kleinhomology` command line.
//!
//! Exit codes: 0 when every requested check passes, 1 on usage errors, 2 when a
//! check fails, 3 on an internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::chains::tree_cycle_check;
use crate::complex::{build_cobar_complex, build_graph_complex, homology, CobarOperad, ComplexError, GradedComplex};
use crate::enumerate::{enumerate_graphs, EnumerationQuery};
use crate::graph::GraphVariant;
use crate::linalg::LinalgError;
use crate::operad::algebra::{check_frobenius_involution, check_involutive_ainfty_signs, AlgebraReport, AlgebraTable};
use crate::operad::closure::closure_classes;
use crate::operad::OperadError;
use crate::surface::{census_row, TopologicalType, CENSUS_HEADER};
use crate::verify::{self, Suite, MAX_COBAR, MAX_GENUS, MAX_LEGS};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kleinhomology", version, about = "Graph complexes, cobar complexes and operadic checks for moduli of Klein surfaces")]
pub struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for enumeration and linear algebra (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Operadic genus `E - V + 1`.
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub legs: usize,
    /// ribbon, moebius, dianalytic or moebius_leg_unoriented.
    #[arg(long, default_value = "moebius")]
    pub variant: GraphVariant,
    /// Restrict to surfaces with `m` handles, `u` crosscaps and `h` boundaries.
    #[arg(long = "type", value_name = "m,u,h")]
    pub surface: Option<TopologicalType>,
}

impl GraphArgs {
    fn query(&self) -> Result<EnumerationQuery, Failure> {
        let q = EnumerationQuery::new(self.genus, self.legs, self.variant);
        match self.surface {
            Some(_) if self.variant == GraphVariant::Dianalytic => Err(Failure::Usage("dianalytic graphs have no surface type".into())),
            Some(t) if t.graph_genus() != self.genus => {
                Err(Failure::Usage(format!("type {t} has genus {}, not {}", t.graph_genus(), self.genus)))
            }
            Some(t) => Ok(q.with_type(t)),
            None => Ok(q),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count reduced graphs by edge number.
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also print one census row per graph.
        #[arg(long)]
        census: bool,
    },
    /// Betti numbers of a graph complex, in edge and moduli grading.
    Homology {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Dimensions and Betti numbers of the cobar complex `C(P)(n)`.
    Cobar {
        #[arg(long)]
        n: usize,
        /// ass or mass.
        #[arg(long)]
        operad: CobarOperad,
    },
    /// Run verification suites.
    Verify {
        /// all, dsq, koszul, duality, closure or figure-t (alias tree-cycle).
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = MAX_GENUS)]
        max_genus: usize,
        #[arg(long, default_value_t = MAX_LEGS)]
        max_legs: usize,
        #[arg(long, default_value_t = MAX_COBAR)]
        max_cobar: usize,
        /// Largest arity for the Koszul suite.
        #[arg(long, default_value_t = 5)]
        koszul_max: usize,
    },
    /// Contraction classes against surface invariants.
    Closure {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        legs: usize,
        #[arg(long, default_value = "moebius")]
        variant: GraphVariant,
        /// Largest edge count enumerated (default: the trivalent count).
        #[arg(long)]
        edge_bound: Option<usize>,
    },
    /// Check an algebra table against the involutive Frobenius or A-infinity axioms.
    CheckAlgebra {
        table: PathBuf,
        /// frobenius, ainfty, or auto (ainfty when the table is graded or has higher products).
        #[arg(long, default_value = "auto")]
        axioms: String,
    },
    /// Write the graphs of a query as DOT, or the complex as JSON with `--json`.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        dot: bool,
        /// Only graphs with this many edges.
        #[arg(long)]
        edges: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<LinalgError> for Failure {
    fn from(e: LinalgError) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<OperadError> for Failure {
    fn from(e: OperadError) -> Self {
        match e {
            OperadError::MalformedTable(_) | OperadError::Unsupported(_) => Failure::Usage(e.to_string()),
            e => Failure::Internal(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command, writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        // a second call in one process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match execute(&cli, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            EXIT_INTERNAL
        }
    }
}

fn emit(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))?;
    Ok(())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, Failure> {
    match &cli.command {
        Command::Enumerate { graph, census } => {
            let q = graph.query()?;
            let family = enumerate_graphs(&q);
            let rows: Vec<String> = if *census {
                (0..family.levels.len())
                    .flat_map(|e| family.graphs(e).collect::<Vec<_>>())
                    .filter_map(|g| census_row(&g, q.variant).ok())
                    .collect()
            } else {
                Vec::new()
            };
            if cli.json {
                emit(out, &json!({ "query": q, "counts": family.counts(), "total": family.total(), "census": rows }))?;
            } else {
                writeln!(out, "{} genus {} legs {}: {} classes", q.variant, q.genus, q.legs, family.total())?;
                for (e, c) in family.counts().iter().enumerate() {
                    writeln!(out, "  {e} edges: {c}")?;
                }
                if *census {
                    writeln!(out, "{CENSUS_HEADER}")?;
                    for r in rows {
                        writeln!(out, "{r}")?;
                    }
                }
            }
            Ok(true)
        }
        Command::Homology { graph } => {
            let q = graph.query()?;
            let c = build_graph_complex(&q)?;
            let report = homology(&c)?;
            if cli.json {
                emit(out, &json!({ "query": q, "homology": report }))?;
            } else {
                writeln!(out, "{} genus {} legs {} (moduli dimension {})", graph.variant, graph.genus, graph.legs, c.meta.moduli_dimension())?;
                writeln!(out, "{:>6} {:>8} {:>10} {:>6}", "edges", "moduli", "dim", "betti")?;
                for (s, (&(m, b), dim)) in report.moduli_grading.iter().zip(&report.dims).enumerate() {
                    writeln!(out, "{s:>6} {m:>8} {dim:>10} {b:>6}")?;
                }
                writeln!(out, "euler characteristic {}", report.euler_from_betti)?;
            }
            Ok(true)
        }
        Command::Cobar { n, operad } => {
            if *n < 2 {
                return Err(Failure::Usage(format!("cobar complexes need n >= 2, got {n}")));
            }
            let c = build_cobar_complex(*n, *operad)?;
            let betti = c.betti_numbers()?;
            if cli.json {
                emit(out, &json!({ "n": n, "operad": operad, "dims": c.dims(), "betti": betti }))?;
            } else {
                writeln!(out, "C({operad:?})({n})")?;
                writeln!(out, "dims {}", list(&c.dims()))?;
                writeln!(out, "betti {}", list(&betti))?;
            }
            Ok(true)
        }
        Command::Verify { suite, max_genus, max_legs, max_cobar, koszul_max } => {
            let mut passed = true;
            let mut report = serde_json::Map::new();
            let want = |s: Suite| *suite == Suite::All || *suite == s;
            if want(Suite::Dsq) {
                let targets = verify::range(*max_genus, *max_legs, *max_cobar);
                let json_mode = cli.json;
                let outcomes = verify::dsq_suite(&targets, |r| {
                    if !json_mode {
                        let _ = writeln!(out, "{}", sweep_line(r));
                        let _ = out.flush();
                    }
                });
                passed &= outcomes.iter().all(|r| r.passed());
                report.insert("dsq".into(), json!(outcomes));
            }
            if want(Suite::Koszul) {
                let rs = verify::koszul_suite(*koszul_max)?;
                for r in &rs {
                    passed &= r.passed;
                    if !cli.json {
                        writeln!(out, "koszul n={} {}: betti {} / {}", r.n, mark(r.passed), list(&r.ass_betti), list(&r.mass_betti))?;
                    }
                }
                report.insert("koszul".into(), json!(rs));
            }
            if want(Suite::Duality) {
                let r = verify::duality_suite();
                passed &= r.passed;
                if !cli.json {
                    writeln!(
                        out,
                        "duality {}: dim F(E)(3) = {}, dim R = {}, dim R^perp = {}, dim Psi(R) = {}",
                        mark(r.passed),
                        r.mass.dim_free,
                        r.mass.dim_relations,
                        r.mass.dim_orthogonal,
                        r.mass.dim_image
                    )?;
                }
                report.insert("duality".into(), json!(r));
            }
            if want(Suite::Closure) {
                let r = verify::closure_suite()?;
                passed &= r.passed;
                if !cli.json {
                    for c in &r.certificates {
                        writeln!(out, "closure ({},{}) {}: {} classes, {} invariants", c.genus, c.legs, mark(c.certified), c.classes, c.invariants)?;
                    }
                    writeln!(out, "relation (1) {}, relation (2) {}", mark(r.relation_one), mark(r.relation_two))?;
                }
                report.insert("closure".into(), json!(r));
            }
            if want(Suite::TreeCycle) {
                let r = tree_cycle_check()?;
                passed &= r.passed;
                if !cli.json {
                    writeln!(
                        out,
                        "tree cycle {}: cycle {}, boundary {}, dianalytic betti {}, moebius betti {}",
                        mark(r.passed),
                        r.is_cycle,
                        r.is_boundary,
                        list(&r.dianalytic_betti),
                        list(&r.moebius_betti)
                    )?;
                    if let Some((x, y)) = r.bounding_pair {
                        writeln!(out, "  T = {x} d(1,2,3,4) + {y} d(2,1,3,4)")?;
                    }
                }
                report.insert("tree_cycle".into(), json!(r));
            }
            if cli.json {
                report.insert("passed".into(), json!(passed));
                emit(out, &serde_json::Value::Object(report))?;
            } else {
                writeln!(out, "{}", mark(passed))?;
            }
            Ok(passed)
        }
        Command::Closure { genus, legs, variant, edge_bound } => {
            let bound = match edge_bound {
                Some(b) => *b,
                None => EnumerationQuery::new(*genus, *legs, *variant)
                    .max_edges()
                    .ok_or_else(|| Failure::Usage(format!("({genus},{legs}) is unstable; pass --edge-bound")))?,
            };
            let r = closure_classes(*genus, *legs, *variant, bound)?;
            if cli.json {
                emit(out, &json!(r))?;
            } else {
                writeln!(out, "{variant} genus {genus} legs {legs}, edges <= {bound}: {} graphs", r.graphs)?;
                writeln!(out, "{} classes, {} surface invariants: {}", r.classes.len(), r.invariant_count, mark(r.certified))?;
                for c in &r.classes {
                    let t = c.invariant.topological_type();
                    writeln!(out, "  ({},{},{}) {} members, legs {}", t.m, t.u, t.h, c.members, c.invariant.boundary_partition())?;
                }
            }
            Ok(r.certified)
        }
        Command::CheckAlgebra { table, axioms } => {
            let text = std::fs::read_to_string(table).map_err(|e| Failure::Usage(format!("{}: {e}", table.display())))?;
            let t = AlgebraTable::from_json(&text)?;
            let graded = t.grading.is_some() || !t.higher.is_empty();
            let report: AlgebraReport = match axioms.as_str() {
                "frobenius" => check_frobenius_involution(&t)?,
                "ainfty" => check_involutive_ainfty_signs(&t)?,
                "auto" if graded => check_involutive_ainfty_signs(&t)?,
                "auto" => check_frobenius_involution(&t)?,
                other => return Err(Failure::Usage(format!("unknown axiom set {other:?}"))),
            };
            if cli.json {
                emit(out, &json!(report))?;
            } else {
                for c in &report.checks {
                    writeln!(out, "{} {}", mark(c.passed), c.axiom)?;
                    if let Some(w) = c.witnesses.first() {
                        writeln!(out, "  witness ({}), {} in total", w.join(", "), c.witnesses.len())?;
                    }
                    if let Some(n) = &c.note {
                        writeln!(out, "  {n}")?;
                    }
                }
            }
            Ok(report.passed)
        }
        Command::Export { graph, dot, edges } => {
            if *dot == cli.json {
                return Err(Failure::Usage("export needs exactly one of --dot and --json".into()));
            }
            let q = graph.query()?;
            if cli.json {
                let c: GradedComplex = build_graph_complex(&q)?;
                emit(out, &c.to_json())?;
            } else {
                let family = enumerate_graphs(&q);
                for e in 0..family.levels.len() {
                    if edges.is_some_and(|x| x != e) {
                        continue;
                    }
                    for (i, g) in family.graphs(e).enumerate() {
                        writeln!(out, "// {} edges, graph {i}", e)?;
                        write!(out, "{}", g.to_dot())?;
                    }
                }
            }
            Ok(true)
        }
    }
}

fn sweep_line(r: &verify::SweepOutcome) -> String {
    let mut s = format!("dsq {} {}: dims [{}]", mark(r.passed()), r.target, list(&r.dims));
    if let Some(i) = &r.invariance {
        s.push_str(&format!(", {} contractions, {} type changes", i.contractions, i.violations.len()));
    }
    if !r.types.is_empty() {
        let bad = r.types.iter().filter(|t| !t.ok()).count();
        s.push_str(&format!(", {} types ({} off top degree)", r.types.len(), bad));
    }
    if let Some(n) = &r.note {
        s.push_str(&format!(" [{n}]"));
    }
    s.push_str(&format!(" {:.1}s", r.seconds));
    s
}
