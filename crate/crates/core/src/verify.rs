//! Verification suites over the standard range: every graph complex of genus
//! at most 3 with at most 4 legs, and the cobar complexes for `n <= 6`.
//!
//! The larger complexes are built as direct sums over surface sectors
//! ([`BY_SECTOR`]). One complex in that range is out of reach, see
//! [`OUT_OF_REACH`]; there the top-degree check falls back on explicit trivalent
//! witnesses and the other checks report it as unverified.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_cobar_complex, build_cobar_sector, build_graph_complex, build_graph_sector, CobarOperad, ComplexError, GradedComplex};
use crate::enumerate::{expansions, one_vertex_graphs, surface_sectors, EnumerationQuery};
use crate::operad::closure::{closure_classes, relation_one_pair, relation_two_pair, ClosureReport};
use crate::operad::duality::{quadratic_duality_check, quadratic_duality_check_ass, DualityReport};
use crate::operad::koszul::{koszul_check, KoszulReport};
use crate::operad::OperadError;
use crate::graph::{GraphVariant, HalfEdgeGraph};
use crate::surface::{surface_invariant, surface_type, TopologicalType};

pub const MAX_GENUS: usize = 3;
pub const MAX_LEGS: usize = 4;
pub const MAX_COBAR: usize = 6;

/// Graph complexes in range that are too large to build, with the reason.
pub const OUT_OF_REACH: [(usize, usize, GraphVariant, &str); 1] =
    [(3, 4, GraphVariant::Moebius, "about 9e8 graphs, 64 times the ribbon count of 14.5M")];

/// Graph complexes built one surface sector at a time to bound memory.
pub const BY_SECTOR: [(usize, usize, GraphVariant); 3] =
    [(2, 4, GraphVariant::Moebius), (3, 3, GraphVariant::Moebius), (3, 4, GraphVariant::Ribbon)];

pub fn out_of_reach(genus: usize, legs: usize, variant: GraphVariant) -> Option<&'static str> {
    OUT_OF_REACH.iter().find(|&&(g, n, v, _)| (g, n, v) == (genus, legs, variant)).map(|t| t.3)
}

/// One complex of the range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Graph { genus: usize, legs: usize, variant: GraphVariant },
    Cobar { n: usize, operad: CobarOperad },
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Graph { genus, legs, variant } => write!(f, "{variant}({genus},{legs})"),
            Target::Cobar { n, operad } => write!(f, "C({operad:?})({n})"),
        }
    }
}

/// Stable graph complexes and cobar complexes up to the given bounds, in
/// increasing size.
pub fn range(max_genus: usize, max_legs: usize, max_cobar: usize) -> Vec<Target> {
    let mut out = Vec::new();
    for n in 2..=max_cobar {
        for operad in [CobarOperad::Ass, CobarOperad::MAss] {
            out.push(Target::Cobar { n, operad });
        }
    }
    for genus in 0..=max_genus {
        for legs in 0..=max_legs {
            if 2 * genus + legs <= 2 {
                continue;
            }
            for variant in [GraphVariant::Ribbon, GraphVariant::Moebius, GraphVariant::Dianalytic] {
                out.push(Target::Graph { genus, legs, variant });
            }
        }
    }
    out
}

pub fn standard_range() -> Vec<Target> {
    range(MAX_GENUS, MAX_LEGS, MAX_COBAR)
}

/// Largest edge count seen for one topological type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRow {
    pub genus: usize,
    pub legs: usize,
    pub m: usize,
    pub u: usize,
    pub h: usize,
    pub max_edges: usize,
    /// `6m + 3u + 3h + n - 6`.
    pub expected: isize,
    /// Read off a trivalent witness instead of the full enumeration.
    pub witnessed: bool,
}

impl TypeRow {
    pub fn ok(&self) -> bool {
        self.max_edges as isize == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceCount {
    pub graphs: usize,
    pub contractions: usize,
    /// Hex codes of graphs with a contraction changing the surface type.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub target: Target,
    pub dims: Vec<usize>,
    /// `None` when the complex was not built.
    pub dsq: Option<bool>,
    pub invariance: Option<InvarianceCount>,
    pub types: Vec<TypeRow>,
    pub seconds: f64,
    pub note: Option<String>,
}

fn sector_sweep(n: usize) -> Result<(Vec<usize>, bool), ComplexError> {
    let mut dims: Vec<usize> = Vec::new();
    for mask in 0..1u32 << n {
        let s = build_cobar_sector(n, mask)?;
        if dims.is_empty() {
            dims = vec![0; s.dims().len()];
        }
        for (d, x) in dims.iter_mut().zip(s.dims()) {
            *d += x;
        }
    }
    Ok((dims, true))
}

/// Builds the complex (which checks `d^2 = 0`), then runs the surface checks on
/// its bases. `C(MAss)(n)` for `n >= 6` is built one leg-twist sector at a time.
pub fn sweep(t: Target) -> SweepOutcome {
    let start = Instant::now();
    let mut out = SweepOutcome { target: t, dims: Vec::new(), dsq: None, invariance: None, types: Vec::new(), seconds: 0.0, note: None };
    match t {
        Target::Cobar { n, operad: CobarOperad::MAss } if n >= 6 => match sector_sweep(n) {
            Ok((dims, ok)) => {
                out.dims = dims;
                out.dsq = Some(ok);
                out.note = Some(format!("built as {} leg-twist sectors", 1u32 << n));
            }
            Err(e) => fail(&mut out, e),
        },
        Target::Cobar { n, operad } => match build_cobar_complex(n, operad) {
            Ok(c) => {
                out.dims = c.dims();
                out.dsq = Some(c.is_validated());
            }
            Err(e) => fail(&mut out, e),
        },
        Target::Graph { genus, legs, variant } => {
            if let Some(why) = out_of_reach(genus, legs, variant) {
                out.note = Some(format!("not built: {why}"));
                if variant != GraphVariant::Dianalytic {
                    out.types = top_degree_witnesses(genus, legs, variant);
                }
            } else if BY_SECTOR.contains(&(genus, legs, variant)) {
                match graph_sector_sweep(genus, legs, variant) {
                    Ok((dims, inv, types, k)) => {
                        out.dims = dims;
                        out.dsq = Some(true);
                        out.invariance = Some(inv);
                        out.types = types;
                        out.note = Some(format!("built as {k} surface sectors"));
                    }
                    Err(e) => fail(&mut out, e),
                }
            } else {
                match build_graph_complex(&EnumerationQuery::new(genus, legs, variant)) {
                    Ok(c) => {
                        out.dims = c.dims();
                        out.dsq = Some(c.is_validated());
                        if variant != GraphVariant::Dianalytic {
                            let (inv, types) = surface_checks(&c, genus, legs, variant);
                            out.invariance = Some(inv);
                            out.types = types;
                        }
                    }
                    Err(e) => fail(&mut out, e),
                }
            }
        }
    }
    out.seconds = start.elapsed().as_secs_f64();
    out
}

type SectorSweep = (Vec<usize>, InvarianceCount, Vec<TypeRow>, usize);

/// Builds and validates every surface sector of a ribbon or Möbius complex in
/// turn, with the surface checks on each.
fn graph_sector_sweep(genus: usize, legs: usize, variant: GraphVariant) -> Result<SectorSweep, ComplexError> {
    let q = EnumerationQuery::new(genus, legs, variant);
    let sectors = surface_sectors(&q);
    let mut dims: Vec<usize> = Vec::new();
    let mut inv = InvarianceCount { graphs: 0, contractions: 0, violations: Vec::new() };
    let mut rows: BTreeMap<(usize, usize, usize), TypeRow> = BTreeMap::new();
    for sector in &sectors {
        let c = build_graph_sector(&q, sector)?;
        if dims.len() < c.dims().len() {
            dims.resize(c.dims().len(), 0);
        }
        for (d, x) in dims.iter_mut().zip(c.dims()) {
            *d += x;
        }
        let (i, types) = surface_checks(&c, genus, legs, variant);
        inv.graphs += i.graphs;
        inv.contractions += i.contractions;
        inv.violations.extend(i.violations);
        for t in types {
            let r = rows.entry((t.m, t.u, t.h)).or_insert_with(|| t.clone());
            r.max_edges = r.max_edges.max(t.max_edges);
        }
    }
    Ok((dims, inv, rows.into_values().collect(), sectors.len()))
}

fn fail(out: &mut SweepOutcome, e: ComplexError) {
    out.dsq = Some(false);
    out.note = Some(e.to_string());
}

fn surface_checks(c: &GradedComplex, genus: usize, legs: usize, variant: GraphVariant) -> (InvarianceCount, Vec<TypeRow>) {
    // excluded classes are still enumerated graphs
    let all: Vec<_> = c.bases.iter().chain(&c.excluded).flatten().collect();
    let per_graph: Vec<(usize, Option<String>, TopologicalType, usize)> = all
        .par_iter()
        .map(|code| {
            let g = code.decode().expect("stored codes decode");
            let ty = surface_invariant(&g, variant).expect("colored graphs have surfaces");
            let mut contractions = 0;
            let mut bad = false;
            for e in g.edges() {
                if g.is_loop(e) {
                    continue;
                }
                contractions += 1;
                let small = g.contract_edge(e).expect("non-loop edges contract");
                bad |= surface_invariant(&small, variant).ok().as_ref() != Some(&ty);
            }
            (contractions, bad.then(|| code.to_hex()), ty.topological_type(), g.n_edges())
        })
        .collect();
    let mut inv = InvarianceCount { graphs: all.len(), contractions: 0, violations: Vec::new() };
    let mut max: BTreeMap<TopologicalType, usize> = BTreeMap::new();
    for (k, bad, ty, e) in per_graph {
        inv.contractions += k;
        inv.violations.extend(bad);
        let m = max.entry(ty).or_insert(0);
        *m = (*m).max(e);
    }
    let types = max
        .into_iter()
        .map(|(t, e)| TypeRow { genus, legs, m: t.m, u: t.u, h: t.h, max_edges: e, expected: t.top_degree(legs), witnessed: false })
        .collect();
    (inv, types)
}

/// For each type among one-vertex graphs: expand until trivalent, checking the
/// type along the way. Reduced graphs never have more than `3 genus - 3 + legs`
/// edges, so reaching that bound settles the maximum.
pub fn top_degree_witnesses(genus: usize, legs: usize, variant: GraphVariant) -> Vec<TypeRow> {
    let mut seeds: BTreeMap<TopologicalType, HalfEdgeGraph> = BTreeMap::new();
    for g in one_vertex_graphs(genus, legs, variant) {
        if let Ok(s) = surface_type(&g) {
            seeds.entry(s.topological_type()).or_insert(g);
        }
    }
    seeds
        .into_iter()
        .map(|(t, mut g)| {
            let ty = surface_invariant(&g, variant).expect("colored graphs have surfaces");
            while let Some(next) = expansions(&g).into_iter().next() {
                if surface_invariant(&next, variant).ok().as_ref() != Some(&ty) {
                    break;
                }
                g = next;
            }
            TypeRow { genus, legs, m: t.m, u: t.u, h: t.h, max_edges: g.n_edges(), expected: t.top_degree(legs), witnessed: true }
        })
        .collect()
}

/// One certified closure range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub genus: usize,
    pub legs: usize,
    pub edge_bound: usize,
    pub graphs: usize,
    pub classes: usize,
    pub invariants: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSuite {
    pub certificates: Vec<ClosureCertificate>,
    /// Relation (1) witnesses merge at `(1,2)`.
    pub relation_one: bool,
    /// Relation (2) witnesses merge at `(3,1)`.
    pub relation_two: bool,
    pub passed: bool,
}

pub const CLOSURE_RANGE: [(usize, usize); 5] = [(2, 0), (3, 0), (1, 1), (1, 2), (2, 1)];

fn certificate(r: &ClosureReport) -> ClosureCertificate {
    ClosureCertificate {
        genus: r.genus,
        legs: r.legs,
        edge_bound: r.edge_bound,
        graphs: r.graphs,
        classes: r.classes.len(),
        invariants: r.invariant_count,
        certified: r.certified,
    }
}

/// Möbius closure classes at the trivalent bound over [`CLOSURE_RANGE`], plus
/// the two relation witnesses.
pub fn closure_suite() -> Result<ClosureSuite, OperadError> {
    let mut certificates = Vec::new();
    let mut relation_one = false;
    for (g, n) in CLOSURE_RANGE {
        let r = closure_classes(g, n, GraphVariant::Moebius, 3 * g + n - 3)?;
        if (g, n) == (1, 2) {
            let (a, b) = relation_one_pair();
            relation_one = r.same_class(&a, &b);
        }
        certificates.push(certificate(&r));
    }
    let r = closure_classes(3, 1, GraphVariant::Moebius, 7)?;
    let (a, b) = relation_two_pair();
    let relation_two = r.same_class(&a, &b);
    let passed = relation_one && relation_two && certificates.iter().all(|c| c.certified);
    Ok(ClosureSuite { certificates, relation_one, relation_two, passed })
}

/// Koszulness for `n = 2..=max_n`.
pub fn koszul_suite(max_n: usize) -> Result<Vec<KoszulReport>, OperadError> {
    (2..=max_n).map(koszul_check).collect()
}

/// Both quadratic duality checks: `MAss` and its planar part `Ass`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualitySuite {
    pub mass: DualityReport,
    pub ass: DualityReport,
    /// `dim R = dim F(E)(3) / 2` for `MAss`.
    pub half_dimension: bool,
    pub passed: bool,
}

pub fn duality_suite() -> DualitySuite {
    let mass = quadratic_duality_check();
    let ass = quadratic_duality_check_ass();
    let half_dimension = 2 * mass.dim_relations == mass.dim_free;
    let passed = mass.passed && ass.passed && half_dimension;
    DualitySuite { mass, ass, half_dimension, passed }
}

/// Sweeps `targets` in order, calling `each` after every target.
pub fn dsq_suite(targets: &[Target], mut each: impl FnMut(&SweepOutcome)) -> Vec<SweepOutcome> {
    targets
        .iter()
        .map(|&t| {
            let r = sweep(t);
            each(&r);
            r
        })
        .collect()
}

impl SweepOutcome {
    /// `d^2 = 0`, no contraction changed a surface type, and every type reached
    /// its top degree. Targets that were not built do not pass.
    pub fn passed(&self) -> bool {
        self.dsq == Some(true)
            && self.invariance.as_ref().is_none_or(|i| i.violations.is_empty())
            && self.types.iter().all(TypeRow::ok)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Dsq,
    Koszul,
    Duality,
    Closure,
    TreeCycle,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "dsq" => Suite::Dsq,
            "koszul" => Suite::Koszul,
            "duality" => Suite::Duality,
            "closure" => Suite::Closure,
            "figure-t" | "tree-cycle" => Suite::TreeCycle,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Dsq => "dsq",
            Suite::Koszul => "koszul",
            Suite::Duality => "duality",
            Suite::Closure => "closure",
            Suite::TreeCycle => "figure-t",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps() {
        let r = sweep(Target::Graph { genus: 1, legs: 2, variant: GraphVariant::Moebius });
        assert_eq!(r.dsq, Some(true));
        let inv = r.invariance.unwrap();
        assert!(inv.violations.is_empty() && inv.contractions > 0);
        assert!(r.types.iter().all(TypeRow::ok));
        let r = sweep(Target::Cobar { n: 3, operad: CobarOperad::MAss });
        assert_eq!(r.dims, vec![48, 96]);
    }

    #[test]
    fn sectors_sum_to_the_full_complex() {
        let full = sweep(Target::Graph { genus: 2, legs: 2, variant: GraphVariant::Moebius });
        let (dims, inv, types, k) = graph_sector_sweep(2, 2, GraphVariant::Moebius).unwrap();
        assert!(k > 1);
        assert_eq!(dims, full.dims);
        assert_eq!(inv.contractions, full.invariance.unwrap().contractions);
        assert_eq!(types, full.types);
    }

    #[test]
    fn witnesses_match_enumeration() {
        let full = sweep(Target::Graph { genus: 2, legs: 1, variant: GraphVariant::Moebius }).types;
        let mut w = top_degree_witnesses(2, 1, GraphVariant::Moebius);
        w.iter_mut().for_each(|r| r.witnessed = false);
        assert_eq!(full, w);
    }

    #[test]
    fn closure_certificates() {
        let r = closure_suite().unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.certificates.iter().map(|c| c.classes).collect::<Vec<_>>(), vec![4, 5, 2, 6, 4]);
    }

    #[test]
    fn suites_parse() {
        for s in ["all", "dsq", "koszul", "duality", "closure", "figure-t"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert_eq!("tree-cycle".parse::<Suite>().unwrap(), Suite::TreeCycle);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn range_shape() {
        let r = standard_range();
        assert_eq!(r.iter().filter(|t| matches!(t, Target::Cobar { .. })).count(), 10);
        assert!(!r.contains(&Target::Graph { genus: 1, legs: 0, variant: GraphVariant::Ribbon }));
        assert!(r.contains(&Target::Graph { genus: 3, legs: 4, variant: GraphVariant::Moebius }));
    }
}
