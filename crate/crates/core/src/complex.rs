//! Graph complexes and cobar complexes as integer cochain complexes.
//!
//! Degree is the number of internal edges. The differential expands one vertex in
//! all ways; it is assembled as the transpose of edge contraction. An oriented graph
//! is a graph with an ordering of its edges and an ordered basis of its first
//! homology. If `G'/e` is isomorphic to `G`, the coefficient of `G'` in `dG`
//! compares the orientation of `G'` with `e` prepended to the orientation of `G`
//! carried over along the isomorphism.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{automorphism_signs, canonical_form, CanonicalCode};
use crate::enumerate::{enumerate_graphs, enumerate_sector, expansions, EnumerationQuery, GraphFamily};
use crate::graph::{GraphVariant, HalfEdgeGraph};
use crate::linalg::{self, LinalgError, SparseIntMatrix};
use crate::orientation::{reflection_sign, transport_sign, vertex_reflection_sign, Orientation};
use crate::surface::{SurfaceType, TopologicalType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("degree {degree} is out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("d^2 != 0 between degrees {0} and {1}")]
    NonzeroSquare(usize, usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CobarOperad {
    Ass,
    MAss,
}

impl std::str::FromStr for CobarOperad {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ass" => Ok(CobarOperad::Ass),
            "mass" => Ok(CobarOperad::MAss),
            other => Err(format!("unknown operad {other:?} (expected ass or mass)")),
        }
    }
}

/// A basis vector: canonical graph with an orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedBasisElement {
    pub code: CanonicalCode,
    pub graph: HalfEdgeGraph,
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexMeta {
    pub kind: String,
    pub genus: usize,
    pub legs: usize,
    pub variant: GraphVariant,
    pub filter: Option<TopologicalType>,
}

impl ComplexMeta {
    /// Real dimension of the moduli space the complex computes: `3 genus - 3 + legs`.
    pub fn moduli_dimension(&self) -> usize {
        (3 * self.genus + self.legs).saturating_sub(3)
    }
}

/// Bases by degree (canonical codes, sorted) and `d_s` from degree `s` to `s + 1`.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub meta: ComplexMeta,
    pub bases: Vec<Vec<CanonicalCode>>,
    /// Classes dropped because they have an orientation-reversing automorphism.
    pub excluded: Vec<Vec<CanonicalCode>>,
    pub differentials: Vec<SparseIntMatrix>,
    validated: bool,
}

impl GradedComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Reference-oriented basis element `i` of degree `s`.
    pub fn basis_element(&self, s: usize, i: usize) -> OrientedBasisElement {
        let code = self.bases[s][i].clone();
        let graph = code.decode().expect("stored codes decode");
        let orientation = Orientation::reference(&graph);
        OrientedBasisElement { code, graph, orientation }
    }

    pub fn index_of(&self, code: &CanonicalCode) -> Option<(usize, usize)> {
        self.bases.iter().enumerate().find_map(|(s, b)| b.binary_search(code).ok().map(|i| (s, i)))
    }

    /// `d_s`; at the top degree this is the empty map to the zero space.
    pub fn differential_matrix(&self, s: usize) -> Result<SparseIntMatrix, ComplexError> {
        let top = self.top_degree().ok_or(ComplexError::DegreeOutOfRange { degree: s, top: 0 })?;
        if s < top {
            Ok(self.differentials[s].clone())
        } else if s == top {
            Ok(SparseIntMatrix::zeros(0, self.bases[top].len()))
        } else {
            Err(ComplexError::DegreeOutOfRange { degree: s, top })
        }
    }

    /// Checks shapes and `d_{s+1} d_s = 0`, and marks the complex as validated.
    pub fn validate(&mut self) -> Result<(), ComplexError> {
        for (s, d) in self.differentials.iter().enumerate() {
            if d.cols != self.bases[s].len() || d.rows != self.bases[s + 1].len() {
                return Err(ComplexError::Internal(format!("d_{s} has shape {}x{}", d.rows, d.cols)));
            }
        }
        for s in 0..self.differentials.len().saturating_sub(1) {
            let sq = self.differentials[s + 1].mul(&self.differentials[s])?;
            if !sq.is_zero() {
                return Err(ComplexError::NonzeroSquare(s, s + 2));
            }
        }
        self.validated = true;
        Ok(())
    }

    pub fn betti_numbers(&self) -> Result<Vec<usize>, LinalgError> {
        linalg::betti_numbers(self)
    }

    pub fn euler_characteristic(&self) -> i64 {
        linalg::euler_characteristic(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "meta": self.meta,
            "degrees": self.bases.iter().enumerate().map(|(s, b)| serde_json::json!({
                "degree": s,
                "basis": b.iter().map(|c| c.to_hex()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "differentials": self.differentials.iter().enumerate().map(|(s, d)| serde_json::json!({
                "from": s,
                "rows": d.rows,
                "cols": d.cols,
                "entries": d.entries,
            })).collect::<Vec<_>>(),
        })
    }
}

type OrientFn<'a> = dyn Fn(&HalfEdgeGraph) -> Orientation + Sync + 'a;

pub fn build_graph_complex(q: &EnumerationQuery) -> Result<GradedComplex, ComplexError> {
    build_graph_complex_with(q, &Orientation::reference)
}

/// As [`build_graph_complex`] but with caller-chosen orientations. `orient` must
/// be a function of the canonical graph alone.
pub fn build_graph_complex_with(q: &EnumerationQuery, orient: &OrientFn<'_>) -> Result<GradedComplex, ComplexError> {
    let family = enumerate_graphs(q);
    let meta = ComplexMeta {
        kind: "graph".into(),
        genus: q.genus,
        legs: q.legs,
        variant: q.variant,
        filter: q.filter,
    };
    from_family(&family, meta, orient, true)
}

/// The direct summand of the graph complex spanned by graphs with band surface `sector`.
pub fn build_graph_sector(q: &EnumerationQuery, sector: &SurfaceType) -> Result<GradedComplex, ComplexError> {
    let family = enumerate_sector(q, sector);
    let meta = ComplexMeta {
        kind: format!("graph-sector-{}", sector.boundary_partition()),
        genus: q.genus,
        legs: q.legs,
        variant: q.variant,
        filter: Some(sector.topological_type()),
    };
    from_family(&family, meta, &Orientation::reference, true)
}

/// `C(Ass)(n)` from planar trees or `C(MAss)(n)` from Möbius trees, output leg `n + 1`.
pub fn build_cobar_complex(n: usize, operad: CobarOperad) -> Result<GradedComplex, ComplexError> {
    let variant = match operad {
        CobarOperad::Ass => GraphVariant::Ribbon,
        CobarOperad::MAss => GraphVariant::Moebius,
    };
    let q = EnumerationQuery::new(0, n + 1, variant);
    let family = enumerate_graphs(&q);
    let meta = ComplexMeta {
        kind: format!("cobar-{}", if operad == CobarOperad::Ass { "ass" } else { "mass" }),
        genus: 0,
        legs: n + 1,
        variant,
        filter: None,
    };
    from_family(&family, meta, &Orientation::reference, false)
}

/// The summand of `C(MAss)(n)` whose trees have leg twists `mask` (see
/// [`leg_twists`]). Every Möbius tree is equivalent to a planar tree with
/// untwisted internal edges, so the summand is built from the planar trees
/// with leg `l` coloured by bit `l - 1` of `mask`.
pub fn build_cobar_sector(n: usize, mask: u32) -> Result<GradedComplex, ComplexError> {
    if n < 2 || mask >> n != 0 {
        return Err(ComplexError::Internal(format!("no sector {mask:#b} for n = {n}")));
    }
    let planar = enumerate_graphs(&EnumerationQuery::new(0, n + 1, GraphVariant::Ribbon));
    let variant = GraphVariant::Moebius;
    let levels = planar
        .levels
        .par_iter()
        .map(|level| {
            let mut codes: Vec<CanonicalCode> = level
                .par_iter()
                .map(|c| {
                    let mut raw = c.decode().expect("stored codes decode").to_raw();
                    for (&l, &h) in &raw.legs {
                        raw.color[h] = if (l as usize) <= n { ((mask >> (l - 1)) & 1) as u8 } else { 0 };
                    }
                    let g = crate::graph::validate_graph(&raw).expect("recolouring legs keeps a valid graph");
                    crate::canon::canonical_code(&g, variant)
                })
                .collect();
            codes.sort_unstable();
            codes
        })
        .collect();
    let q = EnumerationQuery::new(0, n + 1, variant);
    let meta = ComplexMeta { kind: format!("cobar-mass-sector-{mask}"), genus: 0, legs: n + 1, variant, filter: None };
    from_family(&GraphFamily { query: q, levels }, meta, &Orientation::reference, false)
}

/// Bit `l - 1` is the twist between leg `l` and the output leg `n + 1` of a
/// tree: their colours plus the twists of the edges between them. Invariant
/// under vertex reflections and edge recolourings.
pub fn leg_twists(g: &HalfEdgeGraph) -> u32 {
    let out = g.n_legs() as u32;
    let Some(root) = g.leg_half_edge(out) else { return 0 };
    let mut acc = vec![None; g.n_vertices()];
    acc[g.vertex_of(root)] = Some(g.color(root));
    let mut stack = vec![g.vertex_of(root)];
    while let Some(v) = stack.pop() {
        for h in g.half_edges_at(v) {
            if g.is_leg(h) {
                continue;
            }
            let w = g.vertex_of(g.pair(h));
            if acc[w].is_none() {
                acc[w] = Some(acc[v].unwrap() ^ g.twist(h));
                stack.push(w);
            }
        }
    }
    g.legs()
        .into_iter()
        .filter(|&(l, _)| l < out)
        .map(|(l, h)| ((acc[g.vertex_of(h)].unwrap() ^ g.color(h)) as u32) << (l - 1))
        .sum()
}

/// Splits a family into basis and excluded classes, assembles and validates differentials.
///
/// With `twisted`, reversing the cyclic order at a vertex of valence `k` acts on
/// orientations by `(-1)^k` (see [`vertex_reflection_sign`]); this is the sign
/// twist of the graph complexes. Cobar complexes are untwisted.
pub fn from_family(
    family: &GraphFamily,
    meta: ComplexMeta,
    orient: &OrientFn<'_>,
    twisted: bool,
) -> Result<GradedComplex, ComplexError> {
    let variant = family.query.variant;
    let mut bases = Vec::with_capacity(family.levels.len());
    let mut excluded = Vec::with_capacity(family.levels.len());
    for level in &family.levels {
        let odd: Vec<bool> = level
            .par_iter()
            .map(|c| automorphism_signs(&c.decode().expect("stored codes decode"), variant).orientation_reversing_exists)
            .collect();
        let (mut keep, mut drop) = (Vec::new(), Vec::new());
        for (c, o) in level.iter().zip(odd) {
            if o {
                drop.push(c.clone());
            } else {
                keep.push(c.clone());
            }
        }
        bases.push(keep);
        excluded.push(drop);
    }
    let mut differentials = Vec::new();
    for s in 0..bases.len().saturating_sub(1) {
        let d = if variant == GraphVariant::Dianalytic {
            assemble_by_expansion(&bases[s], &bases[s + 1], &excluded[s + 1], variant, orient, twisted)?
        } else {
            assemble(&bases[s], &excluded[s], &bases[s + 1], variant, orient, twisted)?
        };
        differentials.push(d);
    }
    let mut c = GradedComplex { meta, bases, excluded, differentials, validated: false };
    c.validate()?;
    Ok(c)
}

/// Matrix of `d` from `lower` (columns) to `upper` (rows).
fn assemble(
    lower: &[CanonicalCode],
    lower_excluded: &[CanonicalCode],
    upper: &[CanonicalCode],
    variant: GraphVariant,
    orient: &OrientFn<'_>,
    twisted: bool,
) -> Result<SparseIntMatrix, ComplexError> {
    let rows: Vec<Result<Vec<(usize, usize, i64)>, ComplexError>> = upper
        .par_iter()
        .enumerate()
        .map(|(row, code)| {
            let big = code.decode().expect("stored codes decode");
            let big_or = orient(&big);
            let mut out = Vec::new();
            for (pos, &e) in big_or.edges.iter().enumerate() {
                if big.is_loop(e) {
                    continue;
                }
                let (small, map) = big.contract_edge_tracked(e).map_err(|x| ComplexError::Internal(x.to_string()))?;
                let can = canonical_form(&small, variant);
                let col = match lower.binary_search(&can.code) {
                    Ok(c) => c,
                    Err(_) if lower_excluded.binary_search(&can.code).is_ok() => continue,
                    Err(_) => {
                        return Err(ComplexError::Internal(format!(
                            "contraction of {} left the enumerated family",
                            code.to_hex()
                        )))
                    }
                };
                let to_canon: Vec<usize> =
                    map.iter().map(|&m| if m == usize::MAX { usize::MAX } else { can.relabel[m] }).collect();
                let small_or = orient(&can.graph);
                let pe = big.pair(e);
                let mut sign = transport_sign(&big, &big_or, &can.graph, &small_or, &to_canon);
                if twisted {
                    // contraction first reflects the endpoint of each half-edge coloured 1
                    let gauge = [e, pe]
                        .iter()
                        .filter(|&&x| big.color(x) == 1)
                        .map(|&x| vertex_reflection_sign(big.valence(big.vertex_of(x))))
                        .product::<i32>();
                    sign *= gauge * reflection_sign(&small, &can.reflected);
                }
                let eps = if pos % 2 == 0 { 1 } else { -1 };
                out.push((row, col, (eps * sign) as i64));
            }
            Ok(out)
        })
        .collect();
    let mut triples = Vec::new();
    for r in rows {
        triples.extend(r?);
    }
    Ok(SparseIntMatrix::from_triples(upper.len(), lower.len(), triples)?)
}

/// Matrix of `d` computed from the expansion side: every split of every lower
/// graph, canonicalized. Needed for dianalytic graphs, where contracting an edge
/// has two outcomes depending on the relative orientation of its endpoints.
fn assemble_by_expansion(
    lower: &[CanonicalCode],
    upper: &[CanonicalCode],
    upper_excluded: &[CanonicalCode],
    variant: GraphVariant,
    orient: &OrientFn<'_>,
    twisted: bool,
) -> Result<SparseIntMatrix, ComplexError> {
    let cols: Vec<Result<Vec<(usize, usize, i64)>, ComplexError>> = lower
        .par_iter()
        .enumerate()
        .map(|(col, code)| {
            let small = code.decode().expect("stored codes decode");
            let small_or = orient(&small);
            let n = small.n_half_edges();
            let mut out = Vec::new();
            for big in expansions(&small) {
                let can = canonical_form(&big, variant);
                let row = match upper.binary_search(&can.code) {
                    Ok(r) => r,
                    Err(_) if upper_excluded.binary_search(&can.code).is_ok() => continue,
                    Err(_) => {
                        return Err(ComplexError::Internal(format!(
                            "expansion of {} left the enumerated family",
                            code.to_hex()
                        )))
                    }
                };
                // canonical half-edge -> half-edge of `small`, the new edge dropped
                let mut to_small = vec![usize::MAX; n + 2];
                for (h, &c) in can.relabel.iter().enumerate() {
                    if h < n {
                        to_small[c] = h;
                    }
                }
                let big_or = orient(&can.graph);
                let e = can.relabel[n].min(can.relabel[n + 1]);
                let pos = big_or.edges.iter().position(|&x| x == e).expect("new edge is an edge");
                let mut sign = transport_sign(&can.graph, &big_or, &small, &small_or, &to_small);
                if twisted {
                    sign *= reflection_sign(&big, &can.reflected);
                }
                let eps = if pos % 2 == 0 { 1 } else { -1 };
                out.push((row, col, (eps * sign) as i64));
            }
            Ok(out)
        })
        .collect();
    let mut triples = Vec::new();
    for c in cols {
        triples.extend(c?);
    }
    Ok(SparseIntMatrix::from_triples(upper.len(), lower.len(), triples)?)
}

/// Dimensions, Betti numbers in both gradings, and Euler characteristics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
    /// `(moduli degree d - s, b_s)` with `d` the moduli dimension.
    pub moduli_grading: Vec<(isize, usize)>,
    pub euler_from_dims: i64,
    pub euler_from_betti: i64,
}

pub fn homology(c: &GradedComplex) -> Result<HomologyReport, ComplexError> {
    let betti = c.betti_numbers()?;
    let d = c.meta.moduli_dimension() as isize;
    let euler_from_betti = linalg::euler_from_betti(&betti);
    let euler_from_dims = c.euler_characteristic();
    if euler_from_betti != euler_from_dims {
        return Err(ComplexError::Internal("Euler characteristics disagree".into()));
    }
    Ok(HomologyReport {
        dims: c.dims(),
        moduli_grading: betti.iter().enumerate().map(|(s, &b)| (d - s as isize, b)).collect(),
        betti,
        euler_from_dims,
        euler_from_betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sectors_partition_the_mobius_cobar_complex() {
        for n in 2..=4 {
            let full = build_cobar_complex(n, CobarOperad::MAss).unwrap();
            let mut dims = vec![0; full.dims().len()];
            for mask in 0..1u32 << n {
                let s = build_cobar_sector(n, mask).unwrap();
                for (d, b) in dims.iter_mut().zip(&s.bases) {
                    *d += b.len();
                }
                for b in s.bases.iter().flatten() {
                    assert_eq!(leg_twists(&b.decode().unwrap()), mask);
                    assert!(full.index_of(b).is_some());
                }
            }
            assert_eq!(dims, full.dims());
        }
    }
}
