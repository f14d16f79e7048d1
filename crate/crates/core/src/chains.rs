//! Explicit chains in a graph complex, and the eight-term tree cycle in the
//! dianalytic complex with five legs.

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::complex::{build_graph_complex, ComplexError, GradedComplex};
use crate::enumerate::EnumerationQuery;
use crate::graph::{GraphVariant, HalfEdgeGraph};
use crate::linalg::{rank, SparseIntMatrix};
use crate::orientation::{reflection_sign, transport_sign, Orientation};

/// A formal combination of reference-oriented graphs, all of one degree, in a
/// graph complex (reflections act with the sign twist).
#[derive(Clone, Debug)]
pub struct Chain {
    pub degree: usize,
    pub terms: Vec<(i64, HalfEdgeGraph)>,
}

impl Chain {
    /// Coordinates on the basis of `c` in this chain's degree. Terms whose class has
    /// an orientation-reversing automorphism vanish.
    pub fn coordinates(&self, c: &GradedComplex) -> Result<Vec<i64>, ComplexError> {
        let variant = c.meta.variant;
        let basis = c
            .bases
            .get(self.degree)
            .ok_or(ComplexError::DegreeOutOfRange { degree: self.degree, top: c.top_degree().unwrap_or(0) })?;
        let mut v = vec![0i64; basis.len()];
        for (coef, g) in &self.terms {
            if g.n_edges() != self.degree {
                return Err(ComplexError::Internal(format!("term with {} edges in degree {}", g.n_edges(), self.degree)));
            }
            let can = canonical_form(g, variant);
            let i = match basis.binary_search(&can.code) {
                Ok(i) => i,
                Err(_) if c.excluded[self.degree].binary_search(&can.code).is_ok() => continue,
                Err(_) => return Err(ComplexError::Internal("chain term is not in the complex".into())),
            };
            let sign = transport_sign(
                g,
                &Orientation::reference(g),
                &can.graph,
                &Orientation::reference(&can.graph),
                &can.relabel,
            ) * reflection_sign(g, &can.reflected);
            v[i] += coef * sign as i64;
        }
        Ok(v)
    }
}

/// `d` applied to a coordinate vector in degree `s`.
pub fn apply_differential(c: &GradedComplex, s: usize, v: &[i64]) -> Result<Vec<i64>, ComplexError> {
    let d = c.differential_matrix(s)?;
    let mut out = vec![0i64; d.rows];
    for &(r, col, x) in &d.entries {
        out[r] += x * v[col];
    }
    Ok(out)
}

/// Whether `v` in degree `s` lies in the image of `d_{s-1}`.
pub fn is_boundary(c: &GradedComplex, s: usize, v: &[i64]) -> Result<bool, ComplexError> {
    if s == 0 {
        return Ok(v.iter().all(|&x| x == 0));
    }
    let d = c.differential_matrix(s - 1)?;
    let mut with_v = d.entries.clone();
    with_v.extend(v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(r, &x)| (r, d.cols, x)));
    let augmented = SparseIntMatrix::from_triples(d.rows, d.cols + 1, with_v)?;
    Ok(rank(&augmented) == rank(&d))
}

/// A tree with two vertices: `v` carries the output leg `5`, then its children
/// left to right; `w` hangs off `v` and carries its own children.
/// Children are leg labels, with `0` standing for `w` among the children of `v`.
pub fn two_vertex_tree(v_children: &[u32], w_children: &[u32]) -> HalfEdgeGraph {
    // v: half-edges 0 (output) then one per child; w: parent edge then children
    let nv = v_children.len() + 1;
    let nw = w_children.len() + 1;
    let n = nv + nw;
    let v_word: Vec<usize> = (0..nv).collect();
    let w_word: Vec<usize> = (nv..n).collect();
    let out = (v_children.len() + w_children.len()) as u32;
    let mut legs = vec![(out, 0)];
    let mut pairs = Vec::new();
    for (k, &c) in v_children.iter().enumerate() {
        if c == 0 {
            pairs.push((k + 1, nv));
        } else {
            legs.push((c, k + 1));
        }
    }
    for (k, &c) in w_children.iter().enumerate() {
        legs.push((c, nv + k + 1));
    }
    HalfEdgeGraph::from_rotation(n, &[v_word, w_word], &pairs, &legs, vec![0; n]).expect("two-vertex trees are valid")
}

/// Orientation of a drawn two-vertex tree relative to the reference one: the
/// sign of the leaf labels read left to right, times `-1` when the upper vertex
/// has valence 4. The drawings of `T` only pin down signs up to such a rule.
pub fn drawing_sign(v_children: &[u32], w_children: &[u32]) -> i64 {
    let mut leaves = Vec::new();
    for &c in v_children {
        if c == 0 {
            leaves.extend_from_slice(w_children);
        } else {
            leaves.push(c);
        }
    }
    let inversions = (0..leaves.len())
        .flat_map(|i| (i + 1..leaves.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| leaves[i] > leaves[j])
        .count();
    let upper = if w_children.len() + 1 == 4 { -1 } else { 1 };
    if inversions % 2 == 0 {
        upper
    } else {
        -upper
    }
}

const W: u32 = 0;

/// The eight drawn terms of `T` as `(sign, v children, w children)`.
pub const EIGHT_TERMS: [(i64, &[u32], &[u32]); 8] = [
    (1, &[1, 2, W], &[3, 4]),
    (-1, &[2, 1, W], &[3, 4]),
    (1, &[2, W], &[1, 3, 4]),
    (-1, &[1, W], &[2, 3, 4]),
    (1, &[1, W, 4], &[2, 3]),
    (-1, &[2, W, 4], &[1, 3]),
    (1, &[W, 4], &[2, 1, 3]),
    (-1, &[W, 4], &[1, 2, 3]),
];

/// `T = Σ ± [v children | w children]`, eight trees with one internal edge,
/// each drawing oriented by [`drawing_sign`].
pub fn eight_term_tree_chain() -> Chain {
    Chain {
        degree: 1,
        terms: EIGHT_TERMS.iter().map(|&(s, v, w)| (s * drawing_sign(v, w), two_vertex_tree(v, w))).collect(),
    }
}

/// The corolla with output `5` followed by `order` clockwise.
pub fn five_corolla(order: [u32; 4]) -> HalfEdgeGraph {
    let legs: Vec<(u32, usize)> = std::iter::once((5, 0)).chain(order.iter().enumerate().map(|(k, &l)| (l, k + 1))).collect();
    HalfEdgeGraph::from_rotation(5, &[(0..5).collect()], &[], &legs, vec![0; 5]).expect("corollas are valid")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCycleReport {
    pub coordinates: Vec<i64>,
    pub is_cycle: bool,
    /// Dimension of the cycles supported on the eight trees, whatever their signs.
    pub support_cycles: usize,
    pub is_boundary: bool,
    /// `(x, y)` with `T = x d(A) + y d(B)` for the corollas `A = (1,2,3,4)`, `B = (2,1,3,4)`.
    pub bounding_pair: Option<(i64, i64)>,
    pub dianalytic_betti: Vec<usize>,
    /// Betti numbers of the Möbius complex with the same genus and legs.
    pub moebius_betti: Vec<usize>,
    pub moebius_top_only: bool,
    /// Cycle, not a boundary, `b_1 >= 1`, Möbius side exact below the top.
    pub passed: bool,
}

/// Checks the eight-term chain in the dianalytic complex of genus 0 with 5 legs,
/// and the Möbius complex there.
pub fn tree_cycle_check() -> Result<TreeCycleReport, ComplexError> {
    let c = build_graph_complex(&EnumerationQuery::new(0, 5, GraphVariant::Dianalytic))?;
    let t = eight_term_tree_chain();
    let coordinates = t.coordinates(&c)?;
    let is_cycle = coordinates.iter().any(|&x| x != 0) && apply_differential(&c, 1, &coordinates)?.iter().all(|&x| x == 0);
    let support: Vec<usize> = (0..coordinates.len()).filter(|&i| coordinates[i] != 0).collect();
    let d1 = c.differential_matrix(1)?;
    let restricted = SparseIntMatrix::from_triples(
        d1.rows,
        support.len(),
        d1.entries
            .iter()
            .filter_map(|&(r, col, x)| support.iter().position(|&s| s == col).map(|k| (r, k, x)))
            .collect(),
    )?;
    let support_cycles = support.len() - rank(&restricted);
    let is_boundary = is_boundary(&c, 1, &coordinates)?;
    let boundary_of = |order: [u32; 4]| -> Result<Vec<i64>, ComplexError> {
        let a = Chain { degree: 0, terms: vec![(1, five_corolla(order))] }.coordinates(&c)?;
        apply_differential(&c, 0, &a)
    };
    let (da, db) = (boundary_of([1, 2, 3, 4])?, boundary_of([2, 1, 3, 4])?);
    let bounding_pair = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .into_iter()
        .find(|&(x, y)| da.iter().zip(&db).zip(&coordinates).all(|((a, b), t)| x * a + y * b == *t));
    let dianalytic_betti = c.betti_numbers()?;
    let m = build_graph_complex(&EnumerationQuery::new(0, 5, GraphVariant::Moebius))?;
    let moebius_betti = m.betti_numbers()?;
    let moebius_top_only = moebius_betti.iter().rev().skip(1).all(|&b| b == 0);
    let passed = is_cycle && !is_boundary && dianalytic_betti.get(1).is_some_and(|&b| b >= 1) && moebius_top_only;
    Ok(TreeCycleReport {
        coordinates,
        is_cycle,
        support_cycles,
        is_boundary,
        bounding_pair,
        dianalytic_betti,
        moebius_betti,
        moebius_top_only,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_cycle_bounds_two_pentagons() {
        let r = tree_cycle_check().unwrap();
        assert!(r.is_cycle, "{r:?}");
        assert_eq!(r.support_cycles, 1);
        assert!(r.is_boundary);
        assert!(r.bounding_pair.is_some());
        assert!(!r.passed);
        assert_eq!(r.dianalytic_betti, vec![0, 4, 1]);
        assert_eq!(r.moebius_betti, vec![0, 0, 384]);
        assert_eq!(r.coordinates.iter().map(|x| x.unsigned_abs()).sum::<u64>(), 8);
    }

    #[test]
    fn drawing_signs() {
        assert_eq!(drawing_sign(&[1, 2, W], &[3, 4]), 1);
        assert_eq!(drawing_sign(&[2, W], &[1, 3, 4]), 1);
        assert_eq!(drawing_sign(&[W, 4], &[1, 2, 3]), -1);
    }

    #[test]
    fn sign_flip_breaks_the_cycle() {
        let c = build_graph_complex(&EnumerationQuery::new(0, 5, GraphVariant::Dianalytic)).unwrap();
        let mut t = eight_term_tree_chain();
        t.terms[0].0 = -1;
        let v = t.coordinates(&c).unwrap();
        assert!(apply_differential(&c, 1, &v).unwrap().iter().any(|&x| x != 0));
    }
}
