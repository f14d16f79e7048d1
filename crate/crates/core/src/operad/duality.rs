//! Quadratic self-duality of `MAss` in arity 3.
//!
//! `E = MAss(2)` is a free `K`-module on `B = {m, σm(a⊗1), σm(1⊗a), m(a⊗a)}`,
//! `K = k[Z₂]`, and `aB = σB` is the complementary half of the eight corollas.
//! `F(E)(3)` is spanned by two-vertex trees `{i,j}k`: a top corolla on the
//! leaves `i < j` grafted into a root corolla with inputs the subtree and `k`,
//! ordered by least leaf. The `K`-balanced tensor product lets us take the
//! subtree input of the root untwisted, leaving `4 · 8` trees per shape.
//!
//! Over `k`, `Hom_K(E, K)` is the linear dual through the trace `K → k`, so
//! `ψ₂(e) = e*` on `B` and `ψ₂(f) = -f*` on `σB` is the diagonal sign
//! `(-1)^parity` on corollas. Pairing a tree with the dual of a tree of the same
//! shape carries the sign of the shuffle `(i, j, k)`, and a further `-1` when the
//! subtree is the second input of the root (`x(xx)` rather than `(xx)x`).

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{kernel_basis, rank, SparseIntMatrix};

use super::mass::{compose_mass, MobiusCorolla};

/// A basis tree of `F(E)(3)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArityThreeTree {
    /// The leaf attached to the root vertex.
    pub lone: u32,
    pub root: MobiusCorolla,
    pub top: MobiusCorolla,
}

impl ArityThreeTree {
    fn top_leaves(&self) -> (u32, u32) {
        let mut o = [1u32, 2, 3].into_iter().filter(|&l| l != self.lone);
        (o.next().unwrap(), o.next().unwrap())
    }

    /// Root input carrying the subtree.
    fn slot(&self) -> usize {
        if self.top_leaves().0 < self.lone {
            1
        } else {
            2
        }
    }

    /// Contract the internal edge.
    pub fn compose(&self) -> MobiusCorolla {
        let (i, j) = self.top_leaves();
        let c = compose_mass(&self.root, self.slot(), &self.top).expect("slot is an input");
        if self.slot() == 1 {
            c.relabel(&[i, j, self.lone])
        } else {
            c.relabel(&[self.lone, i, j])
        }
    }

    /// Sign of `Ψ` on this tree: product of the vertex signs.
    fn psi_sign(&self) -> i64 {
        if (self.root.parity() + self.top.parity()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Sign of the pairing between this tree and its dual tree: the sign of the
    /// shuffle `(i, j, k)`, negated when the subtree is the second root input.
    fn pairing_sign(&self) -> i64 {
        let shuffle = if self.lone == 2 { -1 } else { 1 };
        if self.slot() == 1 {
            shuffle
        } else {
            -shuffle
        }
    }
}

/// Basis of `F(E)(3)`; with `colored = false`, the planar sub-basis of `F(Ass(2))(3)`.
pub fn free_arity_three(colored: bool) -> Vec<ArityThreeTree> {
    let e: Vec<MobiusCorolla> = if colored {
        MobiusCorolla::all(2)
    } else {
        vec![MobiusCorolla::m(), MobiusCorolla::planar(vec![2, 1]).unwrap()]
    };
    let mut out = Vec::new();
    for lone in [3, 2, 1] {
        for root in &e {
            for top in &e {
                let t = ArityThreeTree { lone, root: root.clone(), top: top.clone() };
                if t.root.color(t.slot()) == 0 {
                    out.push(t);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub dim_free: usize,
    pub dim_relations: usize,
    pub dim_orthogonal: usize,
    pub dim_image: usize,
    /// `Ψ(R) ⊆ R^⊥`.
    pub image_in_orthogonal: bool,
    /// The associator `m∘₁m − m∘₂m` lies in `R` and pairs to zero with `Ψ(R)`.
    pub associator_orthogonal: bool,
    /// `ψ₂(a·e) = ψ₁(a)·ψ₂(e)` and the same for the input actions, on all of `E`.
    pub k_linear: bool,
    /// `ψ₂(σe) = σ·ψ₂(e)` for the sign-twisted action on the dual.
    pub equivariant: bool,
    pub passed: bool,
}

/// `Ψ(R) = R^⊥` for `E = MAss(2)`.
pub fn quadratic_duality_check() -> DualityReport {
    duality_check(true)
}

/// The same check for the planar part, i.e. `Ass! = Ass`.
pub fn quadratic_duality_check_ass() -> DualityReport {
    duality_check(false)
}

fn duality_check(colored: bool) -> DualityReport {
    let trees = free_arity_three(colored);
    let targets: Vec<MobiusCorolla> = {
        let mut t: Vec<MobiusCorolla> = trees.iter().map(|t| t.compose()).collect();
        t.sort();
        t.dedup();
        t
    };
    let comp = SparseIntMatrix::from_triples(
        targets.len(),
        trees.len(),
        trees
            .iter()
            .enumerate()
            .map(|(c, t)| (targets.binary_search(&t.compose()).unwrap(), c, 1))
            .collect(),
    )
    .expect("indices in range");
    let relations = kernel_basis(&comp);
    let dim_free = trees.len();
    let dim_relations = relations.len();

    // R^⊥ in the dual basis: φ with Σ_t r_t s_t φ_t = 0 for every r
    let weighted: Vec<(usize, usize, i64)> = relations
        .iter()
        .enumerate()
        .flat_map(|(r, v)| {
            let trees = &trees;
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(c, x)| {
                (r, c, small(x) * trees[c].pairing_sign())
            })
        })
        .collect();
    let dim_orthogonal = dim_free - rank(&SparseIntMatrix::from_triples(dim_relations, dim_free, weighted).unwrap());

    // Ψ(r) has coordinates ψ_t r_t on the dual basis
    let image: Vec<Vec<i64>> =
        relations.iter().map(|v| v.iter().zip(&trees).map(|(x, t)| small(x) * t.psi_sign()).collect()).collect();
    let dim_image = rank(&SparseIntMatrix::from_dense(&image));
    let pair = |r: &[BigInt], phi: &[i64]| -> i64 {
        r.iter().zip(phi).zip(&trees).map(|((x, y), t)| small(x) * y * t.pairing_sign()).sum()
    };
    let image_in_orthogonal = relations.iter().all(|r| image.iter().all(|phi| pair(r, phi) == 0));

    let m = MobiusCorolla::m();
    let left = ArityThreeTree { lone: 3, root: m.clone(), top: m.clone() };
    let right = ArityThreeTree { lone: 1, root: m.clone(), top: m.clone() };
    let mut assoc = vec![BigInt::zero(); dim_free];
    assoc[position(&trees, &left)] += 1;
    assoc[position(&trees, &right)] -= 1;
    let in_r = comp_apply(&trees, &targets, &assoc).iter().all(|x| *x == 0);
    let associator_orthogonal = in_r && image.iter().all(|phi| pair(&assoc, phi) == 0);

    let (k_linear, equivariant) = module_checks();
    let passed = dim_relations * 2 == dim_free
        && dim_orthogonal == dim_relations
        && dim_image == dim_relations
        && image_in_orthogonal
        && associator_orthogonal
        && k_linear
        && equivariant;
    DualityReport {
        dim_free,
        dim_relations,
        dim_orthogonal,
        dim_image,
        image_in_orthogonal,
        associator_orthogonal,
        k_linear,
        equivariant,
        passed,
    }
}

fn position(trees: &[ArityThreeTree], t: &ArityThreeTree) -> usize {
    trees.iter().position(|x| x == t).expect("tree is in the basis")
}

fn comp_apply(trees: &[ArityThreeTree], targets: &[MobiusCorolla], v: &[BigInt]) -> Vec<i64> {
    let mut out = vec![0i64; targets.len()];
    for (x, t) in v.iter().zip(trees) {
        out[targets.binary_search(&t.compose()).unwrap()] += small(x);
    }
    out
}

fn small(x: &BigInt) -> i64 {
    i64::try_from(x).expect("kernel coordinates are small")
}

/// `ψ₂` as a signed map `E → E*`, `e ↦ ±δ_e`, checked against the actions of
/// `a` (on the output and on each input) and of `σ`. On `E*` the actions are
/// transposed, and `σ` is twisted by the sign representation.
fn module_checks() -> (bool, bool) {
    let psi = |e: &MobiusCorolla| -> (MobiusCorolla, i64) { (e.clone(), if e.parity() == 0 { 1 } else { -1 }) };
    let psi1_a = -1;
    let sigma = [2u32, 1];
    let mut k_linear = true;
    let mut equivariant = true;
    for e in MobiusCorolla::all(2) {
        let (de, s) = psi(&e);
        // a·δ_e = δ_{a e}
        let lhs = psi(&e.act_output());
        k_linear &= lhs == (de.act_output(), psi1_a * s);
        for i in 1..=2 {
            let lhs = psi(&e.act_input(i).unwrap());
            k_linear &= lhs == (de.act_input(i).unwrap(), psi1_a * s);
        }
        // σ·δ_e = -δ_{σe}
        let lhs = psi(&e.relabel(&sigma));
        equivariant &= lhs == (de.relabel(&sigma), -s);
    }
    (k_linear, equivariant)
}

/// The basis `B` as built in the proof, for cross-checking the parity description.
pub fn k_basis() -> [MobiusCorolla; 4] {
    let m = MobiusCorolla::m();
    let sm = m.relabel(&[2, 1]);
    [m.clone(), sm.act_input(1).unwrap(), sm.act_input(2).unwrap(), m.act_input(1).unwrap().act_input(2).unwrap()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_parity_even() {
        for b in k_basis() {
            assert_eq!(b.parity(), 0, "{b}");
        }
    }

    #[test]
    fn self_duality() {
        let r = quadratic_duality_check();
        assert_eq!((r.dim_free, r.dim_relations, r.dim_orthogonal, r.dim_image), (96, 48, 48, 48));
        assert!(r.passed, "{r:?}");
        assert!(quadratic_duality_check_ass().passed);
    }
}
