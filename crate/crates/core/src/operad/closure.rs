//! The equivalence `≈` generated by edge contraction, and the one-vertex normal form.
//!
//! [`closure_classes`] merges every enumerated graph with each of its
//! contractions. The class count is an upper bound for the number of
//! `≈`-classes, and the number of distinct surface invariants is a lower bound
//! (contraction preserves the band surface); when they agree the classes are
//! exactly the diffeomorphism types.
//!
//! One-vertex graphs are handled as cyclic words. The basic rewrite is the slide
//!
//! ```text
//! [A t B t' C]  ≈  [A t t' B~ C]
//! ```
//!
//! for a twisted loop `t`, where `B~` is `B` reversed with every colour flipped:
//! split the arc `t B` off onto a new vertex, reflect it, and contract the old
//! loop instead of the new edge. The new edge becomes an empty twisted loop (a
//! crosscap). Composites of slides gather crosscaps into one block and turn three
//! crosscaps into a handle and a crosscap.

use std::collections::{BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, CanonicalCode};
use crate::enumerate::{enumerate_graphs, EnumerationQuery};
use crate::graph::{GraphVariant, HalfEdgeGraph};
use crate::surface::{surface_invariant, SurfaceType};

use super::OperadError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureClass {
    /// The member with fewest edges, least canonical code among those.
    pub representative: HalfEdgeGraph,
    pub invariant: SurfaceType,
    pub members: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureReport {
    pub genus: usize,
    pub legs: usize,
    pub variant: GraphVariant,
    pub edge_bound: usize,
    pub graphs: usize,
    pub classes: Vec<ClosureClass>,
    pub invariant_count: usize,
    /// Every class carries a single surface invariant.
    pub consistent: bool,
    /// Class count equals invariant count.
    pub certified: bool,
    #[serde(skip)]
    class_of: HashMap<CanonicalCode, usize>,
}

impl ClosureReport {
    /// Index into `classes` of the class containing `g`, if `g` was enumerated.
    pub fn class_of(&self, g: &HalfEdgeGraph) -> Option<usize> {
        self.class_of.get(&canonical_code(g, self.variant)).copied()
    }

    pub fn same_class(&self, a: &HalfEdgeGraph, b: &HalfEdgeGraph) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }
}

/// Union-find over all reduced graphs with at most `edge_bound` edges, merging
/// each graph with its contractions along non-loop edges.
pub fn closure_classes(
    genus: usize,
    legs: usize,
    variant: GraphVariant,
    edge_bound: usize,
) -> Result<ClosureReport, OperadError> {
    if variant == GraphVariant::Dianalytic {
        return Err(OperadError::Unsupported("dianalytic graphs have no band surface".into()));
    }
    let family = enumerate_graphs(&EnumerationQuery::new(genus, legs, variant));
    let codes: Vec<&CanonicalCode> = family.levels.iter().take(edge_bound + 1).flatten().collect();
    let index: HashMap<CanonicalCode, usize> = codes.iter().enumerate().map(|(i, &c)| (c.clone(), i)).collect();
    let graphs: Vec<HalfEdgeGraph> = codes.iter().map(|c| c.decode().expect("stored codes decode")).collect();

    let merges: Vec<(usize, usize)> = graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let index = &index;
            g.edges().into_iter().filter(|&e| !g.is_loop(e)).map(move |e| {
                let small = g.contract_edge(e).expect("non-loop edges contract");
                let j = *index.get(&canonical_code(&small, variant)).expect("contractions stay in the family");
                (i, j)
            })
        })
        .collect();
    let mut uf = UnionFind::<usize>::new(graphs.len());
    for (i, j) in merges {
        uf.union(i, j);
    }

    let invariants: Vec<SurfaceType> = graphs
        .par_iter()
        .map(|g| surface_invariant(g, variant).map_err(|e| OperadError::Unsupported(e.to_string())))
        .collect::<Result<_, _>>()?;
    let mut roots: Vec<usize> = (0..graphs.len()).map(|i| uf.find(i)).collect();
    let mut root_ids: Vec<usize> = roots.clone();
    root_ids.sort_unstable();
    root_ids.dedup();
    for r in roots.iter_mut() {
        *r = root_ids.binary_search(r).unwrap();
    }
    let mut classes: Vec<Option<ClosureClass>> = vec![None; root_ids.len()];
    let mut consistent = true;
    // `codes` runs through the levels in order, so the first member seen has fewest edges
    for (i, &c) in roots.iter().enumerate() {
        match &mut classes[c] {
            None => {
                classes[c] =
                    Some(ClosureClass { representative: graphs[i].clone(), invariant: invariants[i].clone(), members: 1 })
            }
            Some(cl) => {
                cl.members += 1;
                consistent &= cl.invariant == invariants[i];
            }
        }
    }
    let mut classes: Vec<ClosureClass> = classes.into_iter().map(|c| c.expect("every root has members")).collect();
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| classes[a].invariant.cmp(&classes[b].invariant));
    let mut rank = vec![0; classes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let class_of = index.into_iter().map(|(code, i)| (code, rank[roots[i]])).collect();
    classes = order.iter().map(|&i| classes[i].clone()).collect();
    let invariant_count = invariants.iter().collect::<BTreeSet<_>>().len();
    Ok(ClosureReport {
        genus,
        legs,
        variant,
        edge_bound,
        graphs: graphs.len(),
        certified: consistent && classes.len() == invariant_count,
        classes,
        invariant_count,
        consistent,
        class_of,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    Leg(u32),
    Half(usize),
}

/// A one-vertex graph as its cyclic word of (letter, colour).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Word(Vec<(Letter, u8)>);

impl Word {
    fn from_graph(g: &HalfEdgeGraph) -> Result<Word, OperadError> {
        if g.n_vertices() != 1 {
            return Err(OperadError::NotOneVertex(g.n_vertices()));
        }
        let darts = g.half_edges_at(0);
        let loop_id: HashMap<usize, usize> = g.edges().into_iter().enumerate().flat_map(|(i, e)| [(e, i), (g.pair(e), i)]).collect();
        Ok(Word(
            darts
                .iter()
                .map(|&h| {
                    let l = match g.leg_label(h) {
                        Some(l) => Letter::Leg(l),
                        None => Letter::Half(loop_id[&h]),
                    };
                    (l, g.color(h))
                })
                .collect(),
        ))
    }

    fn to_graph(&self) -> HalfEdgeGraph {
        let n = self.0.len();
        let mut first: HashMap<usize, usize> = HashMap::new();
        let mut pairs = Vec::new();
        let mut legs = Vec::new();
        for (i, &(l, _)) in self.0.iter().enumerate() {
            match l {
                Letter::Leg(label) => legs.push((label, i)),
                Letter::Half(id) => match first.remove(&id) {
                    Some(j) => pairs.push((j, i)),
                    None => {
                        first.insert(id, i);
                    }
                },
            }
        }
        let colors = self.0.iter().map(|&(_, c)| c).collect();
        HalfEdgeGraph::from_rotation(n, &[(0..n).collect()], &pairs, &legs, colors).expect("words are valid graphs")
    }

    /// Positions of the two halves of loop `id`.
    fn halves(&self, id: usize) -> (usize, usize) {
        let mut it = self.0.iter().enumerate().filter(|(_, (l, _))| *l == Letter::Half(id)).map(|(i, _)| i);
        (it.next().unwrap(), it.next().unwrap())
    }

    fn loops(&self) -> BTreeSet<usize> {
        self.0.iter().filter_map(|&(l, _)| if let Letter::Half(id) = l { Some(id) } else { None }).collect()
    }

    fn twisted(&self, id: usize) -> bool {
        let (i, j) = self.halves(id);
        self.0[i].1 != self.0[j].1
    }

    /// Untwisted loops coloured `(0, 0)`, twisted ones `(0, 1)`: recolouring of reduced edges.
    fn recolor(&mut self) {
        for id in self.loops() {
            let (i, j) = self.halves(id);
            let t = self.0[i].1 ^ self.0[j].1;
            self.0[i].1 = 0;
            self.0[j].1 = t;
        }
    }

    fn rotate_to(&mut self, i: usize) {
        self.0.rotate_left(i);
    }

    fn is_crosscap_at(&self, i: usize) -> bool {
        match (self.0.get(i), self.0.get(i + 1)) {
            (Some(&(Letter::Half(a), ca)), Some(&(Letter::Half(b), cb))) => a == b && ca != cb,
            _ => false,
        }
    }

    /// The slide for the twisted loop whose halves sit at `i < j`.
    fn slide(&mut self, i: usize, j: usize) {
        let inner: Vec<(Letter, u8)> = self.0[i + 1..j].iter().rev().map(|&(l, c)| (l, c ^ 1)).collect();
        let t2 = self.0[j];
        self.0.splice(i + 1..=j, std::iter::once(t2).chain(inner));
    }

    /// Inverse slide: the crosscap at `i, i + 1` swallows the next `len` letters.
    #[cfg(test)]
    fn unslide(&mut self, i: usize, len: usize) {
        let inner: Vec<(Letter, u8)> = self.0[i + 2..i + 2 + len].iter().rev().map(|&(l, c)| (l, c ^ 1)).collect();
        let t2 = self.0[i + 1];
        self.0.splice(i + 1..i + 2 + len, inner.into_iter().chain(std::iter::once(t2)));
    }
}

/// Rewrites a one-vertex Möbius graph to a ribbon word followed by a block of at
/// most two crosscaps, using slides, crosscap gathering and three crosscaps ≈
/// handle plus crosscap.
pub fn normal_form(g: &HalfEdgeGraph) -> Result<HalfEdgeGraph, OperadError> {
    let mut w = Word::from_graph(g)?;
    w.recolor();
    // slide every twisted loop until it is a crosscap; each slide adds a crosscap
    // and keeps the existing ones
    loop {
        let next = w.loops().into_iter().find_map(|id| {
            let (i, j) = w.halves(id);
            (w.twisted(id) && j > i + 1).then_some((i, j))
        });
        let Some((i, j)) = next else { break };
        w.slide(i, j);
        w.recolor();
    }
    let Some(start) = (0..w.0.len()).find(|&i| w.is_crosscap_at(i)) else {
        return Ok(w.to_graph());
    };
    w.rotate_to(start);
    // gather: [K Y d d' Z] ≈ [K d d' Y Z] with K the crosscap block
    let mut block = 2;
    while let Some(p) = (block..w.0.len().saturating_sub(1)).find(|&i| w.is_crosscap_at(i)) {
        let cap: Vec<(Letter, u8)> = w.0.drain(p..p + 2).collect();
        w.0.splice(block..block, cap);
        block += 2;
    }
    // three crosscaps: [x x' y y' z z'] ≈ [x x' z y z' y'] with y, z untwisted,
    // the handle then counts as ribbon part
    while block >= 6 {
        let (y, z) = (w.0[block - 4].0, w.0[block - 2].0);
        for (k, l) in [z, y, z, y].into_iter().enumerate() {
            w.0[block - 4 + k] = (l, 0);
        }
        block -= 4;
    }
    // ribbon part first, crosscaps last
    w.rotate_to(block);
    Ok(w.to_graph())
}

/// Witness pair for relation (1): a twisted loop next to legs 1, 2, and the
/// same with leg 1 moved across the loop and recoloured.
pub fn relation_one_pair() -> (HalfEdgeGraph, HalfEdgeGraph) {
    let l = Word(vec![(Letter::Leg(1), 0), (Letter::Half(0), 1), (Letter::Half(0), 0), (Letter::Leg(2), 0)]);
    let r = Word(vec![(Letter::Leg(2), 0), (Letter::Half(0), 0), (Letter::Leg(1), 1), (Letter::Half(0), 1)]);
    (l.to_graph(), r.to_graph())
}

/// Witness pair for relation (2): three crosscaps and a leg, and a handle, a
/// crosscap and a leg.
pub fn relation_two_pair() -> (HalfEdgeGraph, HalfEdgeGraph) {
    let h = Letter::Half;
    let l = Word(vec![(Letter::Leg(1), 0), (h(0), 0), (h(0), 1), (h(1), 0), (h(1), 1), (h(2), 0), (h(2), 1)]);
    let r = Word(vec![(Letter::Leg(1), 0), (h(0), 0), (h(0), 1), (h(1), 0), (h(2), 0), (h(1), 0), (h(2), 0)]);
    (l.to_graph(), r.to_graph())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::surface::surface_type;

    fn word(spec: &[(Letter, u8)]) -> Word {
        Word(spec.to_vec())
    }

    fn same(a: &Word, b: &Word) -> bool {
        canonical_code(&a.to_graph(), GraphVariant::Moebius) == canonical_code(&b.to_graph(), GraphVariant::Moebius)
    }

    #[test]
    fn gathering_is_four_slides() {
        use Letter::*;
        // [c c' 1 2 d d' 3]
        let start = word(&[(Half(0), 0), (Half(0), 1), (Leg(1), 0), (Leg(2), 1), (Half(1), 0), (Half(1), 1), (Leg(3), 0)]);
        let mut w = start.clone();
        w.unslide(0, 4);
        // [c d~' d~ Y~ c' Z], the crosscap d now at 1, 2 swallows Y~
        w.unslide(1, 2);
        let (i, j) = w.halves(0);
        w.slide(i, j);
        let (i, j) = w.halves(1);
        w.slide(i, j);
        w.recolor();
        let expect =
            word(&[(Half(0), 0), (Half(0), 1), (Half(1), 0), (Half(1), 1), (Leg(1), 0), (Leg(2), 1), (Leg(3), 0)]);
        assert!(same(&w, &expect), "{w:?}");
    }

    #[test]
    fn three_crosscaps_are_four_slides() {
        use Letter::*;
        // [c c' a b a' b'] -> three crosscaps
        let mut w = word(&[(Leg(1), 0), (Half(0), 0), (Half(0), 1), (Half(1), 0), (Half(2), 0), (Half(1), 0), (Half(2), 0)]);
        w.unslide(1, 1);
        w.recolor();
        for id in [1, 2, 0] {
            let (i, j) = w.halves(id);
            w.slide(i, j);
            w.recolor();
        }
        assert!((0..3).all(|id| {
            let (i, j) = w.halves(id);
            j == i + 1 && w.twisted(id)
        }));
    }

    #[test]
    fn normal_form_examples() {
        let crosscap = HalfEdgeGraph::from_rotation(3, &[vec![0, 1, 2]], &[(0, 1)], &[(1, 2)], vec![0, 1, 0]).unwrap();
        let nf = normal_form(&crosscap).unwrap();
        assert_eq!(canonical_code(&nf, GraphVariant::Moebius), canonical_code(&crosscap, GraphVariant::Moebius));
        let (three, handle) = relation_two_pair();
        let nf = normal_form(&three).unwrap();
        assert_eq!(canonical_code(&nf, GraphVariant::Moebius), canonical_code(&handle, GraphVariant::Moebius));
        assert_eq!(surface_type(&nf).unwrap(), surface_type(&three).unwrap());
    }

    #[test]
    fn not_one_vertex() {
        let g = HalfEdgeGraph::from_rotation(6, &[vec![0, 1, 2], vec![3, 4, 5]], &[(2, 3)], &[(1, 0), (2, 1), (3, 4), (4, 5)], vec![0; 6]).unwrap();
        assert_eq!(normal_form(&g), Err(OperadError::NotOneVertex(2)));
    }

    /// Twisted loops of a normal form: at most two, adjacent, at the end of the word.
    fn has_normal_shape(g: &HalfEdgeGraph) -> bool {
        let w = Word::from_graph(g).unwrap();
        let twisted: Vec<usize> = w.loops().into_iter().filter(|&id| w.twisted(id)).collect();
        let n = w.0.len();
        twisted.len() <= 2 && (0..twisted.len()).all(|k| w.is_crosscap_at(n - 2 * (k + 1)))
    }

    #[test]
    fn normal_form_everywhere() {
        for (g, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (4, 0), (4, 1)] {
            for x in crate::enumerate::one_vertex_graphs(g, n, GraphVariant::Moebius) {
                let nf = normal_form(&x).unwrap();
                assert_eq!(surface_type(&nf).unwrap(), surface_type(&x).unwrap(), "{}", x.to_json());
                assert!(has_normal_shape(&nf), "{}", nf.to_json());
            }
        }
    }

    #[test]
    fn certificates() {
        for (g, n, classes) in [(2, 0, 4), (3, 0, 5), (1, 1, 2)] {
            let r = closure_classes(g, n, GraphVariant::Moebius, 3 * g + n - 3).unwrap();
            assert!(r.certified, "({g},{n}) {} classes, {} invariants", r.classes.len(), r.invariant_count);
            assert_eq!(r.classes.len(), classes);
        }
        let r = closure_classes(1, 2, GraphVariant::Moebius, 2).unwrap();
        let (a, b) = relation_one_pair();
        assert!(r.certified && r.same_class(&a, &b));
        let r = closure_classes(3, 1, GraphVariant::Moebius, 7).unwrap();
        let (a, b) = relation_two_pair();
        assert!(r.certified && r.same_class(&a, &b));
    }
}
