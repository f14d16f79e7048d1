//! Exhaustive generation of reduced graphs and trees, one isomorphism class each.
//!
//! Every reduced graph contracts to a one-vertex graph along a spanning tree, and
//! contracting a tree edge keeps the graph reduced. So the classes with `k` edges
//! are exactly the vertex expansions of the classes with `k - 1` edges, starting
//! from all one-vertex words. A twisted new edge is never needed: reflecting one
//! endpoint untwists it.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, CanonicalCode};
use crate::graph::{GraphVariant, HalfEdgeGraph, RawGraph};
use crate::surface::{surface_invariant, surface_type, SurfaceType, TopologicalType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationQuery {
    pub genus: usize,
    pub legs: usize,
    pub variant: GraphVariant,
    /// Restrict to one topological type (colored variants only).
    pub filter: Option<TopologicalType>,
}

impl EnumerationQuery {
    pub fn new(genus: usize, legs: usize, variant: GraphVariant) -> Self {
        EnumerationQuery { genus, legs, variant, filter: None }
    }

    pub fn with_type(mut self, t: TopologicalType) -> Self {
        self.filter = Some(t);
        self
    }

    pub fn is_stable(&self) -> bool {
        2 * self.genus + self.legs > 2
    }

    /// Edge count of trivalent graphs, `3 genus - 3 + legs`; `None` when unstable.
    pub fn max_edges(&self) -> Option<usize> {
        self.is_stable().then(|| 3 * self.genus + self.legs - 3)
    }

    fn admits_filter(&self) -> bool {
        match self.filter {
            None => true,
            Some(t) => {
                t.graph_genus() == self.genus
                    && match self.variant {
                        GraphVariant::Dianalytic => false,
                        GraphVariant::Ribbon => t.u == 0,
                        _ => true,
                    }
            }
        }
    }
}

/// Which trees span a cobar complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeVariant {
    Planar,
    Moebius,
}

impl TreeVariant {
    pub fn graph_variant(self) -> GraphVariant {
        match self {
            TreeVariant::Planar => GraphVariant::Ribbon,
            TreeVariant::Moebius => GraphVariant::Moebius,
        }
    }
}

/// Canonical codes grouped by internal-edge count, each level sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFamily {
    pub query: EnumerationQuery,
    pub levels: Vec<Vec<CanonicalCode>>,
}

impl GraphFamily {
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn total(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn graphs(&self, edges: usize) -> impl Iterator<Item = HalfEdgeGraph> + '_ {
        self.levels[edges].iter().map(|c| c.decode().expect("stored codes decode"))
    }

    pub fn index_of(&self, code: &CanonicalCode) -> Option<(usize, usize)> {
        let e = (code.bytes.get(3).copied()? as usize).checked_sub(self.query.legs)? / 2;
        self.levels.get(e)?.binary_search(code).ok().map(|i| (e, i))
    }
}

/// All one-vertex graphs of the given genus and legs, with every admissible colouring.
pub fn one_vertex_graphs(genus: usize, legs: usize, variant: GraphVariant) -> Vec<HalfEdgeGraph> {
    let k = 2 * genus + legs;
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    // slot -> Some(label) for legs, None for loop ends; leg 1 pinned to slot 0
    let mut words: Vec<Vec<Option<u32>>> = Vec::new();
    place_legs(&mut vec![None; k], &mut vec![false; k], 1, legs, &mut words);
    for word in words {
        let free: Vec<usize> = (0..k).filter(|&i| word[i].is_none()).collect();
        let mut pairings = Vec::new();
        pair_up(&free, &mut Vec::new(), &mut pairings);
        for pairs in pairings {
            let n_twist_bits = if variant.has_colors() { genus } else { 0 };
            let n_leg_bits = if variant == GraphVariant::Moebius { legs } else { 0 };
            for bits in 0u32..1 << (n_twist_bits + n_leg_bits) {
                let mut color = vec![0u8; k];
                for (i, &(_, b)) in pairs.iter().enumerate() {
                    color[b] = ((bits >> i) & 1) as u8;
                }
                let mut li = 0;
                for (slot, lab) in word.iter().enumerate() {
                    if lab.is_some() {
                        color[slot] = ((bits >> (n_twist_bits + li)) & 1) as u8;
                        li += 1;
                    }
                }
                let leg_list: Vec<(u32, usize)> =
                    word.iter().enumerate().filter_map(|(s, l)| l.map(|l| (l, s))).collect();
                let g = HalfEdgeGraph::from_rotation(k, &[(0..k).collect()], &pairs, &leg_list, color)
                    .expect("one-vertex words are valid graphs");
                out.push(g);
            }
        }
    }
    out
}

fn place_legs(
    word: &mut Vec<Option<u32>>,
    used: &mut Vec<bool>,
    next: u32,
    legs: usize,
    out: &mut Vec<Vec<Option<u32>>>,
) {
    if next as usize > legs {
        out.push(word.clone());
        return;
    }
    let slots: Vec<usize> = if next == 1 { vec![0] } else { (0..word.len()).collect() };
    for s in slots {
        if used[s] {
            continue;
        }
        used[s] = true;
        word[s] = Some(next);
        place_legs(word, used, next + 1, legs, out);
        word[s] = None;
        used[s] = false;
    }
}

fn pair_up(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    let Some((&a, rest)) = free.split_first() else {
        out.push(acc.clone());
        return;
    };
    for i in 0..rest.len() {
        acc.push((a, rest[i]));
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        pair_up(&remaining, acc, out);
        acc.pop();
    }
}

/// All graphs obtained by splitting one vertex of valence at least 4 into two
/// along a contiguous arc, joined by a new untwisted edge.
pub fn expansions(g: &HalfEdgeGraph) -> Vec<HalfEdgeGraph> {
    let raw = g.to_raw();
    let n = g.n_half_edges();
    let nv = g.n_vertices();
    let mut out = Vec::new();
    for v in 0..nv {
        let darts = g.half_edges_at(v);
        let k = darts.len();
        if k < 4 {
            continue;
        }
        for a in 2..=k / 2 {
            let starts = if 2 * a == k { k / 2 } else { k };
            for i in 0..starts {
                let arc: Vec<usize> = (0..a).map(|j| darts[(i + j) % k]).collect();
                let before = darts[(i + k - 1) % k];
                let after = darts[(i + a) % k];
                let (x, y) = (n, n + 1);
                let mut r = RawGraph {
                    n_half_edges: n + 2,
                    pairing: raw.pairing.clone(),
                    vertex: raw.vertex.clone(),
                    rotation_next: raw.rotation_next.clone(),
                    color: raw.color.clone(),
                    legs: raw.legs.clone(),
                    vertex_genus: raw.vertex_genus.clone(),
                };
                r.pairing.extend([y, x]);
                r.vertex.extend([v, nv]);
                r.color.extend([0, 0]);
                r.vertex_genus.push(0);
                r.rotation_next.extend([after, arc[0]]);
                r.rotation_next[before] = x;
                r.rotation_next[arc[a - 1]] = y;
                for &h in &arc {
                    r.vertex[h] = nv;
                }
                out.push(crate::graph::validate_graph(&r).expect("expansion keeps the graph valid"));
            }
        }
    }
    out
}

fn matches_filter(g: &HalfEdgeGraph, q: &EnumerationQuery) -> bool {
    match q.filter {
        None => true,
        Some(t) => {
            let g = g.project_variant(if q.variant == GraphVariant::Ribbon { GraphVariant::Ribbon } else { GraphVariant::Moebius });
            surface_type(&g).map(|s| s.topological_type() == t).unwrap_or(false)
        }
    }
}

/// Complete, duplicate-free list of reduced graphs for `q`, grouped by edge count.
pub fn enumerate_graphs(q: &EnumerationQuery) -> GraphFamily {
    let Some(top) = q.max_edges() else {
        return GraphFamily { query: *q, levels: Vec::new() };
    };
    if !q.admits_filter() {
        return GraphFamily { query: *q, levels: vec![Vec::new(); top + 1] };
    }
    let seeds: Vec<HalfEdgeGraph> = one_vertex_graphs(q.genus, q.legs, q.variant).into_par_iter().filter(|g| matches_filter(g, q)).collect();
    expand_from(q, top, seeds)
}

/// Surface invariants, leg data included, of the graphs of a colored or ribbon query.
pub fn surface_sectors(q: &EnumerationQuery) -> Vec<SurfaceType> {
    let set: BTreeSet<SurfaceType> = one_vertex_graphs(q.genus, q.legs, q.variant)
        .into_iter()
        .filter(|g| matches_filter(g, q))
        .filter_map(|g| surface_invariant(&g, q.variant).ok())
        .collect();
    set.into_iter().collect()
}

/// The graphs of `q` whose band surface is `sector`. Contraction preserves the
/// surface, so they span a direct summand of the graph complex.
pub fn enumerate_sector(q: &EnumerationQuery, sector: &SurfaceType) -> GraphFamily {
    let Some(top) = q.max_edges() else {
        return GraphFamily { query: *q, levels: Vec::new() };
    };
    let seeds: Vec<HalfEdgeGraph> = one_vertex_graphs(q.genus, q.legs, q.variant)
        .into_par_iter()
        .filter(|g| matches_filter(g, q) && surface_invariant(g, q.variant).ok().as_ref() == Some(sector))
        .collect();
    expand_from(q, top, seeds)
}

/// Breadth-first closure of `seeds` under expansion, up to `top` edges.
fn expand_from(q: &EnumerationQuery, top: usize, seeds: Vec<HalfEdgeGraph>) -> GraphFamily {
    let variant = q.variant;
    let seeds: HashSet<CanonicalCode> = seeds.into_par_iter().map(|g| canonical_code(&g, variant)).collect();
    // one-vertex graphs have `genus` loops, so lower degrees are empty
    let mut levels: Vec<Vec<CanonicalCode>> = vec![Vec::new(); q.genus.min(top + 1)];
    let mut current: Vec<CanonicalCode> = seeds.into_iter().collect();
    current.sort_unstable();
    while levels.len() <= top {
        let next: Vec<CanonicalCode> = if levels.len() == top {
            Vec::new()
        } else {
            let set: HashSet<CanonicalCode> = current
                .par_iter()
                .fold(HashSet::new, |mut acc, code| {
                    let g = code.decode().expect("stored codes decode");
                    for h in expansions(&g) {
                        acc.insert(canonical_code(&h, variant));
                    }
                    acc
                })
                .reduce(HashSet::new, |mut a, b| {
                    if a.len() < b.len() {
                        return b.into_iter().chain(a).collect();
                    }
                    a.extend(b);
                    a
                });
            let mut v: Vec<CanonicalCode> = set.into_iter().collect();
            v.sort_unstable();
            v
        };
        levels.push(std::mem::replace(&mut current, next));
    }
    GraphFamily { query: *q, levels }
}

/// Reduced trees with inputs `1..=n` and output `n + 1`, grouped by internal edges.
pub fn enumerate_trees(n: usize, variant: TreeVariant) -> GraphFamily {
    assert!(n >= 2, "trees need at least two inputs");
    enumerate_graphs(&EnumerationQuery::new(0, n + 1, variant.graph_variant()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_one_leg() {
        let f = enumerate_graphs(&EnumerationQuery::new(1, 1, GraphVariant::Ribbon));
        assert_eq!(f.counts(), vec![0, 1]);
        assert!(enumerate_graphs(&EnumerationQuery::new(1, 0, GraphVariant::Moebius)).levels.is_empty());
    }

    #[test]
    fn small_trees() {
        assert_eq!(enumerate_trees(2, TreeVariant::Planar).counts(), vec![2]);
        assert_eq!(enumerate_trees(3, TreeVariant::Planar).counts(), vec![6, 12]);
        assert_eq!(enumerate_trees(3, TreeVariant::Moebius).counts(), vec![48, 96]);
    }
}
