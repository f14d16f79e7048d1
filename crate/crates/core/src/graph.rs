//! Half-edge graphs with cyclic orders and Möbius colourings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which isomorphism notion a graph is considered under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphVariant {
    Ribbon,
    Moebius,
    Dianalytic,
    MoebiusLegUnoriented,
}

impl GraphVariant {
    pub const ALL: [GraphVariant; 4] = [
        GraphVariant::Ribbon,
        GraphVariant::Moebius,
        GraphVariant::Dianalytic,
        GraphVariant::MoebiusLegUnoriented,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphVariant::Ribbon => "ribbon",
            GraphVariant::Moebius => "moebius",
            GraphVariant::Dianalytic => "dianalytic",
            GraphVariant::MoebiusLegUnoriented => "moebius_leg_unoriented",
        }
    }

    /// Variants whose graphs carry twist data, hence a band surface.
    pub fn has_colors(self) -> bool {
        matches!(self, GraphVariant::Moebius | GraphVariant::MoebiusLegUnoriented)
    }

    pub(crate) fn tag(self) -> u8 {
        match self {
            GraphVariant::Ribbon => 0,
            GraphVariant::Moebius => 1,
            GraphVariant::Dianalytic => 2,
            GraphVariant::MoebiusLegUnoriented => 3,
        }
    }
}

impl fmt::Display for GraphVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "ribbon" | "planar" => Ok(GraphVariant::Ribbon),
            "moebius" | "mobius" | "möbius" => Ok(GraphVariant::Moebius),
            "dianalytic" => Ok(GraphVariant::Dianalytic),
            "moebius_leg_unoriented" | "leg_unoriented" => Ok(GraphVariant::MoebiusLegUnoriented),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("array `{field}` has length {found}, expected {expected}")]
    LengthMismatch { field: &'static str, expected: usize, found: usize },
    #[error("index {index} out of range in `{field}`")]
    IndexOutOfRange { field: &'static str, index: usize },
    #[error("pairing is not an involution at half-edge {0}")]
    NonInvolutivePairing(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("bad leg labels: {0}")]
    BadLegLabels(String),
    #[error("rotation does not match vertex map at half-edge {0}")]
    RotationVertexMismatch(usize),
    #[error("vertex {0} has no half-edges or more than one rotation cycle")]
    BadVertexCycle(usize),
    #[error("color of half-edge {0} is not 0 or 1")]
    BadColor(usize),
    #[error("half-edge {0} does not exist")]
    NotAnEdge(usize),
    #[error("half-edge {0} belongs to a loop; loops are never contracted")]
    LoopContraction(usize),
    #[error("half-edge {0} is a leg, not an internal edge")]
    NotInternal(usize),
    #[error("recoloring needs a reduced graph (all valences at least 3)")]
    NotReduced,
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
}

/// Serialized form, field for field as it appears in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub n_half_edges: usize,
    pub pairing: Vec<usize>,
    pub vertex: Vec<usize>,
    pub rotation_next: Vec<usize>,
    pub color: Vec<u8>,
    pub legs: BTreeMap<u32, usize>,
    pub vertex_genus: Vec<u32>,
}

/// A validated connected half-edge graph. Legs are the fixed points of the pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct HalfEdgeGraph {
    pairing: Vec<usize>,
    vertex: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    color: Vec<u8>,
    /// 0 for internal half-edges, otherwise the leg label.
    leg_label: Vec<u32>,
    vertex_genus: Vec<u32>,
}

impl TryFrom<RawGraph> for HalfEdgeGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        validate_graph(&raw)
    }
}

impl From<HalfEdgeGraph> for RawGraph {
    fn from(g: HalfEdgeGraph) -> RawGraph {
        g.to_raw()
    }
}

/// Checks every structural invariant and builds the graph.
pub fn validate_graph(raw: &RawGraph) -> Result<HalfEdgeGraph, GraphError> {
    let n = raw.n_half_edges;
    for (field, len) in [
        ("pairing", raw.pairing.len()),
        ("vertex", raw.vertex.len()),
        ("rotation_next", raw.rotation_next.len()),
        ("color", raw.color.len()),
    ] {
        if len != n {
            return Err(GraphError::LengthMismatch { field, expected: n, found: len });
        }
    }
    let nv = raw.vertex_genus.len();
    if nv == 0 {
        return Err(GraphError::LengthMismatch { field: "vertex_genus", expected: 1, found: 0 });
    }
    for h in 0..n {
        if raw.pairing[h] >= n {
            return Err(GraphError::IndexOutOfRange { field: "pairing", index: h });
        }
        if raw.rotation_next[h] >= n {
            return Err(GraphError::IndexOutOfRange { field: "rotation_next", index: h });
        }
        if raw.vertex[h] >= nv {
            return Err(GraphError::IndexOutOfRange { field: "vertex", index: h });
        }
        if raw.color[h] > 1 {
            return Err(GraphError::BadColor(h));
        }
    }
    for h in 0..n {
        if raw.pairing[raw.pairing[h]] != h {
            return Err(GraphError::NonInvolutivePairing(h));
        }
    }
    let mut prev = vec![usize::MAX; n];
    for h in 0..n {
        let t = raw.rotation_next[h];
        if prev[t] != usize::MAX {
            return Err(GraphError::RotationVertexMismatch(t));
        }
        prev[t] = h;
        if raw.vertex[t] != raw.vertex[h] {
            return Err(GraphError::RotationVertexMismatch(h));
        }
    }
    // one rotation cycle per vertex
    let mut seen_vertex = vec![false; nv];
    let mut seen = vec![false; n];
    for h in 0..n {
        if seen[h] {
            continue;
        }
        let v = raw.vertex[h];
        if seen_vertex[v] {
            return Err(GraphError::BadVertexCycle(v));
        }
        seen_vertex[v] = true;
        let mut x = h;
        while !seen[x] {
            seen[x] = true;
            x = raw.rotation_next[x];
        }
    }
    if let Some(v) = seen_vertex.iter().position(|s| !s) {
        if !(n == 0 && nv == 1) {
            return Err(GraphError::BadVertexCycle(v));
        }
    }
    let mut leg_label = vec![0u32; n];
    for (&label, &h) in &raw.legs {
        if h >= n {
            return Err(GraphError::BadLegLabels(format!("leg {label} points at missing half-edge {h}")));
        }
        if raw.pairing[h] != h {
            return Err(GraphError::BadLegLabels(format!("leg {label} sits on internal half-edge {h}")));
        }
        if leg_label[h] != 0 {
            return Err(GraphError::BadLegLabels(format!("half-edge {h} carries two labels")));
        }
        leg_label[h] = label;
    }
    let fixed = (0..n).filter(|&h| raw.pairing[h] == h).count();
    if fixed != raw.legs.len() {
        return Err(GraphError::BadLegLabels(format!(
            "{fixed} fixed half-edges but {} labels",
            raw.legs.len()
        )));
    }
    if raw.legs.keys().copied().ne(1..=raw.legs.len() as u32) {
        return Err(GraphError::BadLegLabels("labels must be exactly 1..n".into()));
    }
    let mut uf = UnionFind::<usize>::new(nv);
    for h in 0..n {
        uf.union(raw.vertex[h], raw.vertex[raw.pairing[h]]);
    }
    if (1..nv).any(|v| !uf.equiv(0, v)) {
        return Err(GraphError::Disconnected);
    }
    Ok(HalfEdgeGraph {
        pairing: raw.pairing.clone(),
        vertex: raw.vertex.clone(),
        next: raw.rotation_next.clone(),
        prev,
        color: raw.color.clone(),
        leg_label,
        vertex_genus: raw.vertex_genus.clone(),
    })
}

impl HalfEdgeGraph {
    /// Builds a graph from cyclic vertex words. Each word lists half-edges in rotation order.
    /// `pairs` gives internal edges; half-edges absent from `pairs` are legs, labelled by `legs`.
    pub fn from_rotation(
        n_half_edges: usize,
        rotations: &[Vec<usize>],
        pairs: &[(usize, usize)],
        legs: &[(u32, usize)],
        color: Vec<u8>,
    ) -> Result<HalfEdgeGraph, GraphError> {
        let mut pairing: Vec<usize> = (0..n_half_edges).collect();
        for &(a, b) in pairs {
            if a >= n_half_edges || b >= n_half_edges {
                return Err(GraphError::IndexOutOfRange { field: "pairs", index: a.max(b) });
            }
            pairing[a] = b;
            pairing[b] = a;
        }
        let mut vertex = vec![usize::MAX; n_half_edges];
        let mut next = vec![usize::MAX; n_half_edges];
        for (v, word) in rotations.iter().enumerate() {
            for (i, &h) in word.iter().enumerate() {
                if h >= n_half_edges {
                    return Err(GraphError::IndexOutOfRange { field: "rotations", index: h });
                }
                vertex[h] = v;
                next[h] = word[(i + 1) % word.len()];
            }
        }
        if let Some(h) = vertex.iter().position(|&v| v == usize::MAX) {
            return Err(GraphError::RotationVertexMismatch(h));
        }
        validate_graph(&RawGraph {
            n_half_edges,
            pairing,
            vertex,
            rotation_next: next,
            color,
            legs: legs.iter().map(|&(l, h)| (l, h)).collect(),
            vertex_genus: vec![0; rotations.len()],
        })
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            n_half_edges: self.pairing.len(),
            pairing: self.pairing.clone(),
            vertex: self.vertex.clone(),
            rotation_next: self.next.clone(),
            color: self.color.clone(),
            legs: self.legs().into_iter().collect(),
            vertex_genus: self.vertex_genus.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<HalfEdgeGraph, String> {
        let raw: RawGraph = serde_json::from_str(s).map_err(|e| e.to_string())?;
        validate_graph(&raw).map_err(|e| e.to_string())
    }

    pub fn n_half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_genus.len()
    }

    pub fn n_legs(&self) -> usize {
        self.leg_label.iter().filter(|&&l| l != 0).count()
    }

    /// Number of internal edges.
    pub fn n_edges(&self) -> usize {
        (self.n_half_edges() - self.n_legs()) / 2
    }

    pub fn pair(&self, h: usize) -> usize {
        self.pairing[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex[h]
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn prev(&self, h: usize) -> usize {
        self.prev[h]
    }

    pub fn color(&self, h: usize) -> u8 {
        self.color[h]
    }

    pub fn colors(&self) -> &[u8] {
        &self.color
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.vertex_genus[v]
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.pairing[h] == h
    }

    /// Leg label of `h`, if it is a leg.
    pub fn leg_label(&self, h: usize) -> Option<u32> {
        match self.leg_label[h] {
            0 => None,
            l => Some(l),
        }
    }

    /// `(label, half-edge)` pairs sorted by label.
    pub fn legs(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = (0..self.n_half_edges())
            .filter_map(|h| self.leg_label(h).map(|l| (l, h)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn leg_half_edge(&self, label: u32) -> Option<usize> {
        self.leg_label.iter().position(|&l| l == label && l != 0)
    }

    /// Internal edges, each named by its smaller half-edge, in increasing order.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.n_half_edges()).filter(|&h| self.pairing[h] > h).collect()
    }

    pub fn is_loop(&self, h: usize) -> bool {
        !self.is_leg(h) && self.vertex[h] == self.vertex[self.pairing[h]]
    }

    /// XOR of the two colours of the edge through `h`; 0 for legs.
    pub fn twist(&self, h: usize) -> u8 {
        self.color[h] ^ self.color[self.pairing[h]]
    }

    /// Half-edges at `v` in rotation order, starting from its smallest half-edge.
    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        let Some(start) = self.vertex.iter().position(|&w| w == v) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut h = self.next[start];
        while h != start {
            out.push(h);
            h = self.next[h];
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertex.iter().filter(|&&w| w == v).count()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_vertices()];
        for &v in &self.vertex {
            out[v] += 1;
        }
        out
    }

    /// Every vertex has valence at least 3.
    pub fn is_reduced(&self) -> bool {
        self.valences().iter().all(|&k| k >= 3)
    }

    /// First Betti number of the underlying graph.
    pub fn loop_order(&self) -> usize {
        self.n_edges() + 1 - self.n_vertices()
    }

    /// Operadic genus: first Betti number plus vertex genera.
    pub fn genus(&self) -> usize {
        self.loop_order() + self.vertex_genus.iter().map(|&g| g as usize).sum::<usize>()
    }

    pub fn signature(&self) -> OperadicSignature {
        OperadicSignature { genus: self.genus(), legs: self.n_legs() }
    }

    /// Reverses the cyclic order at `v` and flips every colour there.
    pub fn reflect_vertex(&self, v: usize) -> Result<HalfEdgeGraph, GraphError> {
        if v >= self.n_vertices() {
            return Err(GraphError::NoSuchVertex(v));
        }
        let mut g = self.clone();
        g.reflect_in_place(v);
        Ok(g)
    }

    fn reflect_in_place(&mut self, v: usize) {
        for h in 0..self.n_half_edges() {
            if self.vertex[h] == v {
                std::mem::swap(&mut self.next[h], &mut self.prev[h]);
                self.color[h] ^= 1;
            }
        }
    }

    /// Flips both colours of the internal edge through `h` (reduced graphs only).
    pub fn recolor_edge(&self, h: usize) -> Result<HalfEdgeGraph, GraphError> {
        if h >= self.n_half_edges() {
            return Err(GraphError::NotAnEdge(h));
        }
        if self.is_leg(h) {
            return Err(GraphError::NotInternal(h));
        }
        if !self.is_reduced() {
            return Err(GraphError::NotReduced);
        }
        let mut g = self.clone();
        g.color[h] ^= 1;
        g.color[self.pairing[h]] ^= 1;
        Ok(g)
    }

    /// Sets every colour to 0 (ribbon, dianalytic) or every leg colour to 0 (leg-unoriented).
    /// The result represents the same class in the coarser category.
    pub fn project_variant(&self, variant: GraphVariant) -> HalfEdgeGraph {
        let mut g = self.clone();
        match variant {
            GraphVariant::Ribbon | GraphVariant::Dianalytic => g.color.iter_mut().for_each(|c| *c = 0),
            GraphVariant::MoebiusLegUnoriented => {
                for h in 0..g.n_half_edges() {
                    if g.is_leg(h) {
                        g.color[h] = 0;
                    }
                }
            }
            GraphVariant::Moebius => {}
        }
        g
    }

    /// Contracts the internal non-loop edge through `h`.
    pub fn contract_edge(&self, h: usize) -> Result<HalfEdgeGraph, GraphError> {
        Ok(self.contract_edge_tracked(h)?.0)
    }

    /// As [`Self::contract_edge`], also returning where each surviving half-edge went
    /// (`usize::MAX` for the two removed ones).
    pub fn contract_edge_tracked(&self, h: usize) -> Result<(HalfEdgeGraph, Vec<usize>), GraphError> {
        let n = self.n_half_edges();
        if h >= n {
            return Err(GraphError::NotAnEdge(h));
        }
        if self.is_leg(h) {
            return Err(GraphError::NotInternal(h));
        }
        if self.is_loop(h) {
            return Err(GraphError::LoopContraction(h));
        }
        let hp = self.pairing[h];
        let mut g = self.clone();
        if g.color[h] == 1 {
            g.reflect_in_place(g.vertex[h]);
        }
        if g.color[hp] == 1 {
            g.reflect_in_place(g.vertex[hp]);
        }
        let (v, w) = (g.vertex[h], g.vertex[hp]);
        let (keep, gone) = (v.min(w), v.max(w));
        let (a_first, a_last) = (g.next[h], g.prev[h]);
        let (b_first, b_last) = (g.next[hp], g.prev[hp]);
        let a_empty = a_first == h;
        let b_empty = b_first == hp;
        match (a_empty, b_empty) {
            (false, false) => {
                g.next[a_last] = b_first;
                g.next[b_last] = a_first;
            }
            (false, true) => g.next[a_last] = a_first,
            (true, false) => g.next[b_last] = b_first,
            (true, true) => {}
        }
        let mut map = vec![usize::MAX; n];
        let mut k = 0;
        for x in 0..n {
            if x != h && x != hp {
                map[x] = k;
                k += 1;
            }
        }
        let vmap = |u: usize| -> usize {
            let u = if u == gone { keep } else { u };
            if u > gone {
                u - 1
            } else {
                u
            }
        };
        let mut out = HalfEdgeGraph {
            pairing: Vec::with_capacity(k),
            vertex: Vec::with_capacity(k),
            next: Vec::with_capacity(k),
            prev: vec![0; k],
            color: Vec::with_capacity(k),
            leg_label: Vec::with_capacity(k),
            vertex_genus: Vec::with_capacity(g.n_vertices() - 1),
        };
        for x in 0..n {
            if map[x] == usize::MAX {
                continue;
            }
            out.pairing.push(map[g.pairing[x]]);
            out.vertex.push(vmap(g.vertex[x]));
            out.next.push(map[g.next[x]]);
            out.color.push(g.color[x]);
            out.leg_label.push(g.leg_label[x]);
        }
        for x in 0..k {
            let t = out.next[x];
            out.prev[t] = x;
        }
        for u in 0..g.n_vertices() {
            if u == gone {
                continue;
            }
            let mut gen = g.vertex_genus[u];
            if u == keep {
                gen += g.vertex_genus[gone];
            }
            out.vertex_genus.push(gen);
        }
        Ok((out, map))
    }

    /// Relabels half-edges by `perm` (old index -> new index) and vertices by first appearance.
    pub fn permute_half_edges(&self, perm: &[usize]) -> HalfEdgeGraph {
        let n = self.n_half_edges();
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut vmap = vec![usize::MAX; self.n_vertices()];
        let mut nv = 0;
        for &old in &inv {
            let v = self.vertex[old];
            if vmap[v] == usize::MAX {
                vmap[v] = nv;
                nv += 1;
            }
        }
        let mut genus = vec![0; self.n_vertices()];
        for (v, &nvid) in vmap.iter().enumerate() {
            if nvid != usize::MAX {
                genus[nvid] = self.vertex_genus[v];
            }
        }
        let mut g = HalfEdgeGraph {
            pairing: vec![0; n],
            vertex: vec![0; n],
            next: vec![0; n],
            prev: vec![0; n],
            color: vec![0; n],
            leg_label: vec![0; n],
            vertex_genus: genus,
        };
        for old in 0..n {
            let new = perm[old];
            g.pairing[new] = perm[self.pairing[old]];
            g.vertex[new] = vmap[self.vertex[old]];
            g.next[new] = perm[self.next[old]];
            g.prev[new] = perm[self.prev[old]];
            g.color[new] = self.color[old];
            g.leg_label[new] = self.leg_label[old];
        }
        g
    }

    /// Graphviz rendering; twisted edges are dashed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n  node [shape=circle];\n");
        for v in 0..self.n_vertices() {
            s.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
        }
        for h in self.edges() {
            let (a, b) = (self.vertex[h], self.vertex[self.pairing[h]]);
            let style = if self.twist(h) == 1 { " [style=dashed]" } else { "" };
            s.push_str(&format!("  v{a} -- v{b}{style};\n"));
        }
        for (l, h) in self.legs() {
            let style = if self.color[h] == 1 { ", style=dashed" } else { "" };
            s.push_str(&format!("  l{l} [shape=plaintext, label=\"{l}\"];\n"));
            s.push_str(&format!("  v{} -- l{l} [penwidth=0.6{style}];\n", self.vertex[h]));
        }
        s.push_str("}\n");
        s
    }
}

/// Genus and leg count of a graph, as a point of a modular operad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperadicSignature {
    pub genus: usize,
    pub legs: usize,
}

impl OperadicSignature {
    pub fn is_stable(&self) -> bool {
        2 * self.genus + self.legs > 2
    }

    /// Extended stability admits (1,0) and (0,2).
    pub fn is_extended_stable(&self) -> bool {
        2 * self.genus + self.legs >= 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_with_leg(colors: [u8; 3]) -> HalfEdgeGraph {
        HalfEdgeGraph::from_rotation(3, &[vec![0, 1, 2]], &[(0, 1)], &[(1, 2)], colors.to_vec()).unwrap()
    }

    #[test]
    fn single_loop_is_valid() {
        let g = loop_with_leg([0, 0, 0]);
        assert_eq!(g.genus(), 1);
        assert_eq!(g.n_legs(), 1);
        assert!(g.is_reduced());
    }

    #[test]
    fn three_cycle_pairing_rejected() {
        let raw = RawGraph {
            n_half_edges: 3,
            pairing: vec![1, 2, 0],
            vertex: vec![0, 0, 0],
            rotation_next: vec![1, 2, 0],
            color: vec![0; 3],
            legs: BTreeMap::new(),
            vertex_genus: vec![0],
        };
        assert!(matches!(validate_graph(&raw), Err(GraphError::NonInvolutivePairing(_))));
    }

    #[test]
    fn disjoint_loops_rejected() {
        let raw = RawGraph {
            n_half_edges: 4,
            pairing: vec![1, 0, 3, 2],
            vertex: vec![0, 0, 1, 1],
            rotation_next: vec![1, 0, 3, 2],
            color: vec![0; 4],
            legs: BTreeMap::new(),
            vertex_genus: vec![0, 0],
        };
        assert_eq!(validate_graph(&raw), Err(GraphError::Disconnected));
    }

    #[test]
    fn bad_labels_and_rotation_rejected() {
        let mut raw = loop_with_leg([0, 0, 0]).to_raw();
        raw.legs = [(2, 2)].into_iter().collect();
        assert!(matches!(validate_graph(&raw), Err(GraphError::BadLegLabels(_))));
        let mut raw = loop_with_leg([0, 0, 0]).to_raw();
        raw.rotation_next = vec![1, 0, 2];
        assert!(matches!(validate_graph(&raw), Err(GraphError::BadVertexCycle(0))));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let g = loop_with_leg([0, 1, 0]);
        let s = g.to_json();
        assert_eq!(
            s,
            r#"{"n_half_edges":3,"pairing":[1,0,2],"vertex":[0,0,0],"rotation_next":[1,2,0],"color":[0,1,0],"legs":{"1":2},"vertex_genus":[0]}"#
        );
        assert_eq!(HalfEdgeGraph::from_json(&s).unwrap(), g);
    }

    #[test]
    fn reflect_twice_is_identity() {
        let g = loop_with_leg([0, 1, 0]);
        let r = g.reflect_vertex(0).unwrap();
        assert_eq!(r.colors(), &[1, 0, 1]);
        assert_eq!(r.reflect_vertex(0).unwrap(), g);
    }

    #[test]
    fn recolor_keeps_twist() {
        let g = loop_with_leg([1, 1, 0]);
        let r = g.recolor_edge(0).unwrap();
        assert_eq!(r.colors(), &[0, 0, 0]);
        assert_eq!(r.twist(0), g.twist(0));
        assert_eq!(r.recolor_edge(1).unwrap(), g);
        assert_eq!(g.recolor_edge(2), Err(GraphError::NotInternal(2)));
    }

    #[test]
    fn contract_tree_edge() {
        // two trivalent vertices joined by one edge, legs 1..4
        let g = HalfEdgeGraph::from_rotation(
            6,
            &[vec![0, 1, 2], vec![3, 4, 5]],
            &[(2, 3)],
            &[(1, 0), (2, 1), (3, 4), (4, 5)],
            vec![0; 6],
        )
        .unwrap();
        let c = g.contract_edge(2).unwrap();
        assert_eq!(c.n_vertices(), 1);
        assert_eq!(c.n_edges(), 0);
        assert_eq!(c.genus(), 0);
        let order: Vec<u32> = c.half_edges_at(0).iter().map(|&h| c.leg_label(h).unwrap()).collect();
        assert_eq!(order, vec![1, 2, 3, 4]);
        assert_eq!(g.contract_edge(0), Err(GraphError::NotInternal(0)));
        assert_eq!(loop_with_leg([0; 3]).contract_edge(0), Err(GraphError::LoopContraction(0)));
    }

    #[test]
    fn contract_mixed_colors_reflects_one_side() {
        let g = HalfEdgeGraph::from_rotation(
            6,
            &[vec![0, 1, 2], vec![3, 4, 5]],
            &[(2, 3)],
            &[(1, 0), (2, 1), (3, 4), (4, 5)],
            vec![0, 0, 0, 1, 0, 0],
        )
        .unwrap();
        let c = g.contract_edge(2).unwrap();
        let word: Vec<(u32, u8)> = c
            .half_edges_at(0)
            .iter()
            .map(|&h| (c.leg_label(h).unwrap(), c.color(h)))
            .collect();
        assert_eq!(word, vec![(1, 0), (2, 0), (4, 1), (3, 1)]);
    }
}
