//! Canonical codes, isomorphism tests and automorphism groups.
//!
//! A code is the lexicographically least token stream over all admissible
//! breadth-first traversals. Traversals start at leg 1 when there are legs,
//! otherwise at any half-edge of minimal valence. Each vertex is listed in
//! rotation order or, when reflected, in reverse order. For Möbius graphs the
//! reflection of a newly reached vertex is forced by gauging the tree edge
//! used to reach it; for dianalytic graphs every vertex branches.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, GraphVariant, HalfEdgeGraph, RawGraph};
use crate::orientation;

pub const CODE_VERSION: u8 = 1;
const HEADER: usize = 5;
const NONE: u32 = u32::MAX;

const T_ROOT: u8 = 0;
const T_LEG: u8 = 1;
const T_NEW: u8 = 2;
const T_PEND: u8 = 3;
const T_OLD: u8 = 4;

/// Total order on isomorphism classes; equal iff isomorphic in `variant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub variant: GraphVariant,
    pub bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Short stable digest of the code, as used in census files.
    pub fn hash_hex(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(&self.bytes);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the canonical representative.
    pub fn decode(&self) -> Result<HalfEdgeGraph, GraphError> {
        decode(&self.bytes)
    }
}

/// Result of canonicalization: the code, the canonical graph and the
/// half-edge map from the input graph into it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub code: CanonicalCode,
    pub graph: HalfEdgeGraph,
    pub relabel: Vec<usize>,
    /// Which input vertices were reflected (or reversed) by the map.
    pub reflected: Vec<bool>,
}

/// A symmetry of a graph: half-edge permutation plus per-vertex reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub half_edges: Vec<usize>,
    pub reflected: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismReport {
    pub group_order: usize,
    pub orientation_reversing_exists: bool,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Ribbon,
    /// Twist parities and leg colours modulo reflections and recolourings.
    Reduced { leg_colors: bool },
    /// Every half-edge colour matters; only reflections act.
    FullColor { leg_colors: bool },
    Dianalytic,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Equal,
    Less,
}

#[derive(Clone)]
struct State {
    code: Vec<u8>,
    label: Vec<u32>,
    next_label: u32,
    start: Vec<u32>,
    orient: Vec<u8>,
    queue: Vec<u32>,
    head: usize,
    version: u32,
    cmp: Cmp,
}

struct Search<'g> {
    g: &'g HalfEdgeGraph,
    mode: Mode,
    valence: Vec<usize>,
    best: Vec<u8>,
    have_best: bool,
    version: u32,
    winners: Vec<(Vec<u32>, Vec<u8>)>,
}

impl<'g> Search<'g> {
    fn new(g: &'g HalfEdgeGraph, variant: GraphVariant) -> Self {
        assert!(g.n_half_edges() < 255, "graphs are limited to 254 half-edges");
        let reduced = g.is_reduced();
        let mode = match variant {
            GraphVariant::Ribbon => Mode::Ribbon,
            GraphVariant::Dianalytic => Mode::Dianalytic,
            GraphVariant::Moebius | GraphVariant::MoebiusLegUnoriented => {
                let leg_colors = variant == GraphVariant::Moebius;
                if reduced {
                    Mode::Reduced { leg_colors }
                } else {
                    Mode::FullColor { leg_colors }
                }
            }
        };
        Search {
            g,
            mode,
            valence: g.valences(),
            best: Vec::new(),
            have_best: false,
            version: 0,
            winners: Vec::new(),
        }
    }

    fn header(&self, variant: GraphVariant) -> Vec<u8> {
        let full = matches!(self.mode, Mode::FullColor { .. }) as u8;
        vec![
            CODE_VERSION,
            variant.tag(),
            full,
            self.g.n_half_edges() as u8,
            self.g.n_vertices() as u8,
        ]
    }

    fn run_all(&mut self, variant: GraphVariant) {
        let g = self.g;
        let n = g.n_half_edges();
        let header = self.header(variant);
        if n == 0 {
            let mut code = header;
            code.extend([T_ROOT, 0, g.vertex_genus(0) as u8, 0]);
            self.best = code;
            self.have_best = true;
            self.winners.push((Vec::new(), vec![0]));
            return;
        }
        let roots: Vec<usize> = match g.leg_half_edge(1) {
            Some(h) => vec![h],
            None => {
                let key = |h: usize| (self.valence[g.vertex_of(h)], g.vertex_genus(g.vertex_of(h)));
                let min = (0..n).map(key).min().unwrap();
                (0..n).filter(|&h| key(h) == min).collect()
            }
        };
        let orients: &[u8] = match self.mode {
            Mode::Ribbon | Mode::Dianalytic => &[0],
            _ => &[0, 1],
        };
        for &r in &roots {
            for &o in orients {
                let v = g.vertex_of(r);
                let mut st = State {
                    code: header.clone(),
                    label: vec![NONE; n],
                    next_label: 0,
                    start: vec![NONE; g.n_vertices()],
                    orient: vec![0; g.n_vertices()],
                    queue: vec![v as u32],
                    head: 0,
                    version: self.version,
                    cmp: Cmp::Equal,
                };
                st.start[v] = r as u32;
                st.orient[v] = o;
                if self.have_best {
                    st.cmp = match compare_prefix(&st.code, &self.best) {
                        Some(c) => c,
                        None => continue,
                    };
                }
                if !self.push(&mut st, [T_ROOT, self.valence[v] as u8, g.vertex_genus(v) as u8, 0]) {
                    continue;
                }
                self.run(st);
            }
        }
    }

    /// Appends a token; false when the prefix already exceeds the best code.
    fn push(&self, st: &mut State, tok: [u8; 4]) -> bool {
        let at = st.code.len();
        st.code.extend_from_slice(&tok);
        if !self.have_best {
            return true;
        }
        if st.version != self.version {
            st.version = self.version;
            match compare_prefix(&st.code, &self.best) {
                Some(c) => st.cmp = c,
                None => return false,
            }
            return true;
        }
        if st.cmp == Cmp::Equal {
            match tok[..].cmp(&self.best[at..at + 4]) {
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => st.cmp = Cmp::Less,
                std::cmp::Ordering::Equal => {}
            }
        }
        true
    }

    fn run(&mut self, mut st: State) {
        while st.head < st.queue.len() {
            let v = st.queue[st.head] as usize;
            if self.mode == Mode::Dianalytic {
                let mut other = st.clone();
                st.orient[v] = 0;
                other.orient[v] = 1;
                if self.process(&mut st, v) {
                    st.head += 1;
                    self.run(st);
                }
                if self.process(&mut other, v) {
                    other.head += 1;
                    self.run(other);
                }
                return;
            }
            if !self.process(&mut st, v) {
                return;
            }
            st.head += 1;
        }
        self.finish(st);
    }

    fn finish(&mut self, mut st: State) {
        if self.have_best && st.version != self.version {
            match compare_prefix(&st.code, &self.best) {
                Some(c) => st.cmp = c,
                None => return,
            }
        }
        if !self.have_best || st.cmp == Cmp::Less {
            self.best = st.code;
            self.have_best = true;
            self.version += 1;
            self.winners.clear();
            self.winners.push((st.label, st.orient));
        } else {
            self.winners.push((st.label, st.orient));
        }
    }

    fn process(&self, st: &mut State, v: usize) -> bool {
        let g = self.g;
        let ov = st.orient[v];
        let mut d = st.start[v] as usize;
        for _ in 0..self.valence[v] {
            st.label[d] = st.next_label;
            st.next_label += 1;
            let dc = match self.mode {
                Mode::FullColor { .. } => g.color(d) ^ ov,
                _ => 0,
            };
            let tok = if let Some(l) = g.leg_label(d) {
                let c = match self.mode {
                    Mode::Reduced { leg_colors: true } | Mode::FullColor { leg_colors: true } => g.color(d) ^ ov,
                    _ => 0,
                };
                [T_LEG, l as u8, c, 0]
            } else {
                let p = g.pair(d);
                let w = g.vertex_of(p);
                if st.label[p] != NONE {
                    let par = match self.mode {
                        Mode::Reduced { .. } => g.twist(d) ^ ov ^ st.orient[w],
                        _ => 0,
                    };
                    [T_OLD, st.label[p] as u8, par, dc]
                } else if w == v || st.start[w] != NONE {
                    [T_PEND, 0, 0, dc]
                } else {
                    st.start[w] = p as u32;
                    st.queue.push(w as u32);
                    st.orient[w] = match self.mode {
                        Mode::Reduced { .. } => ov ^ g.twist(d),
                        Mode::FullColor { .. } => g.color(p),
                        Mode::Ribbon | Mode::Dianalytic => 0,
                    };
                    [T_NEW, self.valence[w] as u8, g.vertex_genus(w) as u8, dc]
                }
            };
            if !self.push(st, tok) {
                return false;
            }
            d = if ov == 0 { g.next(d) } else { g.prev(d) };
        }
        true
    }
}

/// `Some(Less)`/`Some(Equal)` if `code` is below or equal to the same-length prefix of `best`.
fn compare_prefix(code: &[u8], best: &[u8]) -> Option<Cmp> {
    match code.cmp(&best[..code.len()]) {
        std::cmp::Ordering::Less => Some(Cmp::Less),
        std::cmp::Ordering::Equal => Some(Cmp::Equal),
        std::cmp::Ordering::Greater => None,
    }
}

fn search(g: &HalfEdgeGraph, variant: GraphVariant) -> Search<'_> {
    let mut s = Search::new(g, variant);
    s.run_all(variant);
    s
}

pub fn canonical_code(g: &HalfEdgeGraph, variant: GraphVariant) -> CanonicalCode {
    let s = search(g, variant);
    CanonicalCode { variant, bytes: s.best }
}

pub fn canonical_form(g: &HalfEdgeGraph, variant: GraphVariant) -> Canonical {
    let s = search(g, variant);
    let code = CanonicalCode { variant, bytes: s.best };
    let graph = code.decode().expect("canonical codes decode");
    let (label, orient) = &s.winners[0];
    Canonical {
        relabel: label.iter().map(|&l| l as usize).collect(),
        reflected: orient.iter().map(|&o| o == 1).collect(),
        code,
        graph,
    }
}

pub fn is_isomorphic(a: &HalfEdgeGraph, b: &HalfEdgeGraph, variant: GraphVariant) -> bool {
    canonical_code(a, variant) == canonical_code(b, variant)
}

/// All automorphisms of `g` in the category of `variant`.
pub fn automorphisms(g: &HalfEdgeGraph, variant: GraphVariant) -> Vec<Automorphism> {
    let s = search(g, variant);
    let (best_label, best_orient) = &s.winners[0];
    let n = g.n_half_edges();
    let mut inv = vec![0usize; n];
    for (d, &l) in best_label.iter().enumerate() {
        inv[l as usize] = d;
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (label, orient) in &s.winners {
        let half_edges: Vec<usize> = label.iter().map(|&l| inv[l as usize]).collect();
        let reflected: Vec<bool> = (0..g.n_vertices())
            .map(|v| {
                let image = match g.half_edges_at(v).first() {
                    Some(&h) => g.vertex_of(half_edges[h]),
                    None => v,
                };
                orient[v] != best_orient[image]
            })
            .collect();
        let a = Automorphism { half_edges, reflected };
        if seen.insert(a.clone()) {
            out.push(a);
        }
    }
    out
}

pub fn automorphism_signs(g: &HalfEdgeGraph, variant: GraphVariant) -> AutomorphismReport {
    let auts = automorphisms(g, variant);
    let reference = orientation::Orientation::reference(g);
    let orientation_reversing_exists = auts
        .iter()
        .any(|a| {
            orientation::transport_sign(g, &reference, g, &reference, &a.half_edges)
                * orientation::reflection_sign(g, &a.reflected)
                < 0
        });
    AutomorphismReport {
        group_order: auts.len(),
        orientation_reversing_exists,
        generators: generating_set(auts.into_iter().map(|a| a.half_edges).collect()),
    }
}

/// Greedy generating set: keep an element when it is not yet generated.
fn generating_set(elements: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let id: Vec<usize> = (0..first.len()).collect();
    let mut group: HashSet<Vec<usize>> = HashSet::from([id]);
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for e in elements {
        if group.contains(&e) {
            continue;
        }
        gens.push(e);
        let mut frontier: Vec<Vec<usize>> = group.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y: Vec<usize> = x.iter().map(|&i| s[i]).collect();
                if group.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

fn decode(bytes: &[u8]) -> Result<HalfEdgeGraph, GraphError> {
    let bad = |i| GraphError::IndexOutOfRange { field: "code", index: i };
    if bytes.len() < HEADER + 4 || bytes[0] != CODE_VERSION {
        return Err(bad(0));
    }
    let full = bytes[2] == 1;
    let n = bytes[3] as usize;
    let nv = bytes[4] as usize;
    let body = &bytes[HEADER..];
    if body.len() != 4 * (n + 1) {
        return Err(bad(HEADER));
    }
    let mut valence = vec![body[1] as usize];
    let mut genus = vec![body[2] as u32];
    let mut pairing: Vec<usize> = (0..n).collect();
    let mut color = vec![0u8; n];
    let mut legs = Vec::new();
    for t in 0..n {
        let tok = &body[4 * (t + 1)..4 * (t + 2)];
        match tok[0] {
            T_LEG => {
                legs.push((tok[1] as u32, t));
                color[t] = tok[2];
            }
            T_NEW => {
                valence.push(tok[1] as usize);
                genus.push(tok[2] as u32);
                color[t] = tok[3];
            }
            T_PEND => color[t] = tok[3],
            T_OLD => {
                let p = tok[1] as usize;
                if p >= t {
                    return Err(bad(HEADER + 4 * (t + 1)));
                }
                pairing[t] = p;
                pairing[p] = t;
                color[t] = if full { tok[3] } else { tok[2] };
            }
            _ => return Err(bad(HEADER + 4 * (t + 1))),
        }
    }
    if valence.len() != nv || valence.iter().sum::<usize>() != n {
        return Err(bad(4));
    }
    let mut vertex = Vec::with_capacity(n);
    let mut next = Vec::with_capacity(n);
    let mut base = 0;
    for (v, &k) in valence.iter().enumerate() {
        for i in 0..k {
            vertex.push(v);
            next.push(base + (i + 1) % k);
        }
        base += k;
    }
    crate::graph::validate_graph(&RawGraph {
        n_half_edges: n,
        pairing,
        vertex,
        rotation_next: next,
        color,
        legs: legs.into_iter().collect(),
        vertex_genus: genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corolla_pair(colors: Vec<u8>) -> HalfEdgeGraph {
        HalfEdgeGraph::from_rotation(
            6,
            &[vec![0, 1, 2], vec![3, 4, 5]],
            &[(2, 3)],
            &[(1, 0), (2, 1), (3, 4), (4, 5)],
            colors,
        )
        .unwrap()
    }

    #[test]
    fn decode_round_trip() {
        for v in GraphVariant::ALL {
            let g = corolla_pair(vec![0, 1, 0, 1, 1, 0]);
            let c = canonical_form(&g, v);
            assert_eq!(canonical_code(&c.graph, v), c.code);
            assert_eq!(g.permute_half_edges(&c.relabel).n_edges(), c.graph.n_edges());
        }
    }

    #[test]
    fn reflection_invariance() {
        let g = corolla_pair(vec![0, 1, 0, 1, 1, 0]);
        let r = g.reflect_vertex(1).unwrap();
        for v in [GraphVariant::Moebius, GraphVariant::Dianalytic, GraphVariant::MoebiusLegUnoriented] {
            assert_eq!(canonical_code(&g, v), canonical_code(&r, v));
        }
        assert_eq!(
            canonical_code(&g, GraphVariant::Ribbon),
            canonical_code(&g.project_variant(GraphVariant::Ribbon), GraphVariant::Ribbon)
        );
    }

    #[test]
    fn generators_generate() {
        let handle = HalfEdgeGraph::from_rotation(5, &[vec![0, 1, 2, 3, 4]], &[(0, 2), (1, 3)], &[(1, 4)], vec![0; 5])
            .unwrap();
        let report = automorphism_signs(&handle, GraphVariant::Ribbon);
        assert_eq!(report.group_order, 1);
        assert!(report.generators.is_empty());
    }
}
