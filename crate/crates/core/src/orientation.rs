//! Orientations of graphs: an ordering of the internal edges together with an
//! ordered integer basis of first homology.
//!
//! Edges are named by their smaller half-edge and directed from it to its partner.
//! Cycle vectors are indexed by the position of an edge in [`HalfEdgeGraph::edges`].

use serde::{Deserialize, Serialize};

use crate::graph::HalfEdgeGraph;
use crate::linalg::det_small;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub edges: Vec<usize>,
    pub cycles: Vec<Vec<i64>>,
}

/// Breadth-first spanning tree over internal edges: `tree[i]` says whether
/// edge `i` (in `g.edges()` order) is a tree edge; `parent[v]` is the half-edge
/// at `v` whose edge leads towards the root.
struct SpanningTree {
    tree: Vec<bool>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

fn edge_index(g: &HalfEdgeGraph) -> Vec<usize> {
    let mut idx = vec![usize::MAX; g.n_half_edges()];
    for (i, e) in g.edges().into_iter().enumerate() {
        idx[e] = i;
        idx[g.pair(e)] = i;
    }
    idx
}

fn spanning_tree(g: &HalfEdgeGraph) -> SpanningTree {
    let idx = edge_index(g);
    let nv = g.n_vertices();
    let mut parent = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut tree = vec![false; g.n_edges()];
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for h in 0..g.n_half_edges() {
        at[g.vertex_of(h)].push(h);
    }
    depth[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &h in &at[v] {
            if g.is_leg(h) {
                continue;
            }
            let w = g.vertex_of(g.pair(h));
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = Some(g.pair(h));
                tree[idx[h]] = true;
                queue.push_back(w);
            }
        }
    }
    SpanningTree { tree, parent, depth }
}

/// Adds `coef` times the directed half-edge `h -> pair(h)` to `z`.
fn add_directed(g: &HalfEdgeGraph, idx: &[usize], z: &mut [i64], h: usize, coef: i64) {
    let dir = if h < g.pair(h) { 1 } else { -1 };
    z[idx[h]] += dir * coef;
}

/// Fundamental cycles of the breadth-first spanning tree, in edge order.
pub fn cycle_basis(g: &HalfEdgeGraph) -> Vec<Vec<i64>> {
    let idx = edge_index(g);
    let st = spanning_tree(g);
    let mut out = Vec::new();
    for (i, e) in g.edges().into_iter().enumerate() {
        if st.tree[i] {
            continue;
        }
        let mut z = vec![0i64; g.n_edges()];
        z[i] = 1;
        // close the cycle: walk from the head of e back to its tail through the tree
        let mut a = g.vertex_of(g.pair(e));
        let mut b = g.vertex_of(e);
        while a != b {
            if st.depth[a] >= st.depth[b] {
                // parent[a] sits at a; step a -> parent along it
                let h = st.parent[a].expect("non-root vertex has a parent");
                add_directed(g, &idx, &mut z, h, 1);
                a = g.vertex_of(g.pair(h));
            } else {
                // the path runs parent -> b here
                let h = st.parent[b].expect("non-root vertex has a parent");
                add_directed(g, &idx, &mut z, g.pair(h), 1);
                b = g.vertex_of(g.pair(h));
            }
        }
        out.push(z);
    }
    out
}

/// Boundary check used in tests and assertions: a cycle vector has zero boundary.
pub fn is_cycle(g: &HalfEdgeGraph, z: &[i64]) -> bool {
    let mut bd = vec![0i64; g.n_vertices()];
    for (i, e) in g.edges().into_iter().enumerate() {
        bd[g.vertex_of(g.pair(e))] += z[i];
        bd[g.vertex_of(e)] -= z[i];
    }
    bd.iter().all(|&x| x == 0)
}

impl Orientation {
    pub fn reference(g: &HalfEdgeGraph) -> Orientation {
        Orientation { edges: g.edges(), cycles: cycle_basis(g) }
    }
}

/// Sign by which reversing the cyclic order at a vertex of valence `k` acts on
/// orientations: the cell of a `k`-valent vertex is a configuration space of `k`
/// points on a circle, and reflection reverses each coordinate.
pub fn vertex_reflection_sign(k: usize) -> i32 {
    if k % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Product of [`vertex_reflection_sign`] over the flagged vertices of `g`.
pub fn reflection_sign(g: &HalfEdgeGraph, reflected: &[bool]) -> i32 {
    reflected
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r)
        .map(|(v, _)| vertex_reflection_sign(g.valence(v)))
        .product()
}

/// Sign of a permutation given as a list of distinct images `0..k`.
pub fn permutation_sign(images: &[usize]) -> i32 {
    let mut seen = vec![false; images.len()];
    let mut sign = 1;
    for i in 0..images.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = images[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign comparing `to_or` with the image of `from_or` under the half-edge map
/// `map` (from -> to). Half-edges mapped to `usize::MAX` belong to a contracted
/// edge and are dropped from the edge order and from the cycles.
pub fn transport_sign(
    from: &HalfEdgeGraph,
    from_or: &Orientation,
    to: &HalfEdgeGraph,
    to_or: &Orientation,
    map: &[usize],
) -> i32 {
    let to_edges = to.edges();
    let to_idx = edge_index(to);
    let mut pos_in_order = vec![usize::MAX; to.n_edges()];
    for (p, &e) in to_or.edges.iter().enumerate() {
        pos_in_order[to_idx[e]] = p;
    }
    let images: Vec<usize> = from_or
        .edges
        .iter()
        .filter(|&&e| map[e] != usize::MAX)
        .map(|&e| pos_in_order[to_idx[map[e]]])
        .collect();
    assert_eq!(images.len(), to.n_edges(), "edge map is not a bijection");
    let mut sign = permutation_sign(&images);

    let from_edges = from.edges();
    let moved: Vec<Vec<i64>> = from_or
        .cycles
        .iter()
        .map(|z| {
            let mut w = vec![0i64; to.n_edges()];
            for (i, &c) in z.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let a = map[from_edges[i]];
                if a == usize::MAX {
                    continue;
                }
                let dir = if a < to.pair(a) { 1 } else { -1 };
                w[to_idx[a]] += dir * c;
            }
            w
        })
        .collect();
    if !moved.is_empty() {
        let st = spanning_tree(to);
        let free: Vec<usize> = (0..to_edges.len()).filter(|&i| !st.tree[i]).collect();
        let restrict =
            |zs: &[Vec<i64>]| -> Vec<Vec<i64>> { zs.iter().map(|z| free.iter().map(|&i| z[i]).collect()).collect() };
        let num = det_small(&restrict(&moved));
        let den = det_small(&restrict(&to_or.cycles));
        assert!(den != 0 && num.abs() == den.abs(), "cycle map is not unimodular ({num}/{den})");
        if (num < 0) != (den < 0) {
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_graph_cycles() {
        // two trivalent vertices joined by three edges
        let g = HalfEdgeGraph::from_rotation(6, &[vec![0, 1, 2], vec![3, 4, 5]], &[(0, 3), (1, 5), (2, 4)], &[], vec![0; 6])
            .unwrap();
        let basis = cycle_basis(&g);
        assert_eq!(basis.len(), 2);
        assert!(basis.iter().all(|z| is_cycle(&g, z)));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
