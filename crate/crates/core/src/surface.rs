//! Band surfaces of Möbius graphs: boundary walks and topological type.
//!
//! A walk state is a half-edge together with a side `+1`/`-1`. From `(h, s)` the
//! walk crosses the edge of `h` (switching side when the edge is twisted) and then
//! turns to the next half-edge around the far vertex, in rotation order on the
//! `+` side and against it on the `-` side. Legs are fixed by the pairing and so
//! are passed through; each boundary circle is traced once in each direction.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphVariant, HalfEdgeGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("surface invariants disagree: {0}")]
    Inconsistent(String),
    #[error("vertex genus must be 0 to build a band surface")]
    VertexGenus,
    #[error("dianalytic graphs carry no twist data, so no band surface")]
    NoSurface,
}

/// One traversal: the sequence of `(half-edge, side)` states.
pub type BoundaryCycle = Vec<(usize, i8)>;

/// Orbits of the walk; twice the number of boundary components.
pub fn boundary_walk(g: &HalfEdgeGraph) -> Vec<BoundaryCycle> {
    let n = g.n_half_edges();
    let mut seen = vec![[false; 2]; n];
    let idx = |s: i8| if s > 0 { 0 } else { 1 };
    let mut out = Vec::new();
    for h0 in 0..n {
        for s0 in [1i8, -1] {
            if seen[h0][idx(s0)] {
                continue;
            }
            let mut cyc = Vec::new();
            let (mut h, mut s) = (h0, s0);
            while !seen[h][idx(s)] {
                seen[h][idx(s)] = true;
                cyc.push((h, s));
                let (nh, ns) = step(g, h, s);
                h = nh;
                s = ns;
            }
            out.push(cyc);
        }
    }
    out
}

fn step(g: &HalfEdgeGraph, h: usize, s: i8) -> (usize, i8) {
    let p = g.pair(h);
    let s2 = if g.twist(h) == 1 { -s } else { s };
    let next = if s2 > 0 { g.next(p) } else { g.prev(p) };
    (next, s2)
}

/// A leg met on a boundary, with its orientation relative to the direction of travel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedLeg {
    pub label: u32,
    pub positive: bool,
}

impl fmt::Display for SignedLeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, if self.positive { '+' } else { '-' })
    }
}

/// Handles, crosscaps and boundary components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TopologicalType {
    pub m: usize,
    pub u: usize,
    pub h: usize,
}

impl TopologicalType {
    /// Operadic genus `2m + h + u - 1` of graphs realizing this type.
    pub fn graph_genus(&self) -> usize {
        2 * self.m + self.h + self.u - 1
    }

    /// Top edge count `6m + 3u + 3h + n - 6`.
    pub fn top_degree(&self, legs: usize) -> isize {
        6 * self.m as isize + 3 * self.u as isize + 3 * self.h as isize + legs as isize - 6
    }

    pub fn is_orientable(&self) -> bool {
        self.u == 0
    }
}

impl fmt::Display for TopologicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.u, self.h)
    }
}

impl std::str::FromStr for TopologicalType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<usize> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [m, u, h] if u <= 2 && h >= 1 => Ok(TopologicalType { m, u, h }),
            _ => Err(format!("expected m,u,h with u<=2 and h>=1, got {s:?}")),
        }
    }
}

/// Diffeomorphism invariant of the band surface, including where the legs sit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceType {
    pub m: usize,
    pub u: usize,
    pub h: usize,
    /// One cyclic sequence per boundary circle, normalized and sorted.
    pub boundary_legs: Vec<Vec<SignedLeg>>,
}

impl SurfaceType {
    pub fn topological_type(&self) -> TopologicalType {
        TopologicalType { m: self.m, u: self.u, h: self.h }
    }

    /// `(1+,2-)|()` style rendering of the boundary data.
    pub fn boundary_partition(&self) -> String {
        self.boundary_legs
            .iter()
            .map(|b| format!("({})", b.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Forgets leg orientations (all legs reported positive) and renormalizes.
    pub fn unsigned(&self) -> SurfaceType {
        let plain: Vec<Vec<SignedLeg>> = self
            .boundary_legs
            .iter()
            .map(|c| c.iter().map(|l| SignedLeg { label: l.label, positive: true }).collect())
            .collect();
        let rev = |c: &Vec<SignedLeg>| -> Vec<SignedLeg> { c.iter().rev().copied().collect() };
        let mut fwd: Vec<Vec<SignedLeg>> = plain.iter().map(|c| normalize_oriented(c)).collect();
        let mut bwd: Vec<Vec<SignedLeg>> = plain.iter().map(|c| normalize_oriented(&rev(c))).collect();
        let mut b = if self.u == 0 {
            fwd.sort();
            bwd.sort();
            fwd.min(bwd)
        } else {
            fwd.into_iter().zip(bwd).map(|(a, b)| a.min(b)).collect()
        };
        b.sort();
        SurfaceType { boundary_legs: b, ..self.clone() }
    }
}

/// Orientation classes of vertices making every tree edge untwisted, if that
/// extends to all edges.
pub fn orienting_flips(g: &HalfEdgeGraph) -> Option<Vec<u8>> {
    let nv = g.n_vertices();
    let mut o = vec![u8::MAX; nv];
    o[0] = 0;
    let mut stack = vec![0usize];
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for h in 0..g.n_half_edges() {
        at[g.vertex_of(h)].push(h);
    }
    while let Some(v) = stack.pop() {
        for &h in &at[v] {
            if g.is_leg(h) {
                continue;
            }
            let w = g.vertex_of(g.pair(h));
            let want = o[v] ^ g.twist(h);
            if o[w] == u8::MAX {
                o[w] = want;
                stack.push(w);
            } else if o[w] != want {
                return None;
            }
        }
    }
    Some(o)
}

pub fn is_orientable(g: &HalfEdgeGraph) -> bool {
    orienting_flips(g).is_some()
}

/// Legs along one walk, with their signs.
fn legs_on(g: &HalfEdgeGraph, cyc: &BoundaryCycle) -> Vec<SignedLeg> {
    cyc.iter()
        .filter_map(|&(h, s)| {
            g.leg_label(h).map(|label| SignedLeg { label, positive: (s > 0) == (g.color(h) == 0) })
        })
        .collect()
}

fn rotations(c: &[SignedLeg]) -> impl Iterator<Item = Vec<SignedLeg>> + '_ {
    (0..c.len().max(1)).map(move |i| c[i.min(c.len())..].iter().chain(&c[..i.min(c.len())]).copied().collect())
}

fn reversed(c: &[SignedLeg]) -> Vec<SignedLeg> {
    c.iter().rev().map(|l| SignedLeg { label: l.label, positive: !l.positive }).collect()
}

fn normalize_oriented(c: &[SignedLeg]) -> Vec<SignedLeg> {
    rotations(c).min().unwrap_or_default()
}

fn normalize_unoriented(c: &[SignedLeg]) -> Vec<SignedLeg> {
    normalize_oriented(c).min(normalize_oriented(&reversed(c)))
}

/// Full invariant. Fails if Euler characteristic, boundary count and genus disagree.
pub fn surface_type(g: &HalfEdgeGraph) -> Result<SurfaceType, SurfaceError> {
    if (0..g.n_vertices()).any(|v| g.vertex_genus(v) != 0) {
        return Err(SurfaceError::VertexGenus);
    }
    let walks = boundary_walk(g);
    if walks.len() % 2 != 0 {
        return Err(SurfaceError::Inconsistent(format!("{} walk orbits", walks.len())));
    }
    let h = walks.len() / 2;
    let chi = g.n_vertices() as isize - g.n_edges() as isize;
    let flips = orienting_flips(g);
    let (m, u) = if flips.is_some() {
        let twice_m = 2 - chi - h as isize;
        if twice_m < 0 || twice_m % 2 != 0 {
            return Err(SurfaceError::Inconsistent(format!("orientable with chi={chi}, h={h}")));
        }
        ((twice_m / 2) as usize, 0)
    } else {
        let uhat = 2 - chi - h as isize;
        if uhat < 1 {
            return Err(SurfaceError::Inconsistent(format!("nonorientable with chi={chi}, h={h}")));
        }
        let u = if uhat % 2 == 1 { 1 } else { 2 };
        (((uhat - u) / 2) as usize, u as usize)
    };
    if 2 * m + h + u - 1 != g.genus() {
        return Err(SurfaceError::Inconsistent(format!("type ({m},{u},{h}) against genus {}", g.genus())));
    }
    let mut boundary_legs: Vec<Vec<SignedLeg>> = match &flips {
        None => {
            // one representative per circle, normalized up to reversal
            let mut per_circle: Vec<Vec<SignedLeg>> =
                walks.iter().map(|w| normalize_unoriented(&legs_on(g, w))).collect();
            per_circle.sort();
            per_circle.into_iter().step_by(2).collect()
        }
        Some(o) => {
            // the walks travelling with the global orientation
            let chosen: Vec<Vec<SignedLeg>> = walks
                .iter()
                .filter(|w| {
                    let (hh, s) = w[0];
                    (s > 0) == (o[g.vertex_of(hh)] == 0)
                })
                .map(|w| legs_on(g, w))
                .collect();
            if chosen.len() != h {
                return Err(SurfaceError::Inconsistent("orientation does not split the walks".into()));
            }
            let mut fwd: Vec<Vec<SignedLeg>> = chosen.iter().map(|c| normalize_oriented(c)).collect();
            let mut bwd: Vec<Vec<SignedLeg>> = chosen.iter().map(|c| normalize_oriented(&reversed(c))).collect();
            fwd.sort();
            bwd.sort();
            fwd.min(bwd)
        }
    };
    boundary_legs.sort();
    let placed: usize = boundary_legs.iter().map(|b| b.len()).sum();
    if placed != g.n_legs() {
        return Err(SurfaceError::Inconsistent(format!("{placed} leg sightings for {} legs", g.n_legs())));
    }
    Ok(SurfaceType { m, u, h, boundary_legs })
}

/// Surface invariant relevant to a variant: leg signs dropped where legs are unoriented.
pub fn surface_invariant(g: &HalfEdgeGraph, variant: GraphVariant) -> Result<SurfaceType, SurfaceError> {
    match variant {
        GraphVariant::Moebius => surface_type(g),
        GraphVariant::MoebiusLegUnoriented => Ok(surface_type(g)?.unsigned()),
        GraphVariant::Ribbon => surface_type(&g.project_variant(variant)),
        GraphVariant::Dianalytic => Err(SurfaceError::NoSurface),
    }
}

/// `genus,legs,variant,canonical_code_hash,m,u,h,boundary_leg_partition`
pub fn census_row(g: &HalfEdgeGraph, variant: GraphVariant) -> Result<String, SurfaceError> {
    let s = surface_invariant(g, variant)?;
    let code = crate::canon::canonical_code(g, variant);
    Ok(format!(
        "{},{},{},{},{},{},{},{}",
        g.genus(),
        g.n_legs(),
        variant,
        code.hash_hex(),
        s.m,
        s.u,
        s.h,
        s.boundary_partition()
    ))
}

pub const CENSUS_HEADER: &str = "genus,legs,variant,canonical_code_hash,m,u,h,boundary_leg_partition";

#[cfg(test)]
mod tests {
    use super::*;

    fn one_vertex(word: &[usize], pairs: &[(usize, usize)], legs: &[(u32, usize)], colors: Vec<u8>) -> HalfEdgeGraph {
        HalfEdgeGraph::from_rotation(word.len(), &[word.to_vec()], pairs, legs, colors).unwrap()
    }

    #[test]
    fn basic_surfaces() {
        let annulus = one_vertex(&[0, 1, 2], &[(0, 1)], &[(1, 2)], vec![0; 3]);
        let crosscap = one_vertex(&[0, 1, 2], &[(0, 1)], &[(1, 2)], vec![0, 1, 0]);
        let handle = one_vertex(&[0, 1, 2, 3, 4], &[(0, 2), (1, 3)], &[(1, 4)], vec![0; 5]);
        assert_eq!(boundary_walk(&annulus).len() / 2, 2);
        assert_eq!(boundary_walk(&crosscap).len() / 2, 1);
        assert_eq!(boundary_walk(&handle).len() / 2, 1);
        assert_eq!(surface_type(&handle).unwrap().topological_type(), TopologicalType { m: 1, u: 0, h: 1 });
        assert_eq!(surface_type(&crosscap).unwrap().topological_type(), TopologicalType { m: 0, u: 1, h: 1 });
        assert_eq!(surface_type(&annulus).unwrap().topological_type(), TopologicalType { m: 0, u: 0, h: 2 });
    }

    #[test]
    fn parse_type() {
        assert_eq!("1,0,2".parse::<TopologicalType>().unwrap(), TopologicalType { m: 1, u: 0, h: 2 });
        assert!("1,3,1".parse::<TopologicalType>().is_err());
    }
}
