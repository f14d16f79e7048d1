//! Exact chain models for moduli spaces of Klein surfaces.
//!
//! Graphs are half-edge structures with cyclic orders and two-colourings
//! ([`graph`]); they are canonicalized up to ribbon, Möbius or dianalytic
//! isomorphism ([`canon`]), thickened to band surfaces ([`surface`]),
//! enumerated ([`enumerate`]) and assembled into integer cochain complexes
//! ([`complex`]) whose rational homology is computed exactly ([`linalg`]).
//! [`operad`] holds the operadic checks around the operad `MAss`.

pub mod canon;
pub mod chains;
pub mod cli;
pub mod complex;
pub mod enumerate;
pub mod graph;
pub mod linalg;
pub mod operad;
pub mod orientation;
pub mod surface;
pub mod verify;

pub use canon::{automorphism_signs, canonical_code, canonical_form, AutomorphismReport, CanonicalCode};
pub use complex::{build_cobar_complex, build_graph_complex, homology, CobarOperad, GradedComplex, HomologyReport, OrientedBasisElement};
pub use enumerate::{enumerate_graphs, enumerate_trees, EnumerationQuery, GraphFamily, TreeVariant};
pub use graph::{validate_graph, GraphError, GraphVariant, HalfEdgeGraph, OperadicSignature, RawGraph};
pub use linalg::{betti_numbers, euler_characteristic, rank, rank_mod_p, SparseIntMatrix};
pub use surface::{boundary_walk, surface_type, SurfaceType, TopologicalType};
