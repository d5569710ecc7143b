//! Affine symmetry groups of polytopes from the Gram form of their vertices
//! (or of their normalized inequalities).

pub mod affine;
pub mod automorphism;
pub mod graph;

pub use affine::{
    affine_symmetry_group, normalized_rows, realize, restricted_symmetries_h, AffineMap, SymmetryGroup,
};
pub use automorphism::{colored_automorphisms, graph_automorphisms};
pub use graph::{build_symmetry_graph, SymmetryGraph};
