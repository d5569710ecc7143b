//! Exact rational linear algebra, linear programming and the two polyhedron
//! representations.

pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod rational;

pub use linalg::{rank, Matrix};
pub use lp::{LpOutcome, LpSolution};
pub use polyhedron::{
    affine_hull, bounds_of, dimension, incidence, remove_redundancy, solve_lp, AffineHull,
    FaceIndexSet, HPolyhedron, Irredundant, VPolyhedron,
};
pub use rational::{parse_rational, rat, rat_vec, ratio, Rational};
