//! Linear and integer programs under coordinate symmetry.

mod blocks;
mod ilp;
mod subspace;

pub use blocks::{is_core_point, BlockStructure, CorePoint, CoreStatus};
pub use ilp::{symmetric_ilp_feasible, symmetric_ilp_optimize, IlpOptimum, IlpOptions, IlpOutcome, DEFAULT_FIBER_LIMIT};
pub use subspace::{
    check_invariance, check_invariance_permutations, invariant_subspace, invariant_subspace_of_permutations,
    orbit_barycenter, solve_lp_reduced, vector_orbit, InvariantSubspace, LinearProgram,
};
