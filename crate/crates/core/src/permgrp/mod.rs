//! Permutation groups via stabilizer chains, with orbit, stabilizer and
//! canonical-image computations on index sets.

pub mod backtrack;
pub mod bsgs;
pub mod orbit;
pub mod perm;

pub use backtrack::{canonical_representative, canonical_with_transporter, is_equivalent, set_stabilizer};
pub use bsgs::{schreier_sims, PermutationGroup};
pub use orbit::{orbit_of_set, orbit_of_set_with_budget, Orbit, DEFAULT_ORBIT_BUDGET};
pub use perm::Permutation;
