//! Lattice-point counting, Ehrhart quasi-polynomials and exact volumes.

mod counter;
mod ehrhart;
mod slices;
mod volume;

pub use counter::{count_lattice_points, lattice_points, LatticeCounter};
pub use ehrhart::{ehrhart, QuasiPolynomial};
pub use slices::{count_with_symmetry, slice_decomposition, FiberOrbit, SliceDecomposition};
pub use volume::{lattice_basis, volume, volume_randomized};
