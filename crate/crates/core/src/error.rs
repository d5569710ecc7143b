use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a polyhedron needs an ambient dimension of at least one")]
    ZeroDimension,
    #[error("vertex {0} is listed more than once")]
    DuplicateVertex(usize),
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("index {index} is out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("polyhedron is empty")]
    Empty,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is not full-dimensional (dimension {dim} in ambient {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("inequality system has redundant rows {0:?}; remove them first")]
    Redundant(Vec<usize>),
    #[error("permutation degree {found} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group element is not a symmetry: {0}")]
    NotASymmetry(String),
    #[error("orbit expansion exceeded the budget of {0} elements")]
    BudgetExceeded(usize),
    #[error("group is not a product of symmetric groups on coordinate blocks: {0}")]
    NotBlockGroup(String),
    #[error("projection onto the invariant subspace is unbounded; supply explicit bounds")]
    UnboundedProjection,
    #[error("quasi-polynomial period {period} exceeds the bound {bound}")]
    PeriodTooLarge { period: u64, bound: u64 },
    #[error("unknown graph node {0}")]
    UnknownNode(usize),
    #[error("integer overflow during lattice enumeration")]
    Overflow,
    #[error("internal verification failed: {0}")]
    Verification(String),
}
