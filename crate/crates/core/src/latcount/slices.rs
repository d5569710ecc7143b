//! Counting under a product of symmetric groups by fibers of the projection
//! onto the invariant subspace.
//!
//! Fibers are indexed by integer block sums `s`; the fiber through `s` is
//! `P ∩ {x : Σ_{B_j} x = s_j}` with origin the balanced point of `s` and the
//! lattice basis `e_{b_k} − e_{b_{k+1}}` inside every block. Within a fiber
//! only block-sorted points are enumerated, each weighted by its orbit size.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polycore::linalg::Matrix;
use crate::polycore::rational::{ceil_int, floor_int};
use crate::polycore::{bounds_of, solve_lp, HPolyhedron, Rational};
use crate::symilp::{check_invariance_permutations, BlockStructure, LinearProgram};

use super::counter::{count_lattice_points, LatticeCounter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberOrbit {
    pub sums: Vec<BigInt>,
    /// Fiber barycenter in the invariant subspace.
    pub anchor: Vec<Rational>,
    /// Anchors are fixed by the group, so every orbit is a single fiber.
    pub orbit_size: BigUint,
    /// Integer origin of the fiber lattice.
    pub origin: Vec<BigInt>,
    /// Lattice basis of the fiber direction (rows).
    pub basis: Vec<Vec<BigInt>>,
    /// The fiber in basis coordinates; `None` when the fiber is a point.
    pub polytope: Option<HPolyhedron>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDecomposition {
    /// `P ∩ 𝓘` in coordinates of the block sums.
    pub invariant_slice: HPolyhedron,
    pub blocks: BlockStructure,
    pub fiber_orbits: Vec<FiberOrbit>,
}

fn as_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// `P` restricted to `x = origin + Σ t_k basis_k`.
fn restrict(p: &HPolyhedron, origin: &[BigInt], basis: &[Vec<BigInt>]) -> Result<HPolyhedron> {
    let basis: Matrix = basis.iter().map(|b| as_rational(b)).collect();
    p.restrict_affine(&as_rational(origin), &basis)
}

fn fiber_basis(blocks: &BlockStructure) -> Vec<Vec<BigInt>> {
    let n = blocks.degree();
    let mut out = Vec::new();
    for b in blocks.blocks() {
        for w in b.windows(2) {
            let mut v = vec![BigInt::zero(); n];
            v[w[0]] = BigInt::one();
            v[w[1]] = -BigInt::one();
            out.push(v);
        }
    }
    out
}

pub fn slice_decomposition(p: &HPolyhedron, blocks: &BlockStructure) -> Result<SliceDecomposition> {
    let n = p.dim();
    if blocks.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, found: blocks.degree() });
    }
    let group = blocks.group();
    let lp = LinearProgram::new(p.clone(), vec![Rational::zero(); n])?;
    if !check_invariance_permutations(&lp, group.generators()) {
        return Err(Error::NotASymmetry("the block group does not leave the system invariant".into()));
    }
    let sizes = blocks.sizes();
    let k = sizes.len();

    // x = Σ_j (s_j / n_j) 1_{B_j} parametrises 𝓘 by block sums.
    let mut sum_basis: Matrix = vec![vec![Rational::zero(); n]; k];
    for (j, b) in blocks.blocks().iter().enumerate() {
        for &i in b {
            sum_basis[j][i] = Rational::new(1.into(), BigInt::from(b.len()));
        }
    }
    let invariant_slice = p.restrict_affine(&vec![Rational::zero(); n], &sum_basis)?;

    if group.is_trivial() {
        let identity: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
        let fiber = FiberOrbit {
            sums: Vec::new(),
            anchor: Vec::new(),
            orbit_size: BigUint::one(),
            origin: vec![BigInt::zero(); n],
            basis: identity,
            polytope: Some(p.clone()),
        };
        return Ok(SliceDecomposition { invariant_slice, blocks: blocks.clone(), fiber_orbits: vec![fiber] });
    }

    let mut fiber_orbits = Vec::new();
    if solve_lp(p, &vec![Rational::zero(); n])?.is_infeasible() {
        return Ok(SliceDecomposition { invariant_slice, blocks: blocks.clone(), fiber_orbits });
    }
    // Integer points of the projection onto block sums, i.e. of the
    // projection of P, enumerated through its own counter.
    let mut ranges = Vec::with_capacity(k);
    for b in blocks.blocks() {
        let mut c = vec![Rational::zero(); n];
        for &i in b {
            c[i] = Rational::one();
        }
        match bounds_of(p, &c)? {
            (Some(lo), Some(hi)) => ranges.push((ceil_int(&lo), floor_int(&hi))),
            _ => return Err(Error::Unbounded),
        }
    }
    let basis = fiber_basis(blocks);
    let mut s: Vec<BigInt> = ranges.iter().map(|(l, _)| l.clone()).collect();
    if ranges.iter().any(|(l, h)| l > h) {
        return Ok(SliceDecomposition { invariant_slice, blocks: blocks.clone(), fiber_orbits });
    }
    loop {
        let origin = blocks.canonical_core_point(&s).point;
        let (nonempty, polytope) = if basis.is_empty() {
            (p.contains(&as_rational(&origin)), None)
        } else {
            let f = restrict(p, &origin, &basis)?;
            (!solve_lp(&f, &vec![Rational::zero(); f.dim()])?.is_infeasible(), Some(f))
        };
        if nonempty {
            fiber_orbits.push(FiberOrbit {
                sums: s.clone(),
                anchor: blocks.fiber_barycenter(&s),
                orbit_size: BigUint::one(),
                origin,
                basis: basis.clone(),
                polytope,
            });
        }
        let mut j = k;
        loop {
            if j == 0 {
                return Ok(SliceDecomposition { invariant_slice, blocks: blocks.clone(), fiber_orbits });
            }
            j -= 1;
            if s[j] < ranges[j].1 {
                s[j] += 1;
                break;
            }
            s[j] = ranges[j].0.clone();
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Size of the orbit of `x` under the block group: `Π n_j! / Π m!` over the
/// multiplicities `m` of equal entries in each block.
fn orbit_size(blocks: &BlockStructure, x: &[i128]) -> BigUint {
    let mut size = BigUint::one();
    for b in blocks.blocks() {
        size *= factorial(b.len());
        let mut run = 1;
        for w in b.windows(2) {
            if x[w[0]] == x[w[1]] {
                run += 1;
            } else {
                size /= factorial(run);
                run = 1;
            }
        }
        size /= factorial(run);
    }
    size
}

/// Integer points of one fiber counted by block-sorted representatives.
fn count_fiber(blocks: &BlockStructure, fiber: &FiberOrbit) -> Result<BigUint> {
    let Some(f) = &fiber.polytope else {
        return Ok(BigUint::one());
    };
    // x_{b_k} ≥ x_{b_{k+1}} is t_k-contribution ≥ 0 along the fiber basis.
    let n = blocks.degree();
    let m = fiber.basis.len();
    let origin = as_rational(&fiber.origin);
    let basis: Matrix = fiber.basis.iter().map(|b| as_rational(b)).collect();
    let to_x = |t: &[Rational]| -> Vec<Rational> {
        let mut x = origin.clone();
        for (tk, b) in t.iter().zip(&basis) {
            for i in 0..n {
                x[i] += tk * &b[i];
            }
        }
        x
    };
    let mut rows = Vec::new();
    for b in blocks.blocks() {
        for w in b.windows(2) {
            // −(x_{w0} − x_{w1}) ≤ 0 expressed in t.
            let a: Vec<Rational> = (0..m).map(|k| -(&basis[k][w[0]] - &basis[k][w[1]])).collect();
            let rhs = &origin[w[0]] - &origin[w[1]];
            rows.push((a, rhs));
        }
    }
    let sorted = f.with_rows(rows);
    let counter = LatticeCounter::new(&sorted)?;
    let mut total = BigUint::zero();
    let mut failure = None;
    counter.for_each_point(1, |t| {
        let tr: Vec<Rational> = t.iter().map(|&v| Rational::from_integer(v.into())).collect();
        let x = to_x(&tr);
        match x.iter().map(|v| v.to_integer().try_into().ok()).collect::<Option<Vec<i128>>>() {
            Some(xi) => {
                total += orbit_size(blocks, &xi);
                true
            }
            None => {
                failure = Some(Error::Overflow);
                false
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Number of integer points of `P` through its slice decomposition.
pub fn count_with_symmetry(p: &HPolyhedron, blocks: &BlockStructure) -> Result<BigUint> {
    let dec = slice_decomposition(p, blocks)?;
    if dec.fiber_orbits.len() == 1 && dec.fiber_orbits[0].sums.is_empty() {
        return count_lattice_points(p);
    }
    let parts: Vec<BigUint> = dec
        .fiber_orbits
        .par_iter()
        .map(|f| count_fiber(blocks, f).map(|c| c * &f.orbit_size))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, rat_vec, ratio};

    #[test]
    fn square_fibers_along_diagonal() {
        let sq = HPolyhedron::cube(2, rat(0), rat(1));
        let blocks = BlockStructure::from_sizes(&[2]);
        let dec = slice_decomposition(&sq, &blocks).unwrap();
        let anchors: Vec<Vec<Rational>> = dec.fiber_orbits.iter().map(|f| f.anchor.clone()).collect();
        assert_eq!(
            anchors,
            vec![vec![rat(0), rat(0)], vec![ratio(1, 2), ratio(1, 2)], vec![rat(1), rat(1)]]
        );
        let middle = dec.fiber_orbits[1].polytope.as_ref().unwrap();
        assert_eq!(count_lattice_points(middle).unwrap(), BigUint::from(2u32));
        assert_eq!(count_with_symmetry(&sq, &blocks).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn cube_and_simplex() {
        let cube = HPolyhedron::cube(3, rat(-1), rat(1));
        let s3 = BlockStructure::from_sizes(&[3]);
        assert_eq!(count_with_symmetry(&cube, &s3).unwrap(), BigUint::from(27u32));
        let simplex = HPolyhedron::cube(3, rat(0), rat(3)).with_rows([(rat_vec(&[1, 1, 1]), rat(3))]);
        assert_eq!(count_with_symmetry(&simplex, &s3).unwrap(), count_lattice_points(&simplex).unwrap());
        let dec = slice_decomposition(&simplex, &s3).unwrap();
        assert_eq!(dec.fiber_orbits.len(), 4);
    }

    #[test]
    fn trivial_group_keeps_polytope() {
        let sq = HPolyhedron::cube(2, rat(0), rat(2));
        let blocks = BlockStructure::from_sizes(&[1, 1]);
        let dec = slice_decomposition(&sq, &blocks).unwrap();
        assert_eq!(dec.fiber_orbits.len(), 1);
        assert_eq!(dec.fiber_orbits[0].polytope.as_ref(), Some(&sq));
        assert_eq!(count_with_symmetry(&sq, &blocks).unwrap(), BigUint::from(9u32));
    }
}
