use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::permgrp::PermutationGroup;
use crate::polycore::linalg;
use crate::polycore::{affine_hull, Rational, VPolyhedron};
use crate::repconv::convert_dd_v;

use super::subspace::vector_orbit;

/// A direct product of symmetric groups acting on disjoint coordinate blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    degree: usize,
    blocks: Vec<Vec<usize>>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigUint {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl BlockStructure {
    /// Coordinates not covered by `blocks` become singleton blocks.
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        let mut out = Vec::new();
        for mut b in blocks {
            b.sort_unstable();
            for &i in &b {
                if i >= degree {
                    return Err(Error::IndexOutOfRange { index: i, degree });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::NotBlockGroup(format!("coordinate {} in two blocks", i + 1)));
                }
            }
            if !b.is_empty() {
                out.push(b);
            }
        }
        out.extend((0..degree).filter(|&i| !seen[i]).map(|i| vec![i]));
        out.sort();
        Ok(BlockStructure { degree, blocks: out })
    }

    /// Contiguous blocks of the given sizes.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (start..start + s).collect();
                start += s;
                b
            })
            .collect();
        BlockStructure { degree: start, blocks }
    }

    /// Recognises `group` as the full symmetric group on each of its orbits.
    pub fn from_group(group: &PermutationGroup) -> Result<Self> {
        let orbits = group.orbits();
        let full: BigUint = orbits.iter().map(|o| factorial(o.len())).product();
        if group.order() != full {
            return Err(Error::NotBlockGroup(format!(
                "order {} but the orbit product of symmetric groups has order {}",
                group.order(),
                full
            )));
        }
        Ok(BlockStructure { degree: group.degree(), blocks: orbits })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn group(&self) -> PermutationGroup {
        PermutationGroup::symmetric_blocks(self.degree, &self.blocks)
    }

    pub fn block_sums<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Clone + Zero + for<'a> std::ops::Add<&'a T, Output = T>,
    {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(T::zero(), |acc, &i| acc + &x[i]))
            .collect()
    }

    /// Barycenter of every integer fiber with the given block sums:
    /// `Σ_j (s_j / n_j) 1_{B_j}`.
    pub fn fiber_barycenter(&self, sums: &[BigInt]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.degree];
        for (b, s) in self.blocks.iter().zip(sums) {
            let q = Rational::new(s.clone(), BigInt::from(b.len()));
            for &i in b {
                x[i] = q.clone();
            }
        }
        x
    }

    /// The balanced integer point of the fiber: inside each block the
    /// entries differ by at most one, larger entries first.
    pub fn canonical_core_point(&self, sums: &[BigInt]) -> CorePoint {
        let mut point = vec![BigInt::zero(); self.degree];
        let mut orbit_size = BigUint::one();
        for (b, s) in self.blocks.iter().zip(sums) {
            let (q, r) = s.div_mod_floor(&BigInt::from(b.len()));
            let r = r.to_usize().expect("remainder below block size");
            for (k, &i) in b.iter().enumerate() {
                point[i] = if k < r { &q + 1 } else { q.clone() };
            }
            orbit_size *= binomial(b.len(), r);
        }
        CorePoint { point, orbit_size }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorePoint {
    pub point: Vec<BigInt>,
    pub orbit_size: BigUint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreStatus {
    Core,
    NotCore,
    Unknown,
}

/// Whether the orbit polytope of `z` contains no integer points other than
/// the orbit itself. `budget` caps both the orbit and the bounding box size;
/// beyond it the answer is `Unknown`.
pub fn is_core_point(group: &PermutationGroup, z: &[BigInt], budget: usize) -> CoreStatus {
    let Ok(orbit) = vector_orbit(group, z, budget) else {
        return CoreStatus::Unknown;
    };
    if orbit.len() == 1 {
        return CoreStatus::Core;
    }
    let n = z.len();
    let lo: Vec<BigInt> = (0..n).map(|j| orbit.iter().map(|x| &x[j]).min().unwrap().clone()).collect();
    let hi: Vec<BigInt> = (0..n).map(|j| orbit.iter().map(|x| &x[j]).max().unwrap().clone()).collect();
    let mut box_size = BigUint::one();
    for (l, h) in lo.iter().zip(&hi) {
        box_size *= (h - l + 1u32).to_biguint().unwrap();
    }
    if box_size > BigUint::from(budget) {
        return CoreStatus::Unknown;
    }

    let rational = |x: &[BigInt]| -> Vec<Rational> { x.iter().map(|v| Rational::from_integer(v.clone())).collect() };
    let points: Vec<Vec<Rational>> = orbit.iter().map(|x| rational(x)).collect();
    let hull = affine_hull(&VPolyhedron::polytope(points.clone()).expect("orbit is non-empty"))
        .expect("orbit is non-empty");
    let d = hull.dimension;
    let basis_t = linalg::transpose(&hull.basis, n);
    let coords = |x: &[Rational]| linalg::solve(&basis_t, &linalg::sub_vec(x, &hull.origin), d);
    let local: Vec<Vec<Rational>> = points.iter().map(|x| coords(x).expect("orbit spans the hull")).collect();
    let Ok(facets) = VPolyhedron::polytope(local).and_then(|v| convert_dd_v(&v)) else {
        return CoreStatus::Unknown;
    };

    let members: std::collections::HashSet<&Vec<BigInt>> = orbit.iter().collect();
    let mut y = lo.clone();
    loop {
        if !members.contains(&y) {
            if let Some(t) = coords(&rational(&y)) {
                if facets.contains(&t) {
                    return CoreStatus::NotCore;
                }
            }
        }
        // Odometer step over the box.
        let mut k = 0;
        while k < n && y[k] == hi[k] {
            y[k] = lo[k].clone();
            k += 1;
        }
        if k == n {
            return CoreStatus::Core;
        }
        y[k] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::Permutation;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn balanced_points() {
        let blocks = BlockStructure::from_sizes(&[3, 2]);
        let c = blocks.canonical_core_point(&ints(&[7, -3]));
        assert_eq!(c.point, ints(&[3, 2, 2, -1, -2]));
        assert_eq!(c.orbit_size, BigUint::from(6u32));
        assert_eq!(blocks.block_sums(&c.point), ints(&[7, -3]));
    }

    #[test]
    fn group_recognition() {
        let g = PermutationGroup::symmetric_blocks(5, &[vec![0, 2], vec![1, 3, 4]]);
        let b = BlockStructure::from_group(&g).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 2], vec![1, 3, 4]]);
        let cyc = PermutationGroup::new(3, vec![Permutation::parse_cycles("(1 2 3)", 3).unwrap()]).unwrap();
        assert!(matches!(BlockStructure::from_group(&cyc), Err(Error::NotBlockGroup(_))));
    }

    #[test]
    fn core_point_classification() {
        let s3 = PermutationGroup::symmetric(3);
        assert_eq!(is_core_point(&s3, &ints(&[1, 0, 0]), 1000), CoreStatus::Core);
        assert_eq!(is_core_point(&s3, &ints(&[1, 1, 0]), 1000), CoreStatus::Core);
        // (1,1,1) lies between the permutations of (2,1,0).
        assert_eq!(is_core_point(&s3, &ints(&[2, 1, 0]), 1000), CoreStatus::NotCore);
        assert_eq!(is_core_point(&s3, &ints(&[2, 0, 0]), 1000), CoreStatus::NotCore);
        assert_eq!(is_core_point(&s3, &ints(&[40, 0, 0]), 100), CoreStatus::Unknown);
    }

    #[test]
    fn fiber_barycenter_is_block_average() {
        let blocks = BlockStructure::from_sizes(&[2, 1]);
        let q = blocks.fiber_barycenter(&ints(&[3, 5]));
        assert_eq!(q, vec![Rational::new(3.into(), 2.into()), Rational::new(3.into(), 2.into()), Rational::from_integer(5.into())]);
    }
}
