//! Double description for pointed cones `{y : cᵢ·y ≥ 0}` over the integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polycore::linalg;
use crate::polycore::rational::{primitive, primitive_integer, to_rationals};
use crate::polycore::FaceIndexSet;

/// An extreme ray together with the constraints it satisfies with equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub vector: Vec<BigInt>,
    pub zero_set: FaceIndexSet,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(m: usize) -> Self {
        Bits(vec![0; m.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn contains(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct WorkRay {
    v: Vec<BigInt>,
    zeros: Bits,
}

fn eval(c: &[BigInt], v: &[BigInt]) -> BigInt {
    linalg::int_dot(c, v)
}

/// Extreme rays of `{y ∈ R^D : cᵢ·y ≥ 0}`. The constraints must span `R^D`
/// (so the cone is pointed). Rays are returned sorted by zero set.
pub fn extreme_rays(constraints: &[Vec<BigInt>]) -> Result<Vec<Ray>> {
    let m = constraints.len();
    let d = constraints.first().map_or(0, Vec::len);
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let rational: Vec<_> = constraints.iter().map(|c| to_rationals(c)).collect();
    let initial = linalg::independent_rows(&rational);
    if initial.len() < d {
        return Err(Error::NotFullDimensional { dim: initial.len(), ambient: d });
    }
    let basis: Vec<_> = initial.iter().map(|&i| rational[i].clone()).collect();
    let inv = linalg::inverse(&basis).expect("independent rows form an invertible matrix");
    let mut rays: Vec<WorkRay> = (0..d)
        .map(|j| {
            let col: Vec<_> = inv.iter().map(|row| row[j].clone()).collect();
            let v = primitive_integer(&col);
            let mut zeros = Bits::new(m);
            for (k, &i) in initial.iter().enumerate() {
                if k != j {
                    zeros.set(i);
                }
            }
            WorkRay { v, zeros }
        })
        .collect();
    let mut done = vec![false; m];
    for &i in &initial {
        done[i] = true;
    }
    for i in 0..m {
        if done[i] {
            continue;
        }
        done[i] = true;
        let c = &constraints[i];
        let values: Vec<BigInt> = rays.iter().map(|r| eval(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.set(i);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !r.zeros.contains(&common));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| &values[p] * xn - &values[n] * xp)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                created.push(WorkRay { v: primitive(v), zeros });
            }
        }
        let mut next: Vec<WorkRay> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.set(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }
    let mut out: Vec<Ray> = rays
        .into_iter()
        .map(|r| {
            let zero_set = FaceIndexSet::from_sorted_unchecked(
                (0..m).filter(|&i| r.zeros.0[i / 64] >> (i % 64) & 1 == 1).collect(),
            );
            Ray { vector: r.v, zero_set }
        })
        .collect();
    out.sort_by(|a, b| a.zero_set.cmp(&b.zero_set));
    Ok(out)
}

/// Facets of the cone generated by `gens` (spanning `R^D`): their inward
/// normals and generator incidence.
pub fn cone_facets(gens: &[Vec<BigInt>]) -> Result<Vec<Ray>> {
    extreme_rays(gens)
}
