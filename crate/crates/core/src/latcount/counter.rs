//! Lattice-point enumeration in dilates `λP`.
//!
//! The system is projected once onto every coordinate prefix by
//! Fourier–Motzkin elimination, with redundant rows removed by LP after each
//! step. Projections of `λP` are `λ` times projections of `P`, so the same
//! rows serve every dilate. Enumeration then walks the coordinates in order,
//! each range read off the matching projection.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polycore::rational::primitive_integer;
use crate::polycore::{bounds_of, remove_redundancy, solve_lp, HPolyhedron, Rational};

type Row = (Vec<i128>, i128);

#[derive(Clone, Debug)]
pub struct LatticeCounter {
    dim: usize,
    empty: bool,
    /// `levels[k]`: rows over `x_0..=x_k` with a non-zero `x_k` coefficient.
    levels: Vec<Vec<Row>>,
    max_coef: i128,
    max_rhs: i128,
    max_abs: BigInt,
}

fn integer_rows(p: &HPolyhedron) -> BTreeSet<Vec<BigInt>> {
    p.rows()
        .filter(|(a, _)| a.iter().any(|v| !v.is_zero()))
        .map(|(a, b)| {
            let mut v = a.to_vec();
            v.push(b.clone());
            primitive_integer(&v)
        })
        .collect()
}

fn irredundant(rows: BTreeSet<Vec<BigInt>>, dim: usize) -> Result<BTreeSet<Vec<BigInt>>> {
    let p = HPolyhedron::from_rows(
        rows.iter()
            .map(|r| {
                (
                    r[..dim].iter().map(|v| Rational::from_integer(v.clone())).collect(),
                    Rational::from_integer(r[dim].clone()),
                )
            })
            .collect(),
        dim,
    )?;
    Ok(integer_rows(&remove_redundancy(&p)?.polyhedron))
}

/// Eliminates the last variable of rows over `dim` variables.
fn eliminate(rows: &BTreeSet<Vec<BigInt>>, dim: usize) -> BTreeSet<Vec<BigInt>> {
    let k = dim - 1;
    let mut out = BTreeSet::new();
    let drop_k = |v: &[BigInt]| -> Vec<BigInt> {
        v.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect()
    };
    let (pos, neg): (Vec<&Vec<BigInt>>, Vec<&Vec<BigInt>>) =
        rows.iter().filter(|r| !r[k].is_zero()).partition(|r| r[k].is_positive());
    for r in rows.iter().filter(|r| r[k].is_zero()) {
        out.insert(drop_k(r));
    }
    for p in &pos {
        for n in &neg {
            let combo: Vec<BigInt> = p.iter().zip(n.iter()).map(|(x, y)| x * -&n[k] + y * &p[k]).collect();
            let reduced = drop_k(&combo);
            if reduced[..dim - 1].iter().all(Zero::is_zero) {
                continue;
            }
            let rat: Vec<Rational> = reduced.iter().map(|v| Rational::from_integer(v.clone())).collect();
            out.insert(primitive_integer(&rat));
        }
    }
    out
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or(Error::Overflow)
}

impl LatticeCounter {
    pub fn new(p: &HPolyhedron) -> Result<Self> {
        let n = p.dim();
        if solve_lp(p, &vec![Rational::zero(); n])?.is_infeasible() {
            return Ok(LatticeCounter {
                dim: n,
                empty: true,
                levels: Vec::new(),
                max_coef: 0,
                max_rhs: 0,
                max_abs: BigInt::zero(),
            });
        }
        let mut max_abs = BigInt::zero();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::from_integer(1.into());
            match bounds_of(p, &e)? {
                (Some(lo), Some(hi)) => max_abs = max_abs.max(lo.abs().ceil().to_integer()).max(hi.abs().ceil().to_integer()),
                _ => return Err(Error::Unbounded),
            }
        }
        let mut current = irredundant(integer_rows(p), n)?;
        let mut by_level: Vec<BTreeSet<Vec<BigInt>>> = vec![BTreeSet::new(); n];
        for k in (0..n).rev() {
            by_level[k] = current.clone();
            if k > 0 {
                current = irredundant(eliminate(&current, k + 1), k)?;
            }
        }
        let mut levels = Vec::with_capacity(n);
        let (mut max_coef, mut max_rhs) = (0i128, 0i128);
        for (k, rows) in by_level.iter().enumerate() {
            let mut lv = Vec::new();
            for r in rows.iter().filter(|r| !r[k].is_zero()) {
                let a: Vec<i128> = r[..=k].iter().map(to_i128).collect::<Result<_>>()?;
                let b = to_i128(&r[k + 1])?;
                max_coef = a.iter().fold(max_coef, |m, v| m.max(v.abs()));
                max_rhs = max_rhs.max(b.abs());
                lv.push((a, b));
            }
            levels.push(lv);
        }
        Ok(LatticeCounter { dim: n, empty: false, levels, max_coef, max_rhs, max_abs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Every partial sum met while scanning `λP` must fit comfortably.
    fn check_range(&self, lambda: u64) -> Result<()> {
        let l = BigInt::from(lambda);
        let x: BigInt = &self.max_abs * &l + 1u32;
        let worst: BigInt = BigInt::from(self.dim + 1) * BigInt::from(self.max_coef) * x + BigInt::from(self.max_rhs) * l;
        if worst.bits() > 120 {
            return Err(Error::Overflow);
        }
        Ok(())
    }

    /// Inclusive range of `x_k` given the prefix, or `None` if empty.
    fn range(&self, k: usize, prefix: &[i128], lambda: i128) -> Option<(i128, i128)> {
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        for (a, b) in &self.levels[k] {
            let r = lambda * b - a[..k].iter().zip(prefix).map(|(c, x)| c * x).sum::<i128>();
            let ak = a[k];
            if ak > 0 {
                hi = hi.min(r.div_euclid(ak));
            } else {
                lo = lo.max(-(r.div_euclid(-ak)));
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn count_from(&self, prefix: &mut Vec<i128>, lambda: i128) -> u128 {
        let k = prefix.len();
        let Some((lo, hi)) = self.range(k, prefix, lambda) else {
            return 0;
        };
        if k + 1 == self.dim {
            return (hi - lo + 1) as u128;
        }
        let mut total = 0;
        for v in lo..=hi {
            prefix.push(v);
            total += self.count_from(prefix, lambda);
            prefix.pop();
        }
        total
    }

    /// Number of integer points of `λP`, `λ ≥ 0`.
    pub fn count(&self, lambda: u64) -> Result<BigUint> {
        if self.empty {
            return Ok(BigUint::zero());
        }
        if lambda == 0 || self.dim == 0 {
            return Ok(BigUint::from(1u32));
        }
        self.check_range(lambda)?;
        let l = lambda as i128;
        let Some((lo, hi)) = self.range(0, &[], l) else {
            return Ok(BigUint::zero());
        };
        if self.dim == 1 {
            return Ok(BigUint::from((hi - lo + 1) as u128));
        }
        let total: u128 = (lo..=hi)
            .into_par_iter()
            .map(|v| self.count_from(&mut vec![v], l))
            .sum();
        Ok(BigUint::from(total))
    }

    fn visit_from<F: FnMut(&[i128]) -> bool>(&self, prefix: &mut Vec<i128>, lambda: i128, f: &mut F) -> bool {
        let k = prefix.len();
        if k == self.dim {
            return f(prefix);
        }
        let Some((lo, hi)) = self.range(k, prefix, lambda) else {
            return true;
        };
        for v in lo..=hi {
            prefix.push(v);
            let go_on = self.visit_from(prefix, lambda, f);
            prefix.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Calls `f` on every integer point of `λP` in lexicographic order until
    /// it returns `false`.
    pub fn for_each_point<F: FnMut(&[i128]) -> bool>(&self, lambda: u64, mut f: F) -> Result<()> {
        if self.empty {
            return Ok(());
        }
        self.check_range(lambda.max(1))?;
        self.visit_from(&mut Vec::with_capacity(self.dim), lambda as i128, &mut f);
        Ok(())
    }
}

/// Exact number of integer points of a bounded polyhedron.
pub fn count_lattice_points(p: &HPolyhedron) -> Result<BigUint> {
    LatticeCounter::new(p)?.count(1)
}

/// Integer points of `P` in lexicographic order, at most `limit` of them.
pub fn lattice_points(p: &HPolyhedron, limit: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    LatticeCounter::new(p)?.for_each_point(1, |x| {
        if out.len() < limit {
            out.push(x.iter().map(|&v| BigInt::from(v)).collect());
        }
        out.len() < limit
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, rat_vec, ratio};

    #[test]
    fn small_counts() {
        let cube = HPolyhedron::cube(3, rat(-1), rat(1));
        assert_eq!(count_lattice_points(&cube).unwrap(), BigUint::from(27u32));
        let simplex = HPolyhedron::from_rows(
            vec![(rat_vec(&[-1, 0]), rat(0)), (rat_vec(&[0, -1]), rat(0)), (rat_vec(&[1, 1]), rat(1))],
            2,
        )
        .unwrap();
        assert_eq!(count_lattice_points(&simplex).unwrap(), BigUint::from(3u32));
        let empty = HPolyhedron::cube(2, rat(0), rat(1)).with_rows([(rat_vec(&[1, 1]), rat(-1))]);
        assert_eq!(count_lattice_points(&empty).unwrap(), BigUint::zero());
        let thin = HPolyhedron::cube(2, ratio(1, 3), ratio(2, 3));
        assert_eq!(count_lattice_points(&thin).unwrap(), BigUint::zero());
    }

    #[test]
    fn dilates_of_simplex() {
        let simplex = HPolyhedron::from_rows(
            vec![(rat_vec(&[-1, 0]), rat(0)), (rat_vec(&[0, -1]), rat(0)), (rat_vec(&[1, 1]), rat(1))],
            2,
        )
        .unwrap();
        let c = LatticeCounter::new(&simplex).unwrap();
        for l in 0..8u64 {
            assert_eq!(c.count(l).unwrap(), BigUint::from((l + 1) * (l + 2) / 2));
        }
    }

    #[test]
    fn unbounded_rejected() {
        let half = HPolyhedron::from_rows(vec![(rat_vec(&[-1, 0]), rat(0))], 2).unwrap();
        assert!(matches!(count_lattice_points(&half), Err(Error::Unbounded)));
    }

    #[test]
    fn listing_in_order() {
        let seg = HPolyhedron::cube(2, rat(0), rat(1)).with_rows([(rat_vec(&[1, 1]), rat(1))]);
        let pts = lattice_points(&seg, 10).unwrap();
        let want: Vec<Vec<BigInt>> = [[0, 0], [0, 1], [1, 0]]
            .iter()
            .map(|p| p.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(pts, want);
        assert_eq!(lattice_points(&seg, 2).unwrap().len(), 2);
    }
}
