use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polycore::linalg::{self, Matrix};
use crate::polycore::rational::{primitive_integer, to_rationals};
use crate::polycore::{affine_hull, HPolyhedron, Rational, VPolyhedron};
use crate::repconv::{convert_dd, convert_dd_v};

/// A basis of `L ∩ Zⁿ` for the rational subspace `L` spanned by `span`.
pub fn lattice_basis(span: &[Vec<Rational>], n: usize) -> Vec<Vec<BigInt>> {
    let normals: Vec<Vec<BigInt>> = linalg::nullspace(span, n).iter().map(|v| primitive_integer(v)).collect();
    // Column operations bring the normals to lower-triangular form; the
    // trailing columns of the accumulated unimodular matrix span the kernel.
    let mut m = normals;
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, a: usize, b: usize, f: &dyn Fn(&BigInt, &BigInt) -> (BigInt, BigInt)| {
        for row in m.iter_mut().chain(u.iter_mut()) {
            let (x, y) = f(&row[a], &row[b]);
            row[a] = x;
            row[b] = y;
        }
    };
    let mut pivot = 0;
    for r in 0..m.len() {
        for j in pivot + 1..n {
            if m[r][j].is_zero() {
                continue;
            }
            if m[r][pivot].is_zero() {
                col_op(&mut m, &mut u, pivot, j, &|x, y| (y.clone(), x.clone()));
                continue;
            }
            let e = m[r][pivot].extended_gcd(&m[r][j]);
            let (p, q) = (m[r][pivot].clone() / &e.gcd, m[r][j].clone() / &e.gcd);
            let (s, t) = (e.x, e.y);
            // [s −q; t p] has determinant s·p + t·q = 1.
            col_op(&mut m, &mut u, pivot, j, &|x, y| (&s * x + &t * y, -&q * x + &p * y));
        }
        if !m[r][pivot].is_zero() {
            pivot += 1;
        }
    }
    (pivot..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

enum Apex {
    Barycenter,
    Random(Box<ChaCha8Rng>),
}

impl Apex {
    fn pick(&mut self, points: &[&Vec<Rational>]) -> Vec<Rational> {
        let weights: Vec<Rational> = match self {
            Apex::Barycenter => vec![Rational::one(); points.len()],
            Apex::Random(rng) => (0..points.len())
                .map(|_| Rational::from_integer(rng.gen_range(1..=1000).into()))
                .collect(),
        };
        let total: Rational = weights.iter().sum();
        let d = points[0].len();
        (0..d)
            .map(|j| points.iter().zip(&weights).map(|(p, w)| &p[j] * w).sum::<Rational>() / &total)
            .collect()
    }
}

struct Fan<'a> {
    points: &'a [Vec<Rational>],
    /// `tight[i]`: vertices on facet `i`.
    tight: Vec<BTreeSet<usize>>,
    apex: Apex,
}

fn affine_rank(points: &[&Vec<Rational>]) -> usize {
    let diffs: Matrix = points[1..].iter().map(|p| linalg::sub_vec(p, points[0])).collect();
    linalg::rank(&diffs)
}

impl Fan<'_> {
    /// Simplices (as point lists) triangulating the face with vertex set
    /// `face` of dimension `dim`.
    fn triangulate(&mut self, face: &BTreeSet<usize>, dim: usize) -> Vec<Vec<Vec<Rational>>> {
        let pts: Vec<&Vec<Rational>> = face.iter().map(|&i| &self.points[i]).collect();
        if face.len() == dim + 1 {
            return vec![pts.into_iter().cloned().collect()];
        }
        let apex = self.apex.pick(&pts);
        let mut subfaces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for t in &self.tight {
            let g: BTreeSet<usize> = face.intersection(t).copied().collect();
            if g.len() < dim || g.len() == face.len() {
                continue;
            }
            let gp: Vec<&Vec<Rational>> = g.iter().map(|&i| &self.points[i]).collect();
            if affine_rank(&gp) == dim - 1 {
                subfaces.insert(g);
            }
        }
        let mut out = Vec::new();
        for g in subfaces {
            for mut s in self.triangulate(&g, dim - 1) {
                s.push(apex.clone());
                out.push(s);
            }
        }
        out
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Vertices of `P` in lattice coordinates of its affine hull.
fn local_vertices(p: &HPolyhedron) -> Result<Vec<Vec<Rational>>> {
    let v = convert_dd(p)?;
    if !v.is_bounded() {
        return Err(Error::Unbounded);
    }
    let hull = affine_hull(&v)?;
    let n = p.dim();
    let d = hull.dimension;
    if d == n {
        return Ok(v.vertices().to_vec());
    }
    let basis: Vec<Vec<Rational>> = lattice_basis(&hull.basis, n).iter().map(|b| to_rationals(b)).collect();
    let cols = linalg::transpose(&basis, n);
    v.vertices()
        .iter()
        .map(|x| linalg::solve(&cols, &linalg::sub_vec(x, &hull.origin), d).ok_or_else(|| Error::Verification("vertex outside its affine hull".into())))
        .collect()
}

fn fan_volume(p: &HPolyhedron, apex: Apex) -> Result<Rational> {
    let points = local_vertices(p)?;
    let d = points[0].len();
    if d == 0 || points.len() == 1 {
        return Ok(Rational::one());
    }
    let facets = convert_dd_v(&VPolyhedron::polytope(points.clone())?)?;
    let tight = facets
        .rows()
        .map(|(a, b)| (0..points.len()).filter(|&i| linalg::dot(a, &points[i]) == *b).collect())
        .collect();
    let mut fan = Fan { points: &points, tight, apex };
    let all: BTreeSet<usize> = (0..points.len()).collect();
    let mut total = Rational::zero();
    for s in fan.triangulate(&all, d) {
        let m: Matrix = s[1..].iter().map(|x| linalg::sub_vec(x, &s[0])).collect();
        total += linalg::determinant(&m).abs();
    }
    Ok(total / Rational::from_integer(factorial(d)))
}

/// Exact volume, relative to the integer lattice of the affine hull when `P`
/// is not full-dimensional. Faces are fanned from their barycenters.
pub fn volume(p: &HPolyhedron) -> Result<Rational> {
    fan_volume(p, Apex::Barycenter)
}

/// Same measure, fanning every face from a random interior point.
pub fn volume_randomized(p: &HPolyhedron, seed: u64) -> Result<Rational> {
    fan_volume(p, Apex::Random(Box::new(ChaCha8Rng::seed_from_u64(seed))))
}
