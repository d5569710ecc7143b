//! The two representations of a polyhedron and their incidence structure.

use std::fmt;

use num_traits::{Signed, Zero};

use super::linalg::{self, dot, independent_rows, sub_vec, Matrix};
use super::lp::{self, LpOutcome};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `{x ∈ Rⁿ : A x ≤ b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    a: Matrix,
    b: Vec<Rational>,
    dim: usize,
}

impl HPolyhedron {
    pub fn new(a: Matrix, b: Vec<Rational>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
        }
        if let Some(row) = a.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
        }
        Ok(Self { a, b, dim })
    }

    /// Builds from `(aᵢ, bᵢ)` pairs.
    pub fn from_rows(rows: Vec<(Vec<Rational>, Rational)>, dim: usize) -> Result<Self> {
        let (a, b) = rows.into_iter().unzip();
        Self::new(a, b, dim)
    }

    /// The box `lo ≤ xᵢ ≤ hi` in `dim` coordinates.
    pub fn cube(dim: usize, lo: Rational, hi: Rational) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut up = vec![Rational::zero(); dim];
            up[i] = Rational::from_integer(1.into());
            let down: Vec<Rational> = up.iter().map(|v| -v).collect();
            rows.push((up, hi.clone()));
            rows.push((down, -lo.clone()));
        }
        Self::from_rows(rows, dim).expect("well-formed box")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn row(&self, i: usize) -> (&[Rational], &Rational) {
        (&self.a[i], &self.b[i])
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[Rational], &Rational)> {
        self.a.iter().map(Vec::as_slice).zip(self.b.iter())
    }

    /// Index of a row `0·x ≤ bᵢ` with `bᵢ < 0`, which makes the system empty.
    pub fn contradictory_row(&self) -> Option<usize> {
        self.rows()
            .position(|(a, b)| a.iter().all(Zero::is_zero) && b.is_negative())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows().all(|(a, b)| dot(a, x) <= *b)
    }

    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        &self.b[i] - dot(&self.a[i], x)
    }

    /// `λ P`, i.e. the right-hand side scaled by `λ`.
    pub fn dilate(&self, factor: &Rational) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.iter().map(|v| v * factor).collect(),
            dim: self.dim,
        }
    }

    pub fn with_rows(&self, extra: impl IntoIterator<Item = (Vec<Rational>, Rational)>) -> Self {
        let mut out = self.clone();
        for (a, b) in extra {
            debug_assert_eq!(a.len(), self.dim);
            out.a.push(a);
            out.b.push(b);
        }
        out
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        Self {
            a: keep.iter().map(|&i| self.a[i].clone()).collect(),
            b: keep.iter().map(|&i| self.b[i].clone()).collect(),
            dim: self.dim,
        }
    }

    /// The polyhedron `{y : A (origin + M y) ≤ b}` for a point `origin` and a
    /// column basis `basis` (given as a list of vectors).
    pub fn restrict_affine(&self, origin: &[Rational], basis: &[Vec<Rational>]) -> Result<Self> {
        let rows = self
            .rows()
            .map(|(a, b)| {
                let coeffs = basis.iter().map(|v| dot(a, v)).collect();
                (coeffs, b - dot(a, origin))
            })
            .collect();
        Self::from_rows(rows, basis.len().max(1))
    }
}

/// Convex hull of `vertices` plus the cone of `rays`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolyhedron {
    vertices: Vec<Vec<Rational>>,
    rays: Vec<Vec<Rational>>,
    dim: usize,
}

impl VPolyhedron {
    pub fn new(vertices: Vec<Vec<Rational>>, rays: Vec<Vec<Rational>>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for v in vertices.iter().chain(&rays) {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(i));
            }
        }
        if let Some(i) = rays.iter().position(|r| r.iter().all(Zero::is_zero)) {
            return Err(Error::ZeroRay(i));
        }
        Ok(Self { vertices, rays, dim })
    }

    pub fn polytope(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        Self::new(vertices, Vec::new(), dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn barycenter(&self) -> Vec<Rational> {
        let k = Rational::from_integer(self.vertices.len().into());
        let mut sum = vec![Rational::zero(); self.dim];
        for v in &self.vertices {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
        }
        sum.into_iter().map(|s| s / &k).collect()
    }
}

/// A face written as the sorted set of input indices it is incident to.
///
/// Indices are 0-based in the library; the textual form is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FaceIndexSet(Vec<usize>);

impl FaceIndexSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn checked(indices: impl IntoIterator<Item = usize>, degree: usize) -> Result<Self> {
        let set = Self::new(indices);
        if let Some(&index) = set.0.last().filter(|&&i| i >= degree) {
            return Err(Error::IndexOutOfRange { index, degree });
        }
        Ok(set)
    }

    pub fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &FaceIndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn intersection(&self, other: &FaceIndexSet) -> FaceIndexSet {
        Self(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for FaceIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

pub fn solve_lp(p: &HPolyhedron, c: &[Rational]) -> Result<LpOutcome> {
    if c.len() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: c.len() });
    }
    Ok(lp::maximize(p.a(), p.b(), c))
}

/// `incidence[i][j]` is true when generator `j` (vertices first, then rays)
/// lies on inequality `i` with equality.
pub fn incidence(p: &HPolyhedron, v: &VPolyhedron) -> Result<Vec<Vec<bool>>> {
    if p.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: v.dim() });
    }
    Ok(p.rows()
        .map(|(a, b)| {
            v.vertices()
                .iter()
                .map(|x| dot(a, x) == *b)
                .chain(v.rays().iter().map(|r| dot(a, r).is_zero()))
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub dimension: usize,
    pub origin: Vec<Rational>,
    /// Linearly independent difference vectors `xᵢ − x₀`.
    pub basis: Vec<Vec<Rational>>,
    /// Vertex indices forming an affine basis (origin vertex first).
    pub affine_basis: Vec<usize>,
}

pub fn affine_hull(v: &VPolyhedron) -> Result<AffineHull> {
    let Some(origin) = v.vertices().first() else {
        return Err(Error::Empty);
    };
    let diffs: Vec<Vec<Rational>> = v.vertices()[1..]
        .iter()
        .map(|x| sub_vec(x, origin))
        .chain(v.rays().iter().cloned())
        .collect();
    let chosen = independent_rows(&diffs);
    let nverts = v.vertices().len();
    let mut affine_basis = vec![0];
    affine_basis.extend(chosen.iter().filter(|&&i| i + 1 < nverts).map(|&i| i + 1));
    Ok(AffineHull {
        dimension: chosen.len(),
        origin: origin.clone(),
        basis: chosen.iter().map(|&i| diffs[i].clone()).collect(),
        affine_basis,
    })
}

/// Result of redundancy removal. Indices refer to rows of the input system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irredundant {
    pub polyhedron: HPolyhedron,
    pub kept: Vec<usize>,
    /// Kept rows that hold with equality on the whole polyhedron.
    pub implicit_equalities: Vec<usize>,
}

/// Drops every row implied by the remaining ones, one exact LP per row.
pub fn remove_redundancy(p: &HPolyhedron) -> Result<Irredundant> {
    let zero = vec![Rational::zero(); p.dim()];
    if lp::maximize(p.a(), p.b(), &zero).is_infeasible() {
        return Err(Error::Empty);
    }
    let mut active: Vec<bool> = vec![true; p.num_rows()];
    for i in 0..p.num_rows() {
        let (ai, bi) = p.row(i);
        if ai.iter().all(Zero::is_zero) {
            active[i] = false;
            continue;
        }
        let others: Vec<usize> = (0..p.num_rows()).filter(|&j| j != i && active[j]).collect();
        let sub = p.select_rows(&others);
        let redundant = match lp::maximize(sub.a(), sub.b(), ai) {
            LpOutcome::Optimal(sol) => sol.value <= *bi,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => unreachable!("subsystem of a feasible system"),
        };
        if redundant {
            active[i] = false;
        }
    }
    let kept: Vec<usize> = (0..p.num_rows()).filter(|&i| active[i]).collect();
    let polyhedron = p.select_rows(&kept);
    let implicit_equalities = kept
        .iter()
        .copied()
        .filter(|&i| {
            let (ai, bi) = p.row(i);
            let neg: Vec<Rational> = ai.iter().map(|v| -v).collect();
            match lp::maximize(polyhedron.a(), polyhedron.b(), &neg) {
                LpOutcome::Optimal(sol) => -sol.value == *bi,
                _ => false,
            }
        })
        .collect();
    Ok(Irredundant { polyhedron, kept, implicit_equalities })
}

/// Exact `[min, max]` of `c·x` over `P`; `None` marks an unbounded side.
pub fn bounds_of(p: &HPolyhedron, c: &[Rational]) -> Result<(Option<Rational>, Option<Rational>)> {
    let upper = match solve_lp(p, c)? {
        LpOutcome::Optimal(sol) => Some(sol.value),
        LpOutcome::Unbounded => None,
        LpOutcome::Infeasible => return Err(Error::Empty),
    };
    let neg: Vec<Rational> = c.iter().map(|v| -v).collect();
    let lower = match solve_lp(p, &neg)? {
        LpOutcome::Optimal(sol) => Some(-sol.value),
        LpOutcome::Unbounded => None,
        LpOutcome::Infeasible => return Err(Error::Empty),
    };
    Ok((lower, upper))
}

/// Dimension of `P` via its implicit equalities: `n − rank(equality rows)`.
pub fn dimension(p: &HPolyhedron) -> Result<usize> {
    let irr = remove_redundancy(p)?;
    let eq_rows: Matrix = irr
        .implicit_equalities
        .iter()
        .map(|&i| p.a()[i].clone())
        .collect();
    Ok(p.dim() - linalg::rank(&eq_rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::{rat, rat_vec};

    fn square() -> HPolyhedron {
        HPolyhedron::cube(2, rat(-1), rat(1))
    }

    fn square_vertices() -> VPolyhedron {
        VPolyhedron::polytope(vec![
            rat_vec(&[1, 1]),
            rat_vec(&[1, -1]),
            rat_vec(&[-1, 1]),
            rat_vec(&[-1, -1]),
        ])
        .unwrap()
    }

    #[test]
    fn lp_examples() {
        let sol = solve_lp(&square(), &rat_vec(&[1, 1])).unwrap();
        let sol = sol.optimal().unwrap();
        assert_eq!(sol.value, rat(2));
        assert_eq!(sol.point, rat_vec(&[1, 1]));

        let half_line = HPolyhedron::new(vec![rat_vec(&[-1])], rat_vec(&[0]), 1).unwrap();
        assert!(solve_lp(&half_line, &rat_vec(&[1])).unwrap().is_unbounded());

        let empty =
            HPolyhedron::new(vec![rat_vec(&[1]), rat_vec(&[-1])], rat_vec(&[0, -1]), 1).unwrap();
        assert!(solve_lp(&empty, &rat_vec(&[1])).unwrap().is_infeasible());
        assert!(solve_lp(&empty, &rat_vec(&[1, 2])).is_err());
    }

    #[test]
    fn square_incidence() {
        let inc = incidence(&square(), &square_vertices()).unwrap();
        assert_eq!(inc.len(), 4);
        for j in 0..4 {
            assert_eq!(inc.iter().filter(|row| row[j]).count(), 2);
        }
    }

    #[test]
    fn simplex_incidence() {
        // x ≥ 0, Σx ≤ 1 in R³
        let n = 3;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut a = vec![rat(0); n];
            a[i] = rat(-1);
            rows.push((a, rat(0)));
        }
        rows.push((vec![rat(1); n], rat(1)));
        let p = HPolyhedron::from_rows(rows, n).unwrap();
        let mut verts = vec![vec![rat(0); n]];
        for i in 0..n {
            let mut e = vec![rat(0); n];
            e[i] = rat(1);
            verts.push(e);
        }
        let v = VPolyhedron::polytope(verts).unwrap();
        let inc = incidence(&p, &v).unwrap();
        for j in 0..=n {
            assert_eq!(inc.iter().filter(|row| row[j]).count(), n);
        }
    }

    #[test]
    fn affine_hull_dimensions() {
        let point = VPolyhedron::polytope(vec![rat_vec(&[1, 2, 3])]).unwrap();
        assert_eq!(affine_hull(&point).unwrap().dimension, 0);
        let line = VPolyhedron::polytope(vec![
            rat_vec(&[0, 0, 0]),
            rat_vec(&[1, 1, 1]),
            rat_vec(&[2, 2, 2]),
        ])
        .unwrap();
        let hull = affine_hull(&line).unwrap();
        assert_eq!(hull.dimension, 1);
        assert_eq!(hull.affine_basis, vec![0, 1]);
    }

    #[test]
    fn vpolyhedron_invariants() {
        let dup = VPolyhedron::polytope(vec![rat_vec(&[1]), rat_vec(&[1])]);
        assert_eq!(dup, Err(Error::DuplicateVertex(1)));
        let zero_ray = VPolyhedron::new(vec![rat_vec(&[0])], vec![rat_vec(&[0])], 1);
        assert_eq!(zero_ray, Err(Error::ZeroRay(0)));
    }

    #[test]
    fn redundancy_examples() {
        let p = HPolyhedron::new(vec![rat_vec(&[1]), rat_vec(&[1])], rat_vec(&[1, 2]), 1).unwrap();
        let irr = remove_redundancy(&p).unwrap();
        assert_eq!(irr.kept, vec![0]);

        let cube = HPolyhedron::cube(3, rat(-1), rat(1));
        let irr = remove_redundancy(&cube).unwrap();
        assert_eq!(irr.kept, (0..6).collect::<Vec<_>>());
        assert!(irr.implicit_equalities.is_empty());

        let dup = cube.with_rows([(rat_vec(&[1, 0, 0]), rat(1))]);
        let irr = remove_redundancy(&dup).unwrap();
        assert_eq!(irr.kept.len(), 6);

        let empty =
            HPolyhedron::new(vec![rat_vec(&[1]), rat_vec(&[-1])], rat_vec(&[0, -1]), 1).unwrap();
        assert_eq!(remove_redundancy(&empty), Err(Error::Empty));
    }

    #[test]
    fn implicit_equalities_are_recorded() {
        // x + y ≤ 1, -x - y ≤ -1, 0 ≤ x ≤ 1
        let p = HPolyhedron::new(
            vec![rat_vec(&[1, 1]), rat_vec(&[-1, -1]), rat_vec(&[-1, 0]), rat_vec(&[1, 0])],
            rat_vec(&[1, -1, 0, 1]),
            2,
        )
        .unwrap();
        let irr = remove_redundancy(&p).unwrap();
        assert_eq!(irr.implicit_equalities, vec![0, 1]);
        assert_eq!(dimension(&p).unwrap(), 1);
    }

    #[test]
    fn face_index_set_display_is_one_based() {
        let f = FaceIndexSet::new([4, 0, 2, 2]);
        assert_eq!(f.as_slice(), &[0, 2, 4]);
        assert_eq!(f.to_string(), "{1 3 5}");
        assert!(FaceIndexSet::checked([5], 5).is_err());
    }
}
