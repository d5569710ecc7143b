use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polycore::linalg::{self, Matrix};
use crate::polycore::{Rational, VPolyhedron};

/// Edge-coloured complete graph on the vertices of a polytope. The colour of
/// edge `{i, j}` is the value `x̂ᵢᵀ Q⁻¹ x̂ⱼ`; diagonal values colour vertices.
#[derive(Clone, Debug)]
pub struct SymmetryGraph {
    gram: Matrix,
    /// Distinct gram values in ascending order.
    palette: Vec<Rational>,
    /// `colors[i][j]` indexes `palette`.
    colors: Vec<Vec<u32>>,
}

impl SymmetryGraph {
    /// Graph of a vector configuration. With `center` the configuration is
    /// first translated so its barycenter is the origin (affine symmetries);
    /// without it the form detects linear symmetries.
    pub fn from_vectors(vectors: &[Vec<Rational>], center: bool) -> Self {
        let k = vectors.len();
        let mut pts: Matrix = vectors.to_vec();
        if center && k > 0 {
            let n = pts[0].len();
            let kk = Rational::from_integer(k.into());
            let bary: Vec<Rational> = (0..n)
                .map(|j| pts.iter().fold(Rational::zero(), |acc, p| acc + &p[j]) / &kk)
                .collect();
            for p in pts.iter_mut() {
                *p = linalg::sub_vec(p, &bary);
            }
        }
        let gram = gram_matrix(&pts);
        Self::from_gram(gram)
    }

    pub fn from_gram(gram: Matrix) -> Self {
        let mut palette: Vec<Rational> = gram.iter().flatten().cloned().collect();
        palette.sort();
        palette.dedup();
        let colors = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| palette.binary_search(v).expect("value is in the palette") as u32)
                    .collect()
            })
            .collect();
        SymmetryGraph { gram, palette, colors }
    }

    pub fn num_vertices(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn palette(&self) -> &[Rational] {
        &self.palette
    }

    pub fn colors(&self) -> &[Vec<u32>] {
        &self.colors
    }

    /// Number of distinct values on the diagonal and off it.
    pub fn color_counts(&self) -> (usize, usize) {
        let k = self.gram.len();
        let mut diag: Vec<u32> = (0..k).map(|i| self.colors[i][i]).collect();
        let mut off: Vec<u32> = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.colors[i][j])
            .collect();
        diag.sort_unstable();
        diag.dedup();
        off.sort_unstable();
        off.dedup();
        (diag.len(), off.len())
    }
}

/// Gram matrix of the configuration, expressed in a basis of its linear span
/// so that `Q` is invertible there.
fn gram_matrix(points: &[Vec<Rational>]) -> Matrix {
    let k = points.len();
    let basis_idx = linalg::independent_rows(points);
    let r = basis_idx.len();
    if r == 0 {
        return vec![vec![Rational::zero(); k]; k];
    }
    let n = points[0].len();
    let basis: Matrix = basis_idx.iter().map(|&i| points[i].clone()).collect();
    let bt = linalg::transpose(&basis, n);
    let coords: Matrix = points
        .iter()
        .map(|p| linalg::solve(&bt, p, r).expect("point lies in the span of the basis"))
        .collect();
    let mut q = linalg::zeros(r, r);
    for c in &coords {
        for a in 0..r {
            if c[a].is_zero() {
                continue;
            }
            for b in 0..r {
                q[a][b] += &c[a] * &c[b];
            }
        }
    }
    let q_inv = linalg::inverse(&q).expect("Q is positive definite on the span");
    let transformed: Matrix = coords.iter().map(|c| linalg::mat_vec(&q_inv, c)).collect();
    let mut gram = linalg::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = linalg::dot(&coords[i], &transformed[j]);
            gram[j][i] = v.clone();
            gram[i][j] = v;
        }
    }
    gram
}

/// Symmetry graph of a bounded polytope's vertex set.
pub fn build_symmetry_graph(v: &VPolyhedron) -> Result<SymmetryGraph> {
    if !v.is_bounded() {
        return Err(Error::Unbounded);
    }
    if v.vertices().is_empty() {
        return Err(Error::Empty);
    }
    Ok(SymmetryGraph::from_vectors(v.vertices(), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat_vec;

    #[test]
    fn square_has_three_values() {
        let v = VPolyhedron::polytope(vec![
            rat_vec(&[1, 1]),
            rat_vec(&[1, -1]),
            rat_vec(&[-1, 1]),
            rat_vec(&[-1, -1]),
        ])
        .unwrap();
        let g = build_symmetry_graph(&v).unwrap();
        assert_eq!(g.palette().len(), 3);
        // Q = 4 I, so the diagonal is 2/4.
        assert_eq!(g.gram()[0][0], crate::polycore::ratio(1, 2));
        assert_eq!(g.gram()[0][3], crate::polycore::ratio(-1, 2));
    }

    #[test]
    fn single_point_graph() {
        let v = VPolyhedron::polytope(vec![rat_vec(&[3, 4])]).unwrap();
        let g = build_symmetry_graph(&v).unwrap();
        assert_eq!(g.num_vertices(), 1);
    }

    #[test]
    fn simplex_has_two_colors() {
        let v = VPolyhedron::polytope(vec![
            rat_vec(&[0, 0, 0]),
            rat_vec(&[1, 0, 0]),
            rat_vec(&[0, 1, 0]),
            rat_vec(&[0, 0, 1]),
        ])
        .unwrap();
        let g = build_symmetry_graph(&v).unwrap();
        assert_eq!(g.color_counts(), (1, 1));
        assert_eq!(g.palette().len(), 2);
    }
}
