use num_traits::Signed;

use super::automorphism::graph_automorphisms;
use super::graph::{build_symmetry_graph, SymmetryGraph};
use crate::error::{Error, Result};
use crate::permgrp::{Permutation, PermutationGroup};
use crate::polycore::linalg::{self, Matrix};
use crate::polycore::rational::{primitive_integer, to_rationals};
use crate::polycore::{remove_redundancy, HPolyhedron, Rational, VPolyhedron};

/// `x ↦ linear·x + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: Matrix,
    pub translation: Vec<Rational>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: linalg::identity(n),
            translation: linalg::zeros(1, n).remove(0),
        }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        linalg::add_vec(&linalg::mat_vec(&self.linear, x), &self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: linalg::mat_mul(&self.linear, &other.linear),
            translation: self.apply(&other.translation),
        }
    }

    pub fn is_invertible(&self) -> bool {
        !num_traits::Zero::is_zero(&linalg::determinant(&self.linear))
    }
}

/// Solves for a map sending `points[i]` to `points[σ(i)]` for all `i`. The map
/// is fixed on the affine hull and is the identity on its orthogonal
/// complement. With `affine = false` only linear maps are considered.
pub fn realize(points: &[Vec<Rational>], sigma: &Permutation, affine: bool) -> Option<AffineMap> {
    let k = points.len();
    if k == 0 {
        return None;
    }
    let n = points[0].len();
    let origin = if affine { points[0].clone() } else { vec![Rational::from_integer(0.into()); n] };
    let image_origin = if affine { points[sigma.apply(0)].clone() } else { origin.clone() };
    let dirs: Matrix = points.iter().map(|p| linalg::sub_vec(p, &origin)).collect();
    let basis = linalg::independent_rows(&dirs);
    let complement = linalg::nullspace(&basis.iter().map(|&i| dirs[i].clone()).collect::<Vec<_>>(), n);
    let mut src: Matrix = basis.iter().map(|&i| dirs[i].clone()).collect();
    let mut dst: Matrix = basis
        .iter()
        .map(|&i| linalg::sub_vec(&points[sigma.apply(i)], &image_origin))
        .collect();
    src.extend(complement.iter().cloned());
    dst.extend(complement);
    // linear · srcᵀ = dstᵀ  ⇔  linear = dstᵀ · (srcᵀ)⁻¹
    let src_t_inv = linalg::inverse(&linalg::transpose(&src, n))?;
    let linear = linalg::mat_mul(&linalg::transpose(&dst, n), &src_t_inv);
    let translation = linalg::sub_vec(&image_origin, &linalg::mat_vec(&linear, &origin));
    let map = AffineMap { linear, translation };
    if !map.is_invertible() {
        return None;
    }
    (0..k)
        .all(|i| map.apply(&points[i]) == points[sigma.apply(i)])
        .then_some(map)
}

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub group: PermutationGroup,
    /// Each retained generator with the map realizing it.
    pub realizations: Vec<(Permutation, AffineMap)>,
    /// Graph automorphisms that no map realizes.
    pub discarded: usize,
}

fn realized_group(
    points: &[Vec<Rational>],
    graph: &SymmetryGraph,
    affine: bool,
) -> SymmetryGroup {
    let mut realizations = Vec::new();
    let mut discarded = 0;
    for sigma in graph_automorphisms(graph) {
        match realize(points, &sigma, affine) {
            Some(map) => realizations.push((sigma, map)),
            None => discarded += 1,
        }
    }
    let gens = realizations.iter().map(|(p, _)| p.clone()).collect();
    let group = PermutationGroup::new(points.len(), gens).expect("automorphisms share the degree");
    SymmetryGroup {
        group,
        realizations,
        discarded,
    }
}

/// Affine symmetry group of a polytope, acting on its vertex indices.
pub fn affine_symmetry_group(v: &VPolyhedron) -> Result<SymmetryGroup> {
    let graph = build_symmetry_graph(v)?;
    Ok(realized_group(v.vertices(), &graph, true))
}

/// Row vectors `(b, −a)` scaled to primitive integers.
pub fn normalized_rows(p: &HPolyhedron) -> Vec<Vec<Rational>> {
    p.rows()
        .map(|(a, b)| {
            let mut v = Vec::with_capacity(a.len() + 1);
            v.push(b.clone());
            v.extend(a.iter().map(|x| -x.clone()));
            to_rationals(&primitive_integer(&v))
        })
        .collect()
}

/// Symmetries acting on inequality indices: linear automorphisms of the
/// normalized homogenized rows. The system must be irredundant.
pub fn restricted_symmetries_h(p: &HPolyhedron) -> Result<SymmetryGroup> {
    let irr = remove_redundancy(p)?;
    if irr.kept.len() != p.num_rows() || !irr.implicit_equalities.is_empty() {
        let dropped = (0..p.num_rows()).filter(|i| !irr.kept.contains(i)).collect();
        return Err(Error::Redundant(dropped));
    }
    let rows = normalized_rows(p);
    if rows.iter().any(|r| r[1..].iter().all(|x| !x.is_positive() && !x.is_negative())) {
        return Err(Error::Redundant(Vec::new()));
    }
    let graph = SymmetryGraph::from_vectors(&rows, false);
    Ok(realized_group(&rows, &graph, false))
}
