//! Geometry on cones generated by integer vectors: facet normals, subcones of
//! a facet, vertex figures, seeds and ridge rotation.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::permgrp::{Permutation, PermutationGroup};
use crate::polycore::linalg;
use crate::polycore::lp::{maximize, LpOutcome};
use crate::polycore::rational::{primitive_integer, to_rationals};
use crate::polycore::{FaceIndexSet, Rational};

pub(crate) fn eval(y: &[BigInt], g: &[BigInt]) -> BigInt {
    linalg::int_dot(y, g)
}

pub(crate) fn incidence_of(gens: &[Vec<BigInt>], y: &[BigInt]) -> FaceIndexSet {
    FaceIndexSet::from_sorted_unchecked((0..gens.len()).filter(|&i| eval(y, &gens[i]).is_zero()).collect())
}

/// Inward normal of the facet with the given generator incidence.
pub(crate) fn facet_normal(gens: &[Vec<BigInt>], incidence: &FaceIndexSet) -> Vec<BigInt> {
    let d = gens[0].len();
    let rows: Vec<Vec<Rational>> = incidence.iter().map(|i| to_rationals(&gens[i])).collect();
    let null = linalg::nullspace(&rows, d);
    debug_assert_eq!(null.len(), 1, "incidence set spans a hyperplane");
    let mut y = primitive_integer(&null[0]);
    let outside = (0..gens.len()).find(|&i| !eval(&y, &gens[i]).is_zero());
    if let Some(i) = outside {
        if eval(&y, &gens[i]).is_negative() {
            y.iter_mut().for_each(|v| *v = -v.clone());
        }
    }
    y
}

/// Coordinates of `vectors` in their linear span, using the pivot columns of
/// their row echelon form (an injective projection on the span).
pub(crate) fn span_coordinates(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = vectors[0].len();
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| to_rationals(v)).collect();
    let pivots = linalg::rref(&rows, d).pivots;
    vectors
        .iter()
        .map(|v| pivots.iter().map(|&j| v[j].clone()).collect())
        .collect()
}

/// Images of all generators except `apex` in `R^D / span(apex)`, together with
/// their original indices.
pub(crate) fn vertex_figure(gens: &[Vec<BigInt>], apex: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let g = &gens[apex];
    let j = g.iter().position(|v| !v.is_zero()).expect("generators are non-zero");
    let others: Vec<usize> = (0..gens.len()).filter(|&i| i != apex).collect();
    let images = others
        .iter()
        .map(|&i| {
            let h = &gens[i];
            (0..h.len())
                .filter(|&c| c != j)
                .map(|c| &g[j] * &h[c] - &h[j] * &g[c])
                .collect()
        })
        .collect();
    (images, others)
}

/// The group restricted to an invariant index set, relabelled `0..indices.len()`.
pub(crate) fn restrict_group(group: &PermutationGroup, indices: &[usize]) -> PermutationGroup {
    let mut pos = vec![usize::MAX; group.degree()];
    for (a, &i) in indices.iter().enumerate() {
        pos[i] = a;
    }
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            Permutation::from_images(indices.iter().map(|&i| pos[g.apply(i)]).collect())
                .expect("group leaves the index set invariant")
        })
        .collect();
    PermutationGroup::new(indices.len(), gens).expect("restricted generators share the degree")
}

/// Normal of one facet: the lexicographic maximum over the slice
/// `{y : gᵢ·y ≥ 0, s·y = 1}` with `s` the sum of the generators.
pub(crate) fn seed_facet(gens: &[Vec<BigInt>]) -> Vec<BigInt> {
    let d = gens[0].len();
    let s: Vec<BigInt> = (0..d)
        .map(|c| gens.iter().fold(BigInt::zero(), |acc, g| acc + &g[c]))
        .collect();
    let s = to_rationals(&s);
    let mut a: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| to_rationals(g).into_iter().map(|v| -v).collect())
        .collect();
    let mut b: Vec<Rational> = vec![Rational::zero(); gens.len()];
    a.push(s.clone());
    b.push(Rational::from_integer(1.into()));
    a.push(s.iter().map(|v| -v.clone()).collect());
    b.push(Rational::from_integer((-1).into()));
    let mut point = Vec::new();
    for k in 0..d {
        let mut c = vec![Rational::zero(); d];
        c[k] = Rational::from_integer(1.into());
        let LpOutcome::Optimal(sol) = maximize(&a, &b, &c) else {
            panic!("slice of the dual cone is a non-empty polytope");
        };
        a.push(c.clone());
        b.push(sol.value.clone());
        a.push(c.iter().map(|v| -v.clone()).collect());
        b.push(-sol.value);
        point = sol.point;
    }
    primitive_integer(&point)
}

/// Rotates facet `(facet, y)` about its ridge `ridge ⊂ facet` onto the
/// neighbouring facet. Returns the neighbour's normal.
pub(crate) fn rotate(
    gens: &[Vec<BigInt>],
    facet: &FaceIndexSet,
    y: &[BigInt],
    ridge: &FaceIndexSet,
) -> Vec<BigInt> {
    let d = y.len();
    let rows: Vec<Vec<Rational>> = ridge.iter().map(|i| to_rationals(&gens[i])).collect();
    let null = linalg::nullspace(&rows, d);
    let probe = facet
        .iter()
        .find(|&i| !ridge.contains(i))
        .expect("ridge is a proper subset of the facet");
    let probe_vec = to_rationals(&gens[probe]);
    let mut z = null
        .into_iter()
        .find(|w| !linalg::dot(w, &probe_vec).is_zero())
        .expect("ridge normal space is not contained in the facet hyperplane");
    if linalg::dot(&z, &probe_vec).is_negative() {
        z.iter_mut().for_each(|v| *v = -v.clone());
    }
    let yr = to_rationals(y);
    let mut best: Option<Rational> = None;
    for (i, g) in gens.iter().enumerate() {
        if facet.contains(i) {
            continue;
        }
        let g = to_rationals(g);
        let t = -linalg::dot(&z, &g) / linalg::dot(&yr, &g);
        if best.as_ref().is_none_or(|b| t > *b) {
            best = Some(t);
        }
    }
    let t = best.expect("a full-dimensional cone has generators off every facet");
    let next: Vec<Rational> = z.iter().zip(&yr).map(|(zi, yi)| zi + &t * yi).collect();
    primitive_integer(&next)
}
