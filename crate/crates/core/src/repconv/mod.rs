//! Representation conversion, plain and up to symmetry.
//!
//! Both directions reduce to one problem: the facets of a full-dimensional
//! cone generated by integer vectors, up to a group permuting the generators.
//! For a polytope given by vertices the generators are `(1, x)`; for an
//! inequality system `Ax ≤ b` they are the rows `(b, −a)`, and the facets of
//! their cone are the vertices of the polytope.

mod cone;
pub mod dd;
pub mod decomp;
pub mod graph;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::permgrp::{orbit_of_set_with_budget, PermutationGroup};
use crate::polycore::rational::{primitive_integer, to_rationals};
use crate::polycore::{remove_redundancy, FaceIndexSet, HPolyhedron, Rational, VPolyhedron};
use crate::symdetect::{normalized_rows, realize};

pub use dd::{cone_facets, extreme_rays, Ray};
pub use decomp::{LevelPolicy, Method, OrbitEntry, OrbitLedger};
pub use graph::{adjacency_graph, AdjacencyGraph, Distance};

fn homogenize(v: &VPolyhedron) -> Vec<Vec<Rational>> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::zero();
    v.vertices()
        .iter()
        .map(|x| std::iter::once(one.clone()).chain(x.iter().cloned()).collect())
        .chain(
            v.rays()
                .iter()
                .map(|r| std::iter::once(zero.clone()).chain(r.iter().cloned()).collect()),
        )
        .collect()
}

/// Inequalities `a·x ≤ b` of a full-dimensional polyhedron given by vertices
/// and rays, in the order of their vertex-incidence sets.
pub fn convert_dd_v(v: &VPolyhedron) -> Result<HPolyhedron> {
    if v.vertices().is_empty() {
        return Err(Error::Empty);
    }
    let gens: Vec<Vec<BigInt>> = homogenize(v).iter().map(|g| primitive_integer(g)).collect();
    let facets = cone_facets(&gens).map_err(|e| match e {
        Error::NotFullDimensional { dim, .. } => Error::NotFullDimensional { dim: dim - 1, ambient: v.dim() },
        other => other,
    })?;
    let rows = facets
        .into_iter()
        .filter(|f| f.vector[1..].iter().any(|c| !c.is_zero()))
        .map(|f| inequality_from_normal(&f.vector))
        .collect();
    HPolyhedron::from_rows(rows, v.dim())
}

/// Vertices and extreme rays of `{x : Ax ≤ b}`, in the order of their
/// row-incidence sets. The polyhedron must not contain a line.
pub fn convert_dd(p: &HPolyhedron) -> Result<VPolyhedron> {
    let n = p.dim();
    let mut constraints = rows_as_integers(p);
    let mut far = vec![BigInt::zero(); n + 1];
    far[0] = BigInt::from(1);
    constraints.push(far);
    let rays = extreme_rays(&constraints)?;
    let mut vertices = Vec::new();
    let mut directions = Vec::new();
    for r in rays {
        if r.vector[0].is_positive() {
            vertices.push(vertex_from_normal(&r.vector));
        } else {
            directions.push(to_rationals(&r.vector[1..]));
        }
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    VPolyhedron::new(vertices, directions, n)
}

fn rows_as_integers(p: &HPolyhedron) -> Vec<Vec<BigInt>> {
    normalized_rows(p).iter().map(|r| primitive_integer(r)).collect()
}

fn inequality_from_normal(y: &[BigInt]) -> (Vec<Rational>, Rational) {
    let a = y[1..].iter().map(|c| Rational::from_integer(-c.clone())).collect();
    (a, Rational::from_integer(y[0].clone()))
}

fn vertex_from_normal(y: &[BigInt]) -> Vec<Rational> {
    y[1..]
        .iter()
        .map(|c| Rational::new(c.clone(), y[0].clone()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Inequalities from vertices; the group acts on vertex indices.
    Facets,
    /// Vertices from inequalities; the group acts on row indices.
    Vertices,
}

/// A conversion task up to symmetry.
#[derive(Clone, Debug)]
pub struct SymProblem {
    direction: Direction,
    dim: usize,
    gens: Vec<Vec<BigInt>>,
    group: PermutationGroup,
}

impl SymProblem {
    /// Facets of the convex hull of `v`, with `group` permuting its vertices.
    pub fn facets_of(v: &VPolyhedron, group: PermutationGroup) -> Result<Self> {
        let homogeneous = homogenize(v);
        check_group(&homogeneous, &group)?;
        let gens: Vec<Vec<BigInt>> = homogeneous.iter().map(|g| primitive_integer(g)).collect();
        let rank = crate::polycore::rank(&homogeneous);
        if rank < v.dim() + 1 {
            return Err(Error::NotFullDimensional {
                dim: rank.saturating_sub(1),
                ambient: v.dim(),
            });
        }
        Ok(SymProblem {
            direction: Direction::Facets,
            dim: v.dim(),
            gens,
            group,
        })
    }

    /// Vertices of the bounded, full-dimensional, irredundant system `p`, with
    /// `group` permuting its rows.
    pub fn vertices_of(p: &HPolyhedron, group: PermutationGroup) -> Result<Self> {
        let irr = remove_redundancy(p)?;
        if irr.kept.len() != p.num_rows() || !irr.implicit_equalities.is_empty() {
            let dropped = (0..p.num_rows()).filter(|i| !irr.kept.contains(i)).collect();
            return Err(Error::Redundant(dropped));
        }
        let rows = normalized_rows(p);
        check_group(&rows, &group)?;
        let gens: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_integer(r)).collect();
        let rank = crate::polycore::rank(&rows);
        if rank < p.dim() + 1 {
            return Err(Error::Unbounded);
        }
        Ok(SymProblem {
            direction: Direction::Vertices,
            dim: p.dim(),
            gens,
            group,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    /// The same task under another group (for example a subgroup).
    pub fn with_group(&self, group: PermutationGroup) -> Result<Self> {
        let vectors: Vec<Vec<Rational>> = self.gens.iter().map(|g| to_rationals(g)).collect();
        check_group(&vectors, &group)?;
        Ok(SymProblem { group, ..self.clone() })
    }

    /// Inequality `a·x ≤ b` for a facet normal (direction `Facets`).
    pub fn inequality(&self, normal: &[BigInt]) -> (Vec<Rational>, Rational) {
        inequality_from_normal(normal)
    }

    /// Vertex for a facet normal (direction `Vertices`).
    pub fn vertex(&self, normal: &[BigInt]) -> Result<Vec<Rational>> {
        if !normal[0].is_positive() {
            return Err(Error::Unbounded);
        }
        Ok(vertex_from_normal(normal))
    }

    /// Incidence sets of every facet in every orbit.
    pub fn expand(&self, ledger: &OrbitLedger, budget: usize) -> Result<BTreeSet<FaceIndexSet>> {
        let mut out = BTreeSet::new();
        for e in ledger.entries() {
            let orbit = orbit_of_set_with_budget(&self.group, &e.key, budget);
            let elements = orbit.elements.ok_or(Error::BudgetExceeded(budget))?;
            out.extend(elements);
        }
        Ok(out)
    }

    /// Incidence sets of all facets by plain double description.
    pub fn plain_facets(&self) -> Result<BTreeSet<FaceIndexSet>> {
        Ok(cone_facets(&self.gens)?.into_iter().map(|f| f.zero_set).collect())
    }
}

fn check_group(vectors: &[Vec<Rational>], group: &PermutationGroup) -> Result<()> {
    if group.degree() != vectors.len() {
        return Err(Error::DegreeMismatch {
            expected: vectors.len(),
            found: group.degree(),
        });
    }
    for g in group.generators() {
        if realize(vectors, g, false).is_none() {
            return Err(Error::NotASymmetry(g.to_string()));
        }
    }
    Ok(())
}

/// Facet orbits with the method chosen by `policy` at the top level.
pub fn decompose(problem: &SymProblem, policy: LevelPolicy) -> Result<OrbitLedger> {
    decomp::facet_orbits(&problem.gens, &problem.group, policy, 0)
}

/// Adjacency decomposition at the top level; `policy` governs subproblems.
pub fn adjacency_decomposition(problem: &SymProblem, policy: LevelPolicy) -> Result<OrbitLedger> {
    decomp::adjacency(&problem.gens, &problem.group, policy, 0)
}

/// Incidence decomposition at the top level; `policy` governs subproblems.
pub fn incidence_decomposition(problem: &SymProblem, policy: LevelPolicy) -> Result<OrbitLedger> {
    decomp::incidence(&problem.gens, &problem.group, policy, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, rat_vec};
    use crate::symdetect::{affine_symmetry_group, restricted_symmetries_h};
    use num_bigint::BigUint;

    #[test]
    fn cube_h_to_v() {
        let v = convert_dd(&HPolyhedron::cube(3, rat(-1), rat(1))).unwrap();
        assert_eq!(v.vertices().len(), 8);
        assert!(v.rays().is_empty());
    }

    #[test]
    fn simplex_and_octahedron_v_to_h() {
        let simplex = VPolyhedron::polytope(vec![
            rat_vec(&[0, 0, 0]),
            rat_vec(&[1, 0, 0]),
            rat_vec(&[0, 1, 0]),
            rat_vec(&[0, 0, 1]),
        ])
        .unwrap();
        assert_eq!(convert_dd_v(&simplex).unwrap().num_rows(), 4);
        let mut verts = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut x = vec![rat(0); 3];
                x[i] = rat(s);
                verts.push(x);
            }
        }
        let oct = VPolyhedron::polytope(verts.clone()).unwrap();
        let h = convert_dd_v(&oct).unwrap();
        assert_eq!(h.num_rows(), 8);
        for (a, b) in h.rows() {
            let tight = verts.iter().filter(|x| crate::polycore::linalg::dot(a, x) == *b).count();
            assert_eq!(tight, 3);
            assert!(verts.iter().all(|x| crate::polycore::linalg::dot(a, x) <= *b));
        }
    }

    #[test]
    fn unbounded_conversion_reports_rays() {
        // x ≥ 0, y ≥ 0, x + y ≥ 1
        let p = HPolyhedron::from_rows(
            vec![(rat_vec(&[-1, 0]), rat(0)), (rat_vec(&[0, -1]), rat(0)), (rat_vec(&[-1, -1]), rat(-1))],
            2,
        )
        .unwrap();
        let v = convert_dd(&p).unwrap();
        assert_eq!(v.vertices().len(), 2);
        assert_eq!(v.rays().len(), 2);
    }

    #[test]
    fn empty_polyhedron_flagged() {
        let p = HPolyhedron::from_rows(vec![(rat_vec(&[1]), rat(0)), (rat_vec(&[-1]), rat(-1))], 1).unwrap();
        assert_eq!(convert_dd(&p), Err(Error::Empty));
    }

    #[test]
    fn cube_facets_single_orbit_by_both_methods() {
        let h = HPolyhedron::cube(3, rat(-1), rat(1));
        let v = convert_dd(&h).unwrap();
        let group = affine_symmetry_group(&v).unwrap().group;
        let problem = SymProblem::facets_of(&v, group).unwrap();
        for policy in [LevelPolicy::new(0, 1), LevelPolicy::new(1, 1), LevelPolicy::new(0, 3), LevelPolicy::new(2, 3)] {
            let ledger = decompose(&problem, policy).unwrap();
            assert_eq!(ledger.len(), 1, "{policy:?}");
            assert_eq!(ledger.total(), BigUint::from(6u32));
            assert_eq!(problem.expand(&ledger, 1000).unwrap(), problem.plain_facets().unwrap());
        }
        let rows_group = restricted_symmetries_h(&h).unwrap().group;
        let dual = SymProblem::vertices_of(&h, rows_group).unwrap();
        let ledger = decompose(&dual, LevelPolicy::default()).unwrap();
        assert_eq!(ledger.len(), 1);
        assert_eq!(ledger.total(), BigUint::from(8u32));
        let x = dual.vertex(&ledger.entries()[0].normal).unwrap();
        assert!(x.iter().all(|c| *c == rat(1) || *c == rat(-1)));
    }

    #[test]
    fn trivial_group_matches_plain() {
        let h = HPolyhedron::cube(3, rat(-1), rat(1));
        let v = convert_dd(&h).unwrap();
        let problem = SymProblem::facets_of(&v, PermutationGroup::trivial(8)).unwrap();
        let adm = adjacency_decomposition(&problem, LevelPolicy::default()).unwrap();
        assert_eq!(adm.len(), 6);
        let graph = adjacency_graph(&problem, &adm).unwrap();
        for u in 0..6 {
            assert_eq!(graph.neighbours(u).len(), 4);
        }
        let idm = incidence_decomposition(&problem, LevelPolicy::default()).unwrap();
        assert_eq!(idm.sorted_keys(), adm.sorted_keys());
    }

    #[test]
    fn non_symmetry_rejected() {
        let v = VPolyhedron::polytope(vec![rat_vec(&[0, 0]), rat_vec(&[2, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])]).unwrap();
        let swap = crate::permgrp::Permutation::parse_cycles("(1 2)", 4).unwrap();
        let g = PermutationGroup::new(4, vec![swap]).unwrap();
        assert!(matches!(SymProblem::facets_of(&v, g), Err(Error::NotASymmetry(_))));
    }
}
