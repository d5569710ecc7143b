use std::collections::{HashSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::permgrp::{Permutation, PermutationGroup};
use crate::polycore::linalg::{self, Matrix};
use crate::polycore::rational::primitive_integer;
use crate::polycore::{HPolyhedron, LpOutcome, LpSolution, Rational};

/// `max c·x` over `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub polyhedron: HPolyhedron,
    pub objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(polyhedron: HPolyhedron, objective: Vec<Rational>) -> Result<Self> {
        if objective.len() != polyhedron.dim() {
            return Err(Error::DimensionMismatch {
                expected: polyhedron.dim(),
                found: objective.len(),
            });
        }
        Ok(LinearProgram { polyhedron, objective })
    }
}

/// The fixed space of a linear group with its orthogonal projector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubspace {
    /// Basis vectors (rows).
    pub basis: Matrix,
    pub projector: Matrix,
}

impl InvariantSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.projector.len()
    }

    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.projector, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.project(x) == x
    }
}

/// Intersection of the kernels of `g − id` over the generators, `n` the
/// ambient dimension.
pub fn invariant_subspace(generators: &[Matrix], n: usize) -> InvariantSubspace {
    let mut rows: Matrix = Vec::new();
    for g in generators {
        for (i, row) in g.iter().enumerate() {
            let mut r = row.clone();
            r[i] -= Rational::from_integer(1.into());
            rows.push(r);
        }
    }
    let basis = linalg::nullspace(&rows, n);
    let projector = if basis.is_empty() {
        linalg::zeros(n, n)
    } else {
        // P = Bᵀ (B Bᵀ)⁻¹ B with basis vectors as the rows of B.
        let bbt = linalg::mat_mul(&basis, &linalg::transpose(&basis, n));
        let inv = linalg::inverse(&bbt).expect("basis vectors are independent");
        let bt = linalg::transpose(&basis, n);
        linalg::mat_mul(&linalg::mat_mul(&bt, &inv), &basis)
    };
    InvariantSubspace { basis, projector }
}

pub fn invariant_subspace_of_permutations(generators: &[Permutation], n: usize) -> InvariantSubspace {
    let mats: Vec<Matrix> = generators.iter().map(Permutation::to_matrix).collect();
    invariant_subspace(&mats, n)
}

fn normalized_row(a: &[Rational], b: &Rational) -> Vec<num_bigint::BigInt> {
    let mut v = a.to_vec();
    v.push(b.clone());
    primitive_integer(&v)
}

/// True iff every generator `M` maps the inequality system onto itself (rows
/// compared after positive scaling) and fixes `c`.
pub fn check_invariance(lp: &LinearProgram, generators: &[Matrix]) -> bool {
    let p = &lp.polyhedron;
    let rows: HashSet<Vec<num_bigint::BigInt>> = p.rows().map(|(a, b)| normalized_row(a, b)).collect();
    for m in generators {
        let Some(inv) = linalg::inverse(m) else {
            return false;
        };
        if linalg::mat_vec(m, &lp.objective) != lp.objective {
            return false;
        }
        // a·x ≤ b becomes (a M⁻¹)·(M x) ≤ b.
        let inv_t = linalg::transpose(&inv, p.dim());
        for (a, b) in p.rows() {
            if !rows.contains(&normalized_row(&linalg::mat_vec(&inv_t, a), b)) {
                return false;
            }
        }
    }
    true
}

pub fn check_invariance_permutations(lp: &LinearProgram, generators: &[Permutation]) -> bool {
    let mats: Vec<Matrix> = generators.iter().map(Permutation::to_matrix).collect();
    check_invariance(lp, &mats)
}

/// Solves the LP restricted to the invariant subspace and maps the optimum
/// back to the original coordinates.
pub fn solve_lp_reduced(lp: &LinearProgram, sub: &InvariantSubspace) -> LpOutcome {
    let p = &lp.polyhedron;
    let n = p.dim();
    if sub.dim() == 0 {
        let origin = vec![Rational::zero(); n];
        return if p.contains(&origin) {
            LpOutcome::Optimal(LpSolution {
                value: Rational::zero(),
                point: origin,
            })
        } else {
            LpOutcome::Infeasible
        };
    }
    let bt = linalg::transpose(&sub.basis, n);
    let a = linalg::mat_mul(p.a(), &bt);
    let c = linalg::mat_vec(&sub.basis, &lp.objective);
    match crate::polycore::lp::maximize(&a, p.b(), &c) {
        LpOutcome::Optimal(sol) => {
            let point = linalg::mat_vec(&bt, &sol.point);
            LpOutcome::Optimal(LpSolution {
                value: linalg::dot(&lp.objective, &point),
                point,
            })
        }
        other => other,
    }
}

/// Barycenter of the orbit of `z` under coordinate permutations.
pub fn orbit_barycenter(group: &PermutationGroup, z: &[Rational], budget: usize) -> Result<Vec<Rational>> {
    let orbit = vector_orbit(group, z, budget)?;
    let k = Rational::from_integer(orbit.len().into());
    let n = z.len();
    Ok((0..n)
        .map(|j| orbit.iter().fold(Rational::zero(), |acc, x| acc + &x[j]) / &k)
        .collect())
}

/// Orbit of a vector under coordinate permutations, in discovery order.
pub fn vector_orbit<T: Clone + Eq + std::hash::Hash>(
    group: &PermutationGroup,
    z: &[T],
    budget: usize,
) -> Result<Vec<Vec<T>>> {
    let mut seen: HashSet<Vec<T>> = HashSet::from([z.to_vec()]);
    let mut out = vec![z.to_vec()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in group.generators() {
            let y = g.act_on_vector(&out[i]);
            if seen.insert(y.clone()) {
                if out.len() == budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push_back(out.len());
                out.push(y);
            }
        }
    }
    Ok(out)
}
