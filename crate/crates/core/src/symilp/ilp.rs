//! Integer feasibility and optimisation for polyhedra invariant under a
//! product of symmetric groups.
//!
//! Every integer point `z` of such a polyhedron has the balanced point of its
//! fiber (same block sums) in the convex hull of its orbit, so a fiber holds
//! an integer point iff its balanced point lies in `P`. The search therefore
//! runs over integer block-sum vectors only.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polycore::rational::{ceil_int, floor_int};
use crate::polycore::{bounds_of, HPolyhedron, Rational};

use super::blocks::BlockStructure;
use super::subspace::{check_invariance_permutations, invariant_subspace_of_permutations, solve_lp_reduced, LinearProgram};

pub const DEFAULT_FIBER_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpOptions {
    /// Inclusive bounds on each block sum, intersected with the LP bounds.
    /// Required when a block sum is unbounded over `P`.
    pub sum_bounds: Option<Vec<(BigInt, BigInt)>>,
    pub fiber_limit: usize,
}

impl Default for IlpOptions {
    fn default() -> Self {
        IlpOptions {
            sum_bounds: None,
            fiber_limit: DEFAULT_FIBER_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IlpOutcome {
    Feasible { point: Vec<BigInt>, fibers_tested: usize },
    Infeasible { fibers_tested: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IlpOptimum {
    Optimal {
        point: Vec<BigInt>,
        value: Rational,
        fibers_tested: usize,
    },
    Infeasible {
        fibers_tested: usize,
    },
}

struct Fiber {
    sums: Vec<BigInt>,
    distance: Rational,
    utility: Rational,
}

fn to_rational(x: &[BigInt]) -> Vec<Rational> {
    x.iter().map(|v| Rational::from_integer(v.clone())).collect()
}

/// Candidate fibers with their distance to the relaxation and utility.
/// `None` when `P` is empty.
fn fibers(
    p: &HPolyhedron,
    blocks: &BlockStructure,
    objective: &[Rational],
    opts: &IlpOptions,
) -> Result<Option<Vec<Fiber>>> {
    let n = p.dim();
    if blocks.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, found: blocks.degree() });
    }
    let group = blocks.group();
    let lp = LinearProgram::new(p.clone(), objective.to_vec())?;
    if !check_invariance_permutations(&lp, group.generators()) {
        return Err(Error::NotASymmetry(
            "the block group does not leave the system and objective invariant".into(),
        ));
    }
    let sub = invariant_subspace_of_permutations(group.generators(), n);
    let zero = LinearProgram::new(p.clone(), vec![Rational::zero(); n])?;
    let Some(center) = solve_lp_reduced(&zero, &sub).optimal().map(|s| s.point.clone()) else {
        return Ok(None);
    };
    let center_sums = blocks.block_sums(&center);

    let mut ranges = Vec::new();
    for (j, b) in blocks.blocks().iter().enumerate() {
        let mut c = vec![Rational::zero(); n];
        for &i in b {
            c[i] = Rational::from_integer(1.into());
        }
        let (lo, hi) = bounds_of(p, &c)?;
        let mut lo = lo.map(|v| ceil_int(&v));
        let mut hi = hi.map(|v| floor_int(&v));
        if let Some(user) = &opts.sum_bounds {
            let (ul, uh) = user.get(j).ok_or(Error::DimensionMismatch {
                expected: blocks.blocks().len(),
                found: user.len(),
            })?;
            lo = Some(lo.map_or(ul.clone(), |v| v.max(ul.clone())));
            hi = Some(hi.map_or(uh.clone(), |v| v.min(uh.clone())));
        }
        match (lo, hi) {
            (Some(l), Some(h)) => {
                if l > h {
                    return Ok(Some(Vec::new()));
                }
                ranges.push((l, h));
            }
            _ => return Err(Error::UnboundedProjection),
        }
    }
    let total = ranges
        .iter()
        .try_fold(1usize, |acc, (l, h)| (h - l + 1u32).to_usize().and_then(|s| acc.checked_mul(s)));
    match total {
        Some(t) if t <= opts.fiber_limit => {}
        _ => return Err(Error::BudgetExceeded(opts.fiber_limit)),
    }

    // Block objective coefficients; invariance makes c constant on blocks.
    let block_c: Vec<Rational> = blocks.blocks().iter().map(|b| objective[b[0]].clone()).collect();
    let sizes = blocks.sizes();
    let mut out = Vec::new();
    let mut s: Vec<BigInt> = ranges.iter().map(|(l, _)| l.clone()).collect();
    loop {
        let mut distance = Rational::zero();
        let mut utility = Rational::zero();
        for j in 0..s.len() {
            let delta = Rational::from_integer(s[j].clone()) - &center_sums[j];
            distance += &delta * &delta / Rational::from_integer(sizes[j].into());
            utility += &block_c[j] * Rational::from_integer(s[j].clone());
        }
        out.push(Fiber { sums: s.clone(), distance, utility });
        let mut k = s.len();
        loop {
            if k == 0 {
                return Ok(Some(out));
            }
            k -= 1;
            if s[k] < ranges[k].1 {
                s[k] += 1;
                break;
            }
            s[k] = ranges[k].0.clone();
        }
    }
}

/// Index of the first fiber whose balanced point lies in `P`, searched in
/// parallel but resolved in list order.
fn first_hit(p: &HPolyhedron, blocks: &BlockStructure, list: &[Fiber]) -> Option<(usize, Vec<BigInt>)> {
    list.par_iter().enumerate().find_map_first(|(k, f)| {
        let z = blocks.canonical_core_point(&f.sums).point;
        p.contains(&to_rational(&z)).then_some((k, z))
    })
}

pub fn symmetric_ilp_feasible(p: &HPolyhedron, blocks: &BlockStructure, opts: &IlpOptions) -> Result<IlpOutcome> {
    let zero = vec![Rational::zero(); p.dim()];
    let Some(mut list) = fibers(p, blocks, &zero, opts)? else {
        return Ok(IlpOutcome::Infeasible { fibers_tested: 0 });
    };
    list.sort_by(|a, b| a.distance.cmp(&b.distance).then_with(|| a.sums.cmp(&b.sums)));
    Ok(match first_hit(p, blocks, &list) {
        Some((k, point)) => IlpOutcome::Feasible { point, fibers_tested: k + 1 },
        None => IlpOutcome::Infeasible { fibers_tested: list.len() },
    })
}

/// `max c·z` over integer points of `P`; `c` must be constant on blocks.
/// Fibers are visited by decreasing objective value, so the first feasible
/// one is optimal.
pub fn symmetric_ilp_optimize(
    p: &HPolyhedron,
    blocks: &BlockStructure,
    objective: &[Rational],
    opts: &IlpOptions,
) -> Result<IlpOptimum> {
    let Some(mut list) = fibers(p, blocks, objective, opts)? else {
        return Ok(IlpOptimum::Infeasible { fibers_tested: 0 });
    };
    list.sort_by(|a, b| match b.utility.cmp(&a.utility) {
        Ordering::Equal => a.distance.cmp(&b.distance).then_with(|| a.sums.cmp(&b.sums)),
        other => other,
    });
    Ok(match first_hit(p, blocks, &list) {
        Some((k, point)) => IlpOptimum::Optimal {
            value: list[k].utility.clone(),
            point,
            fibers_tested: k + 1,
        },
        None => IlpOptimum::Infeasible { fibers_tested: list.len() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, rat_vec, ratio};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `sum x = t`, `0 ≤ x ≤ hi` in dimension `n`.
    fn slab(n: usize, lo_sum: Rational, hi_sum: Rational, hi: Rational) -> HPolyhedron {
        let mut p = HPolyhedron::cube(n, rat(0), hi);
        p = p.with_rows([(vec![rat(1); n], hi_sum), (vec![rat(-1); n], -lo_sum)]);
        p
    }

    #[test]
    fn integer_free_slab_is_infeasible() {
        // 1/3 ≤ x1 + x2 + x3 ≤ 2/3 has no integer points.
        let p = slab(3, ratio(1, 3), ratio(2, 3), rat(1));
        let blocks = BlockStructure::from_sizes(&[3]);
        let out = symmetric_ilp_feasible(&p, &blocks, &IlpOptions::default()).unwrap();
        assert!(matches!(out, IlpOutcome::Infeasible { .. }));
    }

    #[test]
    fn feasible_point_is_balanced() {
        let p = slab(4, rat(5), rat(5), rat(2));
        let blocks = BlockStructure::from_sizes(&[4]);
        match symmetric_ilp_feasible(&p, &blocks, &IlpOptions::default()).unwrap() {
            IlpOutcome::Feasible { point, .. } => assert_eq!(point, ints(&[2, 1, 1, 1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn optimum_on_two_blocks() {
        // x ∈ [0,3]^4, block sums tied by s1 + 2 s2 ≤ 7.
        let mut p = HPolyhedron::cube(4, rat(0), rat(3));
        p = p.with_rows([(rat_vec(&[1, 1, 2, 2]), rat(7))]);
        let blocks = BlockStructure::from_sizes(&[2, 2]);
        let c = rat_vec(&[1, 1, 3, 3]);
        match symmetric_ilp_optimize(&p, &blocks, &c, &IlpOptions::default()).unwrap() {
            IlpOptimum::Optimal { value, point, .. } => {
                assert_eq!(value, rat(10));
                assert_eq!(point, ints(&[1, 0, 2, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_non_invariant_input() {
        let p = HPolyhedron::cube(2, rat(0), rat(1)).with_rows([(rat_vec(&[1, 0]), ratio(1, 2))]);
        let blocks = BlockStructure::from_sizes(&[2]);
        assert!(matches!(
            symmetric_ilp_feasible(&p, &blocks, &IlpOptions::default()),
            Err(Error::NotASymmetry(_))
        ));
    }

    #[test]
    fn unbounded_sums_need_bounds() {
        let p = HPolyhedron::from_rows(vec![(rat_vec(&[-1, -1]), rat(0))], 2).unwrap();
        let blocks = BlockStructure::from_sizes(&[1, 1]);
        let p = p.with_rows([(rat_vec(&[-1, 0]), rat(0)), (rat_vec(&[0, -1]), rat(0))]);
        assert!(matches!(
            symmetric_ilp_feasible(&p, &blocks, &IlpOptions::default()),
            Err(Error::UnboundedProjection)
        ));
        let opts = IlpOptions {
            sum_bounds: Some(vec![(ints(&[0])[0].clone(), ints(&[4])[0].clone()); 2]),
            ..IlpOptions::default()
        };
        assert!(matches!(symmetric_ilp_feasible(&p, &blocks, &opts), Ok(IlpOutcome::Feasible { .. })));
    }
}
