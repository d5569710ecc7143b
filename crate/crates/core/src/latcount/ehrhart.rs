use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polycore::linalg;
use crate::polycore::rational::denominator_lcm;
use crate::polycore::{affine_hull, HPolyhedron, Rational};
use crate::repconv::convert_dd;

use super::counter::LatticeCounter;

/// `p(λ) = p_{λ mod k}(λ)`; coefficients stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: u64,
    degree: usize,
    components: Vec<Vec<Rational>>,
}

fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

impl QuasiPolynomial {
    pub fn new(components: Vec<Vec<Rational>>) -> Self {
        let degree = components.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0);
        QuasiPolynomial {
            period: components.len() as u64,
            degree,
            components,
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Vec<Rational>] {
        &self.components
    }

    pub fn evaluate(&self, lambda: u64) -> Rational {
        let c = &self.components[(lambda % self.period) as usize];
        eval_poly(c, &Rational::from_integer(lambda.into()))
    }

    /// Coefficient of `λ^d` in component `r`.
    pub fn leading_coefficient(&self, r: usize) -> Rational {
        self.components[r].get(self.degree).cloned().unwrap_or_else(Rational::zero)
    }

    /// Collapses to the smallest period whose components agree.
    pub fn reduce_period(&self) -> QuasiPolynomial {
        let k = self.period as usize;
        for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
            if (0..k).all(|r| self.components[r] == self.components[r % d]) {
                return QuasiPolynomial::new(self.components[..d].to_vec());
            }
        }
        self.clone()
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "period {}", self.period)?;
        writeln!(f, "degree {}", self.degree)?;
        for (r, c) in self.components.iter().enumerate() {
            let coeffs: Vec<String> = c.iter().map(ToString::to_string).collect();
            writeln!(f, "p{} = [{}]", r, coeffs.join(", "))?;
        }
        Ok(())
    }
}

/// Polynomial of degree at most `nodes.len() − 1` through the given values.
fn interpolate(nodes: &[u64], values: &[BigInt]) -> Vec<Rational> {
    let m = nodes.len();
    let vander: Vec<Vec<Rational>> = nodes
        .iter()
        .map(|&x| {
            let x = Rational::from_integer(x.into());
            let mut row = Vec::with_capacity(m);
            let mut p = Rational::one();
            for _ in 0..m {
                row.push(p.clone());
                p *= &x;
            }
            row
        })
        .collect();
    let rhs: Vec<Rational> = values.iter().map(|v| Rational::from_integer(v.clone())).collect();
    let mut c = linalg::solve(&vander, &rhs, m).expect("distinct nodes");
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

/// Ehrhart quasi-polynomial of a bounded rational polyhedron. The period is
/// the lcm of the vertex denominators; `period_bound` caps it.
pub fn ehrhart(p: &HPolyhedron, period_bound: u64) -> Result<QuasiPolynomial> {
    let v = convert_dd(p)?;
    if !v.is_bounded() {
        return Err(Error::Unbounded);
    }
    let k = denominator_lcm(v.vertices().iter().flatten());
    let period = match k.to_u64() {
        Some(k) if k <= period_bound => k,
        _ => {
            return Err(Error::PeriodTooLarge {
                period: k.to_u64().unwrap_or(u64::MAX),
                bound: period_bound,
            })
        }
    };
    let d = affine_hull(&v)?.dimension;
    let counter = LatticeCounter::new(p)?;
    let mut components = Vec::with_capacity(period as usize);
    for r in 0..period {
        // d+1 interpolation nodes plus one check node, all λ ≥ 1.
        let first = if r == 0 { period } else { r };
        let nodes: Vec<u64> = (0..=d as u64 + 1).map(|j| first + j * period).collect();
        let values: Vec<BigInt> = nodes
            .iter()
            .map(|&l| counter.count(l).map(BigInt::from))
            .collect::<Result<_>>()?;
        let poly = interpolate(&nodes[..=d], &values[..=d]);
        let check = eval_poly(&poly, &Rational::from_integer(nodes[d + 1].into()));
        if check != Rational::from_integer(values[d + 1].clone()) {
            return Err(Error::Verification(format!(
                "residue {r}: interpolant gives {check} at λ = {}, enumeration gives {}",
                nodes[d + 1],
                values[d + 1]
            )));
        }
        components.push(poly);
    }
    Ok(QuasiPolynomial {
        period,
        degree: d,
        components,
    })
}
