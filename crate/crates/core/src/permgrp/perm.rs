use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::{FaceIndexSet, Matrix, Rational};

/// A bijection of `{0, …, N−1}`. Composition follows function notation:
/// `p.compose(&q)` is `x ↦ p(q(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::InvalidPermutation(format!("expected '(' in {text:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::InvalidPermutation(format!("unclosed cycle in {text:?}")));
            };
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::InvalidPermutation(format!("bad point {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i != j)
    }

    pub fn apply_to_set(&self, set: &FaceIndexSet) -> FaceIndexSet {
        FaceIndexSet::new(set.iter().map(|i| self.images[i]))
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Matrix of the coordinate action `e_i ↦ e_{σ(i)}`.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.images.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, &j) in self.images.iter().enumerate() {
            m[j][i] = Rational::one();
        }
        m
    }

    /// Coordinate action on a vector: `(σx)_{σ(i)} = x_i`.
    pub fn act_on_vector<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (i, &j) in self.images.iter().enumerate() {
            out[j] = x[i].clone();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles("(1 2)(3 4 5)", 6).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 4, 2, 5]);
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
    }

    #[test]
    fn composition_is_function_notation() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let pq = p.compose(&q);
        // q first: 1 -> 2, then p fixes 2.
        assert_eq!(pq.apply(1), 2);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn vector_action_matches_matrix() {
        let p = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let x: Vec<Rational> = [1, 2, 3].iter().map(|&v| Rational::from_integer(v.into())).collect();
        let m = p.to_matrix();
        assert_eq!(crate::polycore::linalg::mat_vec(&m, &x), p.act_on_vector(&x));
    }
}
