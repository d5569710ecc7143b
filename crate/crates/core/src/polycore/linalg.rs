//! Dense exact linear algebra over `Rational` (and fraction-free over `BigInt`).
//!
//! Matrices are row-major `Vec<Vec<_>>`. Every routine is exact; none of them
//! look at magnitudes, only at zero/non-zero tests.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{denominator_lcm, Rational};

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn mat_vec(m: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, x)).collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Rational>], cols: usize) -> Matrix {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            for j in (col + 1)..ncols {
                let v = (&prow[col] * &row[j] - &row[col] * &prow[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Exact rank of a rational matrix. Rows are scaled to integers first, then
/// eliminated fraction-free.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = denominator_lcm(row);
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    integer_rank(&ints)
}

/// Reduced row echelon form: the non-zero rows and the pivot column of each.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> Rref {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Rref { rows: m, pivots }
}

/// Basis of `{x : M x = 0}` for `M` with `ncols` columns.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Matrix {
    let Rref { rows: red, pivots } = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `A x = b` (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let Rref { rows, pivots } = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let prow = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot;
                for j in col..n {
                    let d = &f * &prow[j];
                    row[j] -= d;
                }
            }
        }
    }
    det
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let Rref { rows, pivots } = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily
/// in input order.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((p, v));
            chosen.push(idx);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational::{rat, rat_vec, ratio};

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&identity(3)), 3);
        assert_eq!(rank(&zeros(2, 4)), 0);
        let m = vec![rat_vec(&[1, 1]), rat_vec(&[2, 2]), rat_vec(&[0, 1])];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn rank_with_fractions_and_skipped_columns() {
        let m = vec![
            vec![rat(0), ratio(1, 2), rat(1)],
            vec![rat(0), rat(1), rat(2)],
            vec![rat(0), rat(0), ratio(1, 3)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = vec![rat_vec(&[1, 1, 0]), rat_vec(&[0, 1, 1])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&mat_vec(&m, &ns[0])));
        let x = solve(&m, &rat_vec(&[2, 3]), 3).unwrap();
        assert_eq!(mat_vec(&m, &x), rat_vec(&[2, 3]));
        let inconsistent = vec![rat_vec(&[1, 1]), rat_vec(&[2, 2])];
        assert!(solve(&inconsistent, &rat_vec(&[1, 3]), 2).is_none());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = vec![rat_vec(&[2, 1]), rat_vec(&[7, 4])];
        assert_eq!(determinant(&m), rat(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        let singular = vec![rat_vec(&[1, 2]), rat_vec(&[2, 4])];
        assert_eq!(determinant(&singular), rat(0));
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn independent_rows_greedy() {
        let m = vec![rat_vec(&[1, 0]), rat_vec(&[2, 0]), rat_vec(&[1, 1]), rat_vec(&[0, 5])];
        assert_eq!(independent_rows(&m), vec![0, 2]);
    }
}
