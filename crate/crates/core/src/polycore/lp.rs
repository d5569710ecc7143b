//! Exact two-phase simplex over `Rational` with Bland's smallest-index rule.
//!
//! Solves `max c·x  s.t.  A x ≤ b` with `x` free. Structural variables are kept
//! free in the tableau (they never block in the ratio test), slacks and
//! artificials are non-negative.

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(sol) => Some(sol),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible)
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, LpOutcome::Unbounded)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarKind {
    Free,
    NonNegative,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<VarKind>,
    /// Reduced costs of the current objective (maximization).
    reduced: Vec<Rational>,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn set_objective(&mut self, costs: &[Rational]) {
        let ncols = self.kinds.len();
        let mut reduced = costs.to_vec();
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[bv];
            if cb.is_zero() {
                continue;
            }
            for j in 0..ncols {
                if !row[j].is_zero() {
                    reduced[j] -= cb * &row[j];
                }
            }
        }
        self.reduced = reduced;
    }

    fn entering(&self, allow_artificial: bool) -> Option<(usize, bool)> {
        let mut is_basic = vec![false; self.kinds.len()];
        for &b in &self.basis {
            is_basic[b] = true;
        }
        for (j, d) in self.reduced.iter().enumerate() {
            if is_basic[j] || d.is_zero() {
                continue;
            }
            match self.kinds[j] {
                VarKind::Free => return Some((j, d.is_positive())),
                VarKind::NonNegative if d.is_positive() => return Some((j, true)),
                VarKind::Artificial if allow_artificial && d.is_positive() => {
                    return Some((j, true))
                }
                _ => {}
            }
        }
        None
    }

    fn step(&mut self, allow_artificial: bool) -> Step {
        let Some((col, increase)) = self.entering(allow_artificial) else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if self.kinds[self.basis[i]] == VarKind::Free {
                continue;
            }
            let coef = if increase { row[col].clone() } else { -row[col].clone() };
            if !coef.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / &coef;
            let better = match &best {
                None => true,
                Some((bi, br)) => {
                    ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        let Some((row, _)) = best else {
            return Step::Unbounded;
        };
        self.pivot(row, col);
        Step::Pivoted
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.reduced[col].is_zero() {
            let f = self.reduced[col].clone();
            for (v, p) in self.reduced.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = col;
    }

    fn run(&mut self, allow_artificial: bool) -> bool {
        loop {
            match self.step(allow_artificial) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }
}

/// Maximizes `c·x` over `{x : A x ≤ b}`.
///
/// `a` must have `c.len()` columns. The returned point is a basic solution of
/// the tableau; it is always feasible and attains the returned value.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let n_art = b.iter().filter(|v| v.is_negative()).count();
    let ncols = n + m + n_art;
    let mut kinds = vec![VarKind::Free; n];
    kinds.extend(std::iter::repeat_n(VarKind::NonNegative, m));
    kinds.extend(std::iter::repeat_n(VarKind::Artificial, n_art));

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = n + m;
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let mut t = vec![Rational::zero(); ncols];
        let negate = bi.is_negative();
        for (j, v) in row.iter().enumerate() {
            t[j] = if negate { -v.clone() } else { v.clone() };
        }
        t[n + i] = if negate { -Rational::one() } else { Rational::one() };
        if negate {
            t[next_art] = Rational::one();
            basis.push(next_art);
            next_art += 1;
            rhs.push(-bi.clone());
        } else {
            basis.push(n + i);
            rhs.push(bi.clone());
        }
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        kinds,
        reduced: Vec::new(),
    };

    if n_art > 0 {
        let mut costs = vec![Rational::zero(); ncols];
        for c in costs.iter_mut().skip(n + m) {
            *c = -Rational::one();
        }
        tab.set_objective(&costs);
        // Phase one is bounded above by zero, so it always terminates optimally.
        tab.run(true);
        let infeasibility: Rational = tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .filter(|(bv, _)| tab.kinds[**bv] == VarKind::Artificial)
            .fold(Rational::zero(), |acc, (_, v)| acc + v);
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.kinds[tab.basis[r]] != VarKind::Artificial {
                r += 1;
                continue;
            }
            let col = (0..n + m).find(|&j| !tab.rows[r][j].is_zero());
            match col {
                Some(j) => {
                    tab.pivot(r, j);
                    r += 1;
                }
                None => {
                    tab.rows.remove(r);
                    tab.rhs.remove(r);
                    tab.basis.remove(r);
                }
            }
        }
    }

    let mut costs = vec![Rational::zero(); ncols];
    costs[..n].clone_from_slice(c);
    tab.set_objective(&costs);
    if !tab.run(false) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Rational::zero(); n];
    for (bv, v) in tab.basis.iter().zip(&tab.rhs) {
        if *bv < n {
            point[*bv] = v.clone();
        }
    }
    let value = c.iter().zip(&point).fold(Rational::zero(), |acc, (x, y)| acc + x * y);
    LpOutcome::Optimal(LpSolution { value, point })
}
