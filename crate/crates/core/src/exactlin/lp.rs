//! Dense two-phase simplex over the rationals with Bland's rule.
//!
//! Only what the cone and arrangement code needs: a standard-form solver and
//! the strict-feasibility test built on it.

use num_traits::{One, Signed, Zero};

use super::rational::{RVector, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: RVector },
}

struct Tableau {
    rows: Vec<RVector>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximize `cost . x` over the current basis, entering only columns
    /// flagged in `allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            // Bland: smallest-index column with positive reduced cost enters.
            let entering = (0..self.ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Maximize `c . x` subject to `a x = b`, `x >= 0`.
pub fn maximize(c: &[Rational], a: &[RVector], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n);
        let flip = bi.is_negative();
        let mut r: RVector = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        r.push(if flip { -bi } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), ncols };

    // phase 1: drive the artificial variables to zero
    let mut phase1 = vec![Rational::zero(); ncols];
    for v in phase1.iter_mut().skip(n) {
        *v = -Rational::one();
    }
    let all = vec![true; ncols];
    t.optimize(&phase1, &all);
    if t.objective(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }
    // pivot remaining (zero-valued) artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut cost = vec![Rational::zero(); ncols];
    cost[..n].clone_from_slice(c);
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n).collect();
    if !t.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal { value: t.objective(&cost), x }
}

/// Whether some `x` satisfies `<a_i, x> > 0` for every listed normal.
///
/// Solved exactly as `max t` subject to `<a_i, x> >= t`, `-1 <= x_j <= 1`,
/// `t <= 1`; strictly feasible iff the optimum is positive. An empty list is
/// vacuously feasible.
pub fn lp_strictly_feasible(strict: &[RVector], ambient_dim: usize) -> bool {
    strict_witness(strict, ambient_dim).is_some()
}

/// A point `x` with `<a_i, x> > 0` for every listed normal, if one exists.
pub fn strict_witness(strict: &[RVector], ambient_dim: usize) -> Option<RVector> {
    if strict.is_empty() {
        return Some(vec![Rational::zero(); ambient_dim]);
    }
    let d = ambient_dim;
    let m = strict.len();
    // columns: u_0..u_{d-1} (x_j = u_j - 1), s (t = s - 1), m slacks, d + 1 box slacks
    let n = d + 1 + m + d + 1;
    let s_col = d;
    let mut a = Vec::with_capacity(m + d + 1);
    let mut b = Vec::with_capacity(m + d + 1);
    for (i, normal) in strict.iter().enumerate() {
        assert_eq!(normal.len(), d, "normal has wrong length");
        let mut row = vec![Rational::zero(); n];
        for j in 0..d {
            row[j] = -normal[j].clone();
        }
        row[s_col] = Rational::one();
        row[d + 1 + i] = Rational::one();
        a.push(row);
        b.push(Rational::one() - normal.iter().fold(Rational::zero(), |acc, x| acc + x));
    }
    for j in 0..=d {
        let mut row = vec![Rational::zero(); n];
        row[j] = Rational::one();
        row[d + 1 + m + j] = Rational::one();
        a.push(row);
        b.push(Rational::from_integer(2.into()));
    }
    let mut c = vec![Rational::zero(); n];
    c[s_col] = Rational::one();
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, x } => {
            (value > Rational::one()).then(|| x[..d].iter().map(|u| u - Rational::one()).collect())
        }
        // x = 0, t = -1 is always feasible and the box bounds everything
        other => unreachable!("strict feasibility LP cannot be {other:?}"),
    }
}
