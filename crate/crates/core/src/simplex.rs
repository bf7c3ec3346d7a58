//! Dense exact-rational simplex for small linear programs.
//!
//! Solves `max cᵀx` subject to `Ax ≤ b`, `x ≥ 0` with `b ≥ 0`, so the
//! all-slack basis is feasible from the start. Pivoting follows Bland's
//! rule, which cannot cycle, and every number is an arbitrary-precision
//! rational, so the result is exact and the solver always terminates.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `max cᵀx` s.t. `rows·x ≤ rhs`, `x ≥ 0`, with nonnegative `rhs`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        /// Optimal assignment of the structural variables.
        primal: Vec<Rational>,
        /// Dual multipliers of the constraints, one per row.
        dual: Vec<Rational>,
    },
    Unbounded,
}

pub fn solve_standard(lp: &StandardLp) -> Result<LpOutcome> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    for (i, row) in lp.rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::input(format!(
                "LP row {i} has {} coefficients, expected {n}",
                row.len()
            )));
        }
    }
    if lp.rhs.len() != m {
        return Err(Error::input("LP right-hand side length mismatch"));
    }
    if let Some(b) = lp.rhs.iter().find(|b| b.is_negative()) {
        return Err(Error::input(format!(
            "standard-form solver needs a nonnegative right-hand side, got {b}"
        )));
    }

    // tableau over columns [x_0..x_{n-1}, s_0..s_{m-1} | rhs]
    let cols = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in lp.rows.iter().enumerate() {
        let mut r: Vec<Rational> = Vec::with_capacity(cols + 1);
        r.extend(row.iter().cloned());
        for j in 0..m {
            r.push(if j == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            });
        }
        r.push(lp.rhs[i].clone());
        t.push(r);
    }
    // reduced-cost row; entry > 0 means the column improves the objective
    let mut z: Vec<Rational> = Vec::with_capacity(cols + 1);
    z.extend(lp.objective.iter().cloned());
    for _ in 0..=m {
        z.push(Rational::zero());
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Bland: entering column of least index with positive reduced cost
    while let Some(entering) = (0..cols).find(|&j| z[j].is_positive()) {
        // ratio test; ties by least basic variable index
        let mut leaving: Option<(usize, Rational)> = None;
        for i in 0..m {
            let a = &t[i][entering];
            if !a.is_positive() {
                continue;
            }
            let ratio = &t[i][cols] / a;
            let better = match &leaving {
                None => true,
                Some((best_i, best)) => {
                    ratio < *best || (ratio == *best && basis[i] < basis[*best_i])
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let (pivot_row, _) = match leaving {
            Some(x) => x,
            None => return Ok(LpOutcome::Unbounded),
        };

        let pivot = t[pivot_row][entering].clone();
        for v in t[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m {
            if i == pivot_row || t[i][entering].is_zero() {
                continue;
            }
            let factor = t[i][entering].clone();
            let (pivot_slice, row) = if i < pivot_row {
                let (a, b) = t.split_at_mut(pivot_row);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = t.split_at_mut(i);
                (&a[pivot_row], &mut b[0])
            };
            for (vj, pj) in row.iter_mut().zip(pivot_slice) {
                let delta = &factor * pj;
                *vj -= delta;
            }
        }
        if !z[entering].is_zero() {
            let factor = z[entering].clone();
            for (zj, tj) in z.iter_mut().zip(&t[pivot_row]) {
                let delta = &factor * tj;
                *zj -= delta;
            }
        }
        basis[pivot_row] = entering;
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            primal[b] = t[i][cols].clone();
        }
    }
    let value: Rational = lp.objective.iter().zip(&primal).map(|(c, x)| c * x).sum();
    // at optimality the reduced cost of slack i is −y_i
    let dual: Vec<Rational> = (0..m).map(|i| -z[n + i].clone()).collect();
    Ok(LpOutcome::Optimal {
        value,
        primal,
        dual,
    })
}
