//! Exact solver for the Gordan alternative.
//!
//! For a rational matrix `A` exactly one of the following holds: there is a
//! nonzero nonnegative `x` with `Ax = 0`, or there is a `y` with `yᵀA`
//! strictly positive in every entry. The solver realizes the dichotomy as
//! the exact LP `max 1ᵀx` s.t. `Ax = 0`, `0 ≤ x ≤ 1`: a positive optimum
//! yields the kernel vector, and at optimum zero the dual multipliers of the
//! equality rows give the strict certificate, which is re-verified by direct
//! substitution rather than trusted from the tableau.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::simplex::{solve_standard, LpOutcome, StandardLp};

/// A dense rational matrix with positive dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn new(data: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = data.len();
        if rows == 0 {
            return Err(Error::input("matrix needs at least one row"));
        }
        let cols = data[0].len();
        if cols == 0 {
            return Err(Error::input("matrix needs at least one column"));
        }
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::input("matrix rows must have equal length"));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    /// Row vector `yᵀA`.
    pub fn left_mul(&self, y: &[Rational]) -> Vec<Rational> {
        (0..self.cols)
            .map(|j| y.iter().zip(&self.data).map(|(yi, row)| yi * &row[j]).sum())
            .collect()
    }

    /// Column vector `Ax`.
    pub fn right_mul(&self, x: &[Rational]) -> Vec<Rational> {
        self.data
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, xj)| a * xj).sum())
            .collect()
    }
}

/// Exactly one side of the Gordan alternative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GordanOutcome {
    /// `x ≥ 0`, `x ≠ 0`, `Ax = 0`.
    Kernel(Vec<Rational>),
    /// `yᵀA > 0` entrywise.
    Dual(Vec<Rational>),
}

/// Decides the alternative for `A`. Total and deterministic: the same
/// matrix always produces the identical outcome.
pub fn solve_gordan(a: &QMatrix) -> GordanOutcome {
    let n = a.rows;
    let m = a.cols;
    // rows: Ax <= 0, -Ax <= 0, x <= 1
    let mut rows = Vec::with_capacity(2 * n + m);
    let mut rhs = Vec::with_capacity(2 * n + m);
    for r in &a.data {
        rows.push(r.clone());
        rhs.push(Rational::zero());
    }
    for r in &a.data {
        rows.push(r.iter().map(|v| -v).collect());
        rhs.push(Rational::zero());
    }
    for j in 0..m {
        let mut row = vec![Rational::zero(); m];
        row[j] = Rational::from_integer(1.into());
        rows.push(row);
        rhs.push(Rational::from_integer(1.into()));
    }
    let lp = StandardLp {
        objective: vec![Rational::from_integer(1.into()); m],
        rows,
        rhs,
    };
    let outcome = match solve_standard(&lp).expect("well-formed LP") {
        LpOutcome::Optimal {
            value,
            primal,
            dual,
        } => {
            if value.is_positive() {
                GordanOutcome::Kernel(primal)
            } else {
                // y combines the multipliers of the two signed copies of A
                let y: Vec<Rational> = (0..n).map(|i| &dual[i] - &dual[n + i]).collect();
                GordanOutcome::Dual(y)
            }
        }
        // 0 <= x <= 1 is a bounded feasible region
        LpOutcome::Unbounded => unreachable!("box-constrained LP cannot be unbounded"),
    };
    assert!(
        verify_outcome(a, &outcome),
        "gordan solver produced an unverifiable outcome for {a:?}"
    );
    outcome
}

/// Re-checks an outcome against its defining conditions with exact
/// arithmetic.
pub fn verify_outcome(a: &QMatrix, outcome: &GordanOutcome) -> bool {
    match outcome {
        GordanOutcome::Kernel(x) => {
            x.len() == a.cols
                && x.iter().all(|v| !v.is_negative())
                && x.iter().any(|v| v.is_positive())
                && a.right_mul(x).iter().all(Rational::is_zero)
        }
        GordanOutcome::Dual(y) => {
            y.len() == a.rows && a.left_mul(y).iter().all(|v| v.is_positive())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_from_int as q;

    fn matrix(rows: &[&[i64]]) -> QMatrix {
        QMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn difference_row_has_kernel() {
        let a = matrix(&[&[1, -1]]);
        match solve_gordan(&a) {
            GordanOutcome::Kernel(x) => {
                assert!(verify_outcome(&a, &GordanOutcome::Kernel(x)));
            }
            GordanOutcome::Dual(_) => panic!("kernel expected"),
        }
    }

    #[test]
    fn all_positive_row_has_dual() {
        let a = matrix(&[&[1, 1]]);
        match solve_gordan(&a) {
            GordanOutcome::Dual(y) => {
                let prod = a.left_mul(&y);
                assert!(prod.iter().all(|v| v.is_positive()));
            }
            GordanOutcome::Kernel(_) => panic!("dual expected"),
        }
    }

    #[test]
    fn identity_has_dual() {
        let a = matrix(&[&[1, 0], &[0, 1]]);
        assert!(matches!(solve_gordan(&a), GordanOutcome::Dual(_)));
    }

    #[test]
    fn verify_rejects_wrong_vectors() {
        let a = matrix(&[&[1, -1]]);
        assert!(verify_outcome(&a, &GordanOutcome::Kernel(vec![q(1), q(1)])));
        assert!(!verify_outcome(
            &a,
            &GordanOutcome::Kernel(vec![q(1), q(2)])
        ));
        assert!(!verify_outcome(
            &a,
            &GordanOutcome::Kernel(vec![q(0), q(0)])
        ));
        let b = matrix(&[&[1, 1]]);
        assert!(!verify_outcome(&b, &GordanOutcome::Dual(vec![q(-1)])));
    }

    #[test]
    fn zero_matrix_has_kernel() {
        let a = matrix(&[&[0, 0, 0]]);
        match solve_gordan(&a) {
            GordanOutcome::Kernel(x) => assert!(x.iter().any(|v| v.is_positive())),
            GordanOutcome::Dual(_) => panic!("kernel expected"),
        }
    }
}
