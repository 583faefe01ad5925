//! Exact phase-one simplex for `A x = b, x ≥ 0`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::linalg::Matrix;
use crate::Rational;

pub(crate) enum Feasibility {
    /// A basic nonnegative solution of `A x = b`.
    Feasible(Vec<Rational>),
    /// A Farkas certificate `y` with `yᵀA ≥ 0` and `yᵀb < 0`.
    Infeasible(Vec<Rational>),
}

/// Decides `∃ x ≥ 0 : A x = b` by minimizing the sum of artificial
/// variables. Bland's rule keeps the exact pivoting finite.
pub(crate) fn nonnegative_solution(a: &Matrix, b: &[Rational]) -> Feasibility {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert_eq!(b.len(), m);
    let width = n + m + 1;

    // Rows are negated where b_i < 0 so the artificial start is feasible.
    let signs: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let mut tab: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for v in &a[i] {
                row.push(if signs[i] { -v } else { v.clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rational::one() } else { Rational::zero() });
            }
            row.push(if signs[i] { -&b[i] } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective; the last slot is -w.
    let mut cost = vec![Rational::zero(); width];
    for j in 0..width {
        if (n..n + m).contains(&j) {
            continue;
        }
        let mut s = Rational::zero();
        for row in &tab {
            s += &row[j];
        }
        cost[j] = -s;
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => match ratio.cmp(lr) {
                    Ordering::Less => true,
                    Ordering::Equal => basis[i] < basis[*li],
                    Ordering::Greater => false,
                },
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below by zero.
        let (row, _) = leave.expect("phase-one simplex is bounded");
        pivot(&mut tab, &mut cost, row, enter);
        basis[row] = enter;
    }

    let objective = -&cost[width - 1];
    if objective.is_positive() {
        let farkas = (0..m)
            .map(|i| {
                let pi = Rational::one() - &cost[n + i];
                if signs[i] {
                    pi
                } else {
                    -pi
                }
            })
            .collect();
        Feasibility::Infeasible(farkas)
    } else {
        let mut x = vec![Rational::zero(); n];
        for (i, &j) in basis.iter().enumerate() {
            if j < n {
                x[j] = tab[i][width - 1].clone();
            }
        }
        Feasibility::Feasible(x)
    }
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = tab[row][col].recip();
    for v in tab[row].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (v, p) in r.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
    }
    if !cost[col].is_zero() {
        let factor = cost[col].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
    }
}
