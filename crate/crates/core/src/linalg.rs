use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

/// `C(n, k)` for `n ≥ 0`; zero when `k < 0` or `k > n`.
pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Rows `0..=n` of Pascal's triangle.
pub(crate) fn pascal_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        row.push(BigInt::one());
        for k in 1..r {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

pub(crate) type Matrix = Vec<Vec<Rational>>;

pub(crate) fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub(crate) fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc += x * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub(crate) fn mul_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            let mut acc = Rational::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() {
                    acc += x * y;
                }
            }
            acc
        })
        .collect()
}

/// Row rank by Gaussian elimination over the rationals.
pub(crate) fn rank(mut rows: Matrix) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            let (top, bottom) = rows.split_at_mut(r);
            for (dst, src) in bottom[0][col..cols].iter_mut().zip(&top[rank][col..cols]) {
                *dst -= &factor * src;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(rank(m), 1);
        let m = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        assert_eq!(rank(m), 2);
        assert_eq!(rank(vec![]), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn identity_is_neutral() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        assert_eq!(mul(&m, &identity(2)), m);
        assert_eq!(mul_vec(&m, &[rat(1), rat(1)]), vec![rat(3), rat(7)]);
    }
}
