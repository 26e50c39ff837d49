//! Small exact dense-matrix helpers over `BigInt` / `BigRational`.
//!
//! Everything here is deterministic: fixed pivot scan order, no heuristics.
//! Ranks in this crate stay small (a few dozen), so the cubic algorithms are
//! more than fast enough.

// row/column elimination reads best with explicit indices
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact determinant of a square integer matrix (Bareiss fraction-free
/// elimination with row-swap pivoting).
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by Bareiss
            }
        }
        prev = a[k][k].clone();
        for i in k + 1..n {
            a[i][k] = BigInt::zero();
        }
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Basis of the integer kernel {x in Z^n : A x = 0} of an m x n integer
/// matrix, via column reduction: A is brought to column echelon form by
/// unimodular column operations tracked in U; the columns of U over the zero
/// columns of AU form a kernel basis. The kernel sublattice is saturated.
pub fn int_kernel_basis(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    // u starts as the n x n identity; columns are transformed alongside h.
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let col_is_zero = |h: &Vec<Vec<BigInt>>, c: usize| (0..m).all(|r| h[r][c].is_zero());

    let mut pivot_col = 0usize;
    for row in 0..m {
        if pivot_col >= n {
            break;
        }
        // Clear row `row` to a single nonzero entry among columns >= pivot_col
        // by gcd steps (column operations are unimodular).
        loop {
            // smallest nonzero |entry| in this row at columns >= pivot_col
            let mut best: Option<usize> = None;
            for c in pivot_col..n {
                if !h[row][c].is_zero() {
                    best = match best {
                        None => Some(c),
                        Some(b) => {
                            if h[row][c].abs() < h[row][b].abs() {
                                Some(c)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            // reduce every other nonzero entry in the row modulo column b
            let mut reduced_any = false;
            for c in pivot_col..n {
                if c != b && !h[row][c].is_zero() {
                    let q = div_round_to_zero(&h[row][c], &h[row][b]);
                    if !q.is_zero() {
                        for r in 0..m {
                            let sub = &h[r][b] * &q;
                            h[r][c] -= sub;
                        }
                        for r in 0..n {
                            let sub = &u[r][b] * &q;
                            u[r][c] -= sub;
                        }
                    }
                    if !h[row][c].is_zero() {
                        reduced_any = true;
                    }
                }
            }
            if !reduced_any {
                // row has a single nonzero entry; move it to pivot_col
                if b != pivot_col {
                    for r in 0..m {
                        h[r].swap(b, pivot_col);
                    }
                    for r in 0..n {
                        u[r].swap(b, pivot_col);
                    }
                }
                pivot_col += 1;
                break;
            }
        }
        if (pivot_col..n).all(|c| h[row][c].is_zero()) {
            continue;
        }
    }

    (0..n)
        .filter(|&c| col_is_zero(&h, c))
        .map(|c| (0..n).map(|r| u[r][c].clone()).collect())
        .collect()
}

fn div_round_to_zero(a: &BigInt, b: &BigInt) -> BigInt {
    a / b
}

/// Exact inverse of a square rational matrix by Gauss-Jordan with partial
/// (first nonzero) pivoting. Returns None when singular.
pub fn rat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, piv);
        inv.swap(k, piv);
        let d = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &d;
            inv[k][j] /= &d;
        }
        for r in 0..n {
            if r != k && !a[r][k].is_zero() {
                let f = a[r][k].clone();
                for j in 0..n {
                    let s = &a[k][j] * &f;
                    a[r][j] -= s;
                    let s = &inv[k][j] * &f;
                    inv[r][j] -= s;
                }
            }
        }
    }
    Some(inv)
}

/// y = M x for a rational matrix and vector.
pub fn rat_mat_vec(m: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
