//! Fraction-free integer row elimination shared by rank, kernel and solve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{content, denominator_lcm, Rational};

/// Rows scaled to integers by the lcm of their denominators.
pub(crate) fn integer_rows(rows: usize, cols: usize, data: &[Rational]) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|i| {
            let row = &data[i * cols..(i + 1) * cols];
            let l = denominator_lcm(row);
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

fn reduce_content(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Row reduction in place. Pivot rule: in each column, the first row at or
/// below the current pivot row with a nonzero entry. With `full` the pivot
/// columns are also cleared above (integer RREF), otherwise only below.
///
/// Returns the pivot columns; row `i` of the result holds pivot `i`.
pub(crate) fn eliminate(rows: &mut [Vec<BigInt>], cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        reduce_content(&mut rows[r]);
        if rows[r][c].is_negative() {
            rows[r].iter_mut().for_each(|x| *x = -&*x);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        let above: &mut [Vec<BigInt>] = if full { head } else { &mut [] };
        for row in below.iter_mut().chain(above.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            // rows above carry entries left of `c` that also need scaling by `a`
            let start = if a.is_one() { c } else { 0 };
            for j in start..cols {
                let v = &a * &row[j] - &b * &pivot_row[j];
                row[j] = v;
            }
            reduce_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Bareiss determinant of a square integer matrix.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
