use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::elim::{bareiss_det, eliminate, integer_rows};
use super::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("rows have different lengths ({0} vs {1})")]
    Ragged(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(MatrixError::Ragged(cols, bad.len()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for integer fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(v).expect("fixture rows must have equal length")
    }

    /// Builds a matrix from column vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Dimension(format!("{} columns, vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Rows `rs` and columns `cs`, in the given order.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Matrix {
        Self::from_fn(rs.len(), cs.len(), |i, j| self.get(rs[i], cs[j]).clone())
    }

    pub fn select_columns(&self, cs: &[usize]) -> Matrix {
        let rs: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rs, cs)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::Dimension(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.cols {
            return Err(MatrixError::Dimension(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        integer_rows(self.rows, self.cols, &self.data)
    }

    /// Exact rank, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.integer_rows();
        eliminate(&mut rows, self.cols, false).len()
    }

    /// Column indices of the pivots of the row echelon form; these are the
    /// lexicographically first set of linearly independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut rows = self.integer_rows();
        eliminate(&mut rows, self.cols, false)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.integer_rows();
        let pivots = eliminate(&mut rows, self.cols, true);
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            let lead = Rational::from_integer(rows[i][p].clone());
            for j in 0..self.cols {
                if !rows[i][j].is_zero() {
                    out.set(i, j, Rational::from_integer(rows[i][j].clone()) / &lead);
                }
            }
        }
        (out, pivots)
    }

    /// Basis of the right null space. One vector per non-pivot column of the
    /// reduced row echelon form, in increasing column order; each vector is
    /// integral with content 1 and a positive entry at its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut rows = self.integer_rows();
        let pivots = eliminate(&mut rows, self.cols, true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let scale = pivots
                .iter()
                .enumerate()
                .filter(|(i, _)| !rows[*i][free].is_zero())
                .fold(BigInt::one(), |acc, (i, &p)| acc.lcm(&rows[i][p]));
            let mut v = vec![BigInt::zero(); self.cols];
            v[free] = scale.clone();
            for (i, &p) in pivots.iter().enumerate() {
                if !rows[i][free].is_zero() {
                    v[p] = -(&rows[i][free] * &scale) / &rows[i][p];
                }
            }
            let g = super::content(&v);
            basis.push(v.into_iter().map(|x| Rational::from_integer(x / &g)).collect());
        }
        basis
    }

    /// Exact determinant (Bareiss on the integer-scaled rows).
    pub fn determinant(&self) -> Result<Rational, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = super::denominator_lcm(row);
                scale *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        Ok(Rational::new(bareiss_det(rows), scale))
    }

    /// Some solution `X` of `self · X = rhs`, or `None` if inconsistent.
    /// Free variables are set to zero, so the solution is unique whenever
    /// `self` has full column rank.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>, MatrixError> {
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        if self.rank() < self.rows {
            return Ok(None);
        }
        self.solve(&Matrix::identity(self.rows))
    }

    /// Entries as `"num/den"` strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn max_abs_numerator(&self) -> BigInt {
        self.data.iter().map(|x| x.numer().abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_strings()).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Matrix::zeros(0, 4).kernel_basis().len(), 4);
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let k = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k, vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Matrix::from_i64(&[&[1, 2, 0, 0, 0, 0], &[2, 0, 0, 0, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 4);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let (r, _) = m.rref();
        assert_eq!(r.row(0), &[rat(1), rat(0), rat(0), rat(0), rat(0), ratio(1, 2)]);
    }

    #[test]
    fn kernel_is_normalized() {
        // x + 2y/3 - z = 0
        let m = Matrix::from_rows(vec![vec![rat(1), ratio(2, 3), rat(-1)]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![rat(-2), rat(3), rat(0)], vec![rat(1), rat(0), rat(1)]]);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), rat(1));
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(inv, Matrix::from_i64(&[&[4, -1], &[-7, 2]]));
        let h = Matrix::from_fn(3, 3, |i, j| ratio(1, (i + j + 1) as i64));
        assert_eq!(h.determinant().unwrap(), ratio(1, 2160));
        let s = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.determinant().unwrap(), rat(-1));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_i64(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = Matrix::from_i64(&[&[3], &[1], &[4]]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), Matrix::from_i64(&[&[2], &[1]]));
        let c = Matrix::from_i64(&[&[3], &[1], &[5]]);
        assert_eq!(a.solve(&c).unwrap(), None);
    }

    #[test]
    fn rref_is_reduced() {
        let m = Matrix::from_i64(&[&[2, 4, 1], &[1, 2, 3]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 2]);
        assert_eq!(r, Matrix::from_i64(&[&[1, 2, 0], &[0, 0, 1]]));
    }
}

/// Mersenne prime `2^61 - 1` used for modular rank bounds.
pub const MODULAR_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn reduce_mod(x: &Rational, p: u64) -> Option<u64> {
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64()?;
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mul_mod(n, pow_mod(d, p - 2, p), p))
}

impl Matrix {
    /// Rank of the reduction modulo the prime `p`, or `None` when some
    /// denominator vanishes mod `p`. Always a lower bound for [`Matrix::rank`].
    pub fn rank_mod(&self, p: u64) -> Option<usize> {
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| reduce_mod(x, p)).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()?;
        let mut r = 0;
        for c in 0..self.cols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let inv = pow_mod(rows[r][c], p - 2, p);
            let pivot_row: Vec<u64> = rows[r].iter().map(|&x| mul_mod(x, inv, p)).collect();
            for row in rows.iter_mut().skip(r + 1) {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = mul_mod(f, pivot_row[j], p);
                    row[j] = (row[j] + p - sub) % p;
                }
            }
            rows[r] = pivot_row;
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        Some(r)
    }
}
